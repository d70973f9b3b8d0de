#pragma once

#include "simplexorder/geometry.hpp"

#include <variant>

namespace simplexorder {

// A geodesic n-simplex given by its n+1 labelled vertices.
class Simplex {
public:
    Simplex(Geometry tag, std::vector<ModelPoint> vertices, const TolerancePolicy& tol = {});

    Geometry tag() const { return tag_; }
    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<ModelPoint>& vertices() const { return vertices_; }
    const ModelPoint& vertex(int i) const { return vertices_[i]; }

private:
    Geometry tag_;
    std::vector<ModelPoint> vertices_;
};

// Inward unit facet normals; normals[i] belongs to the face opposite vertex i.
struct FacetNormals {
    Geometry tag;
    std::vector<Eigen::VectorXd> normals;
};

struct GramMatrix {
    SymmetricMatrix matrix;  // unit diagonal, off-diagonals in (-1,1)

    explicit GramMatrix(const SymmetricMatrix& m);
    int size() const { return matrix.size(); }
};

// Symmetric angle table, zeta_ij in (0,pi) for i != j.
struct DihedralAngles {
    Eigen::MatrixXd angles;

    int size() const { return static_cast<int>(angles.rows()); }
};

struct NotAGram {
    std::string reason;
};
using GramClass = std::variant<Geometry, NotAGram>;

bool is_geometry(const GramClass& c, Geometry g);

enum class Order {
    Equal,
    StrictlyLess,
    LessOrEqualNotStrict,
    StrictlyGreater,
    GreaterOrEqualNotStrict,
    Incomparable,
};

const char* to_string(Order o);

struct OrderRelation {
    Order order = Order::Incomparable;
    Eigen::MatrixXd margins;  // margins(i,j) = b_ij - a_ij
};

FacetNormals facet_normals(const Simplex& s, const TolerancePolicy& tol = {});
GramMatrix gram_of(const Simplex& s, const TolerancePolicy& tol = {});
DihedralAngles dihedral_angles(const GramMatrix& g);
GramClass classify_gram(const SymmetricMatrix& a, const TolerancePolicy& tol = {});
Simplex realize(const SymmetricMatrix& a, const TolerancePolicy& tol = {});
Simplex spherical_dual(const Simplex& s, const TolerancePolicy& tol = {});
OrderRelation compare(const DihedralAngles& a, const DihedralAngles& b,
                      const TolerancePolicy& tol = {});

}  // namespace simplexorder
