#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexorder {

// Hard size cap: matrices are at most (kMaxDim+1) x (kMaxDim+1).
inline constexpr int kMaxDim = 7;

struct TolerancePolicy {
    double eq_zero = 1e-9;       // scale-relative "equals zero" band
    double strict_margin = 1e-12;  // strictness threshold for inequalities
    double angle_eps = 1e-10;    // angle comparison tolerance

    // Reads SIMPLEX_ORDER_TOL (decimal) as an override for eq_zero.
    static TolerancePolicy from_env();
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSimplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateRay : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BallTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
    SingularSystem(const std::string& msg, double sv)
        : std::runtime_error(msg), smallest_singular_value(sv) {}
    double smallest_singular_value;
};

// Symmetric real matrix; symmetry is exact after construction.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(const Eigen::MatrixXd& m);

    int size() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXd& mat() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }

private:
    Eigen::MatrixXd mat_;
};

struct MatrixDiagnostics {
    double det = 0.0;
    // smallest eigenvalue of each leading principal k x k block, k = 1..size
    std::vector<double> leading_minor_mins;
    Eigen::MatrixXd cofactors;
    bool cofactors_all_positive = false;
    // every n x n principal submatrix (row/col k deleted) positive definite
    bool principal_n_blocks_pd = false;
};

MatrixDiagnostics gram_diagnostics(const SymmetricMatrix& a, const TolerancePolicy& tol = {});

enum class HemisphereMode { Open, Closed };

// Unit w with <w,u_i> >= strict_margin for all i (Open) or >= 0 (Closed),
// or nullopt when no such direction exists.
std::optional<Eigen::VectorXd> hemisphere_witness(const std::vector<Eigen::VectorXd>& points,
                                                  HemisphereMode mode,
                                                  const TolerancePolicy& tol = {});

struct MinNormPoint {
    Eigen::VectorXd point;          // projection of the origin onto conv(points)
    std::vector<int> support;       // indices with nonzero convex coefficient
    Eigen::VectorXd coefficients;   // convex coefficients over `support`
};

// Exact by exhaustive subset enumeration; point counts are <= kMaxDim+1.
MinNormPoint min_norm_point_in_hull(const std::vector<Eigen::VectorXd>& points);

Eigen::VectorXd solve_square(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const TolerancePolicy& tol = {});

// Helpers shared across modules.
Eigen::MatrixXd delete_row_col(const Eigen::MatrixXd& m, int row, int col);
double smallest_eigenvalue(const Eigen::MatrixXd& sym);
// Columns form an orthonormal basis of ker(m); rank decided at reltol * max_sv.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m, double reltol);

}  // namespace simplexorder
