#include "simplexorder/simplex.hpp"

#include <cmath>

namespace simplexorder {

namespace {
double ambient_dot(Geometry tag, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return tag == Geometry::Hyperbolic ? minkowski_dot(a, b) : a.dot(b);
}

// Smallest singular value relative to the largest.
double rank_residual(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) / std::max(1.0, sv(0));
}
}  // namespace

Simplex::Simplex(Geometry tag, std::vector<ModelPoint> vertices, const TolerancePolicy& tol)
    : tag_(tag), vertices_(std::move(vertices)) {
    const int count = static_cast<int>(vertices_.size());
    if (count < 3) throw InputError("Simplex: need at least 3 vertices (n >= 2)");
    const int n = count - 1;
    if (n > kMaxDim) throw InputError("Simplex: dimension exceeds cap");
    for (const auto& v : vertices_) {
        if (v.tag != tag_) throw InputError("Simplex: vertex geometry mismatch");
        if (v.dim() != n) throw InputError("Simplex: vertex dimension mismatch");
    }

    // nondegeneracy: vertices span the right rank in the ambient model
    Eigen::MatrixXd m;
    if (tag_ == Geometry::Euclidean) {
        m.resize(n, n);
        for (int i = 1; i <= n; ++i)
            m.row(i - 1) = (vertices_[i].coords - vertices_[0].coords).transpose();
    } else {
        m.resize(count, n + 1);
        for (int i = 0; i < count; ++i) m.row(i) = vertices_[i].coords.transpose();
    }
    if (rank_residual(m) <= tol.eq_zero)
        throw DegenerateSimplex("Simplex: vertices lie in a lower-dimensional geodesic subspace");
}

GramMatrix::GramMatrix(const SymmetricMatrix& m) : matrix(m) {
    const int n1 = matrix.size();
    for (int i = 0; i < n1; ++i) {
        if (std::abs(matrix(i, i) - 1.0) > 1e-12)
            throw InputError("GramMatrix: diagonal must be 1");
        for (int j = i + 1; j < n1; ++j)
            if (std::abs(matrix(i, j)) >= 1.0)
                throw InputError("GramMatrix: off-diagonal entries must lie in (-1,1)");
    }
}

bool is_geometry(const GramClass& c, Geometry g) {
    const Geometry* p = std::get_if<Geometry>(&c);
    return p && *p == g;
}

const char* to_string(Order o) {
    switch (o) {
        case Order::Equal: return "equal";
        case Order::StrictlyLess: return "strictly_less";
        case Order::LessOrEqualNotStrict: return "less_or_equal_not_strict";
        case Order::StrictlyGreater: return "strictly_greater";
        case Order::GreaterOrEqualNotStrict: return "greater_or_equal_not_strict";
        case Order::Incomparable: return "incomparable";
    }
    return "?";
}

FacetNormals facet_normals(const Simplex& s, const TolerancePolicy& tol) {
    const int count = s.dim() + 1;
    FacetNormals out{s.tag(), {}};
    out.normals.reserve(count);

    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd normal;
        if (s.tag() == Geometry::Euclidean) {
            // null direction of the face's difference vectors
            const int n = s.dim();
            Eigen::MatrixXd rows(n - 1, n);
            int base = (i == 0) ? 1 : 0;
            int r = 0;
            for (int j = 0; j < count; ++j) {
                if (j == i || j == base) continue;
                rows.row(r++) = (s.vertex(j).coords - s.vertex(base).coords).transpose();
            }
            Eigen::MatrixXd null = kernel_basis(rows, tol.eq_zero);
            if (null.cols() != 1) throw DegenerateSimplex("facet_normals: face is degenerate");
            normal = null.col(0);
            if (normal.dot(s.vertex(i).coords - s.vertex(base).coords) < 0.0) normal = -normal;
        } else {
            // the face's hyperplane passes through the origin of the ambient space
            const int k = s.dim() + 1;
            Eigen::MatrixXd rows(count - 1, k);
            int r = 0;
            for (int j = 0; j < count; ++j) {
                if (j == i) continue;
                Eigen::VectorXd row = s.vertex(j).coords;
                if (s.tag() == Geometry::Hyperbolic) row(k - 1) = -row(k - 1);
                rows.row(r++) = row.transpose();
            }
            Eigen::MatrixXd null = kernel_basis(rows, tol.eq_zero);
            if (null.cols() != 1) throw DegenerateSimplex("facet_normals: face is degenerate");
            normal = null.col(0);
            if (s.tag() == Geometry::Hyperbolic) {
                const double q = minkowski_dot(normal, normal);
                if (q <= tol.eq_zero)
                    throw DegenerateSimplex("facet_normals: facet normal is not spacelike");
                normal /= std::sqrt(q);
            }
            if (ambient_dot(s.tag(), normal, s.vertex(i).coords) < 0.0) normal = -normal;
        }
        out.normals.push_back(normal);
    }
    return out;
}

GramMatrix gram_of(const Simplex& s, const TolerancePolicy& tol) {
    const FacetNormals fn = facet_normals(s, tol);
    const int count = s.dim() + 1;
    Eigen::MatrixXd g(count, count);
    for (int i = 0; i < count; ++i) {
        g(i, i) = 1.0;
        for (int j = i + 1; j < count; ++j)
            g(i, j) = g(j, i) = ambient_dot(s.tag(), fn.normals[i], fn.normals[j]);
    }
    return GramMatrix(SymmetricMatrix(g));
}

DihedralAngles dihedral_angles(const GramMatrix& g) {
    const int n1 = g.size();
    DihedralAngles out;
    out.angles = Eigen::MatrixXd::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (i != j) out.angles(i, j) = std::acos(-g.matrix(i, j));
    return out;
}

GramClass classify_gram(const SymmetricMatrix& a, const TolerancePolicy& tol) {
    if (a.size() < 3) throw InputError("classify_gram: size must be >= 3");
    for (int i = 0; i < a.size(); ++i)
        if (std::abs(a(i, i) - 1.0) > 1e-12)
            throw InputError("classify_gram: diagonal must be 1");

    const double scale = std::max(1.0, a.mat().cwiseAbs().maxCoeff());
    const MatrixDiagnostics d = gram_diagnostics(a, tol);

    if (smallest_eigenvalue(a.mat()) > tol.eq_zero * scale) return Geometry::Spherical;

    const bool det_zero = std::abs(d.det) <= tol.eq_zero * scale;
    const bool det_neg = d.det < -tol.eq_zero * scale;
    if (!det_zero && !det_neg)
        return NotAGram{"det positive but matrix not positive definite"};
    if (!d.principal_n_blocks_pd)
        return NotAGram{"a principal n x n submatrix is not positive definite"};
    if (!d.cofactors_all_positive)
        return NotAGram{"not all cofactors are positive"};
    return det_zero ? Geometry::Euclidean : Geometry::Hyperbolic;
}

namespace {

Simplex realize_spherical(const Eigen::MatrixXd& a, const TolerancePolicy& tol) {
    const int n1 = static_cast<int>(a.rows());
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("realize: Cholesky failed on a positive definite Gram");
    Eigen::MatrixXd l = llt.matrixL();  // rows of L are the inward normals
    Eigen::MatrixXd linv = l.inverse();
    std::vector<ModelPoint> vertices;
    vertices.reserve(n1);
    for (int j = 0; j < n1; ++j)
        vertices.push_back(ModelPoint::spherical(linv.col(j).normalized()));
    return Simplex(Geometry::Spherical, std::move(vertices), tol);
}

Simplex realize_euclidean(const Eigen::MatrixXd& a, const TolerancePolicy& tol) {
    const int n1 = static_cast<int>(a.rows());
    const int n = n1 - 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    // rank n factor: drop the (near-)zero eigenvalue
    Eigen::MatrixXd normals(n, n1);  // column i = inward normal n_i in E^n
    for (int k = 0; k < n; ++k) {
        const double lambda = es.eigenvalues()(k + 1);
        if (lambda <= 0.0)
            throw NumericalFailure("realize: Euclidean Gram has wrong signature");
        normals.row(k) = std::sqrt(lambda) * es.eigenvectors().col(k + 1).transpose();
    }
    // hyperplanes tangent to the unit insphere: <n_i, x> = -1
    std::vector<ModelPoint> vertices;
    vertices.reserve(n1);
    for (int j = 0; j < n1; ++j) {
        Eigen::MatrixXd sys(n, n);
        int r = 0;
        for (int i = 0; i < n1; ++i)
            if (i != j) sys.row(r++) = normals.col(i).transpose();
        vertices.push_back(
            ModelPoint::euclidean(solve_square(sys, Eigen::VectorXd::Constant(n, -1.0), tol)));
    }
    return Simplex(Geometry::Euclidean, std::move(vertices), tol);
}

Simplex realize_hyperbolic(const Eigen::MatrixXd& a, const TolerancePolicy& tol) {
    const int n1 = static_cast<int>(a.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.eigenvalues()(0) >= 0.0 || es.eigenvalues()(1) <= 0.0)
        throw NumericalFailure("realize: hyperbolic Gram has wrong signature");
    // A = N^T J N with J = diag(+,...,+,-): spatial rows from the positive
    // eigenvalues, timelike row (last) from the negative one
    Eigen::MatrixXd normals(n1, n1);  // column i = normal n_i, timelike slot last
    for (int k = 1; k < n1; ++k)
        normals.row(k - 1) = std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k).transpose();
    normals.row(n1 - 1) = std::sqrt(-es.eigenvalues()(0)) * es.eigenvectors().col(0).transpose();

    Eigen::MatrixXd rows(n1, n1);  // row i = n_i^T eta
    for (int i = 0; i < n1; ++i) {
        Eigen::VectorXd row = normals.col(i);
        row(n1 - 1) = -row(n1 - 1);
        rows.row(i) = row.transpose();
    }
    Eigen::MatrixXd rows_inv = rows.inverse();

    std::vector<Eigen::VectorXd> raw(n1);
    for (int j = 0; j < n1; ++j) {
        raw[j] = rows_inv.col(j);
        const double q = minkowski_dot(raw[j], raw[j]);
        if (q >= -tol.eq_zero)
            throw NumericalFailure("realize: hyperbolic vertex direction is not timelike");
        raw[j] /= std::sqrt(-q);
    }
    // vertices end up on a common sheet; flip timelike coordinates if it is
    // the lower one (a Minkowski-form-preserving reflection)
    if (raw[0](n1 - 1) < 0.0)
        for (auto& v : raw) v = -v;
    std::vector<ModelPoint> vertices;
    vertices.reserve(n1);
    for (auto& v : raw) {
        if (v(n1 - 1) <= 0.0)
            throw NumericalFailure("realize: hyperbolic vertices on mixed sheets");
        vertices.push_back(ModelPoint::hyperboloid(v));
    }
    return Simplex(Geometry::Hyperbolic, std::move(vertices), tol);
}

}  // namespace

Simplex realize(const SymmetricMatrix& a, const TolerancePolicy& tol) {
    const GramClass c = classify_gram(a, tol);
    if (const NotAGram* bad = std::get_if<NotAGram>(&c))
        throw InputError("realize: not a Gram matrix (" + bad->reason + ")");
    switch (std::get<Geometry>(c)) {
        case Geometry::Spherical: return realize_spherical(a.mat(), tol);
        case Geometry::Euclidean: return realize_euclidean(a.mat(), tol);
        case Geometry::Hyperbolic: return realize_hyperbolic(a.mat(), tol);
    }
    throw NumericalFailure("realize: unreachable");
}

Simplex spherical_dual(const Simplex& s, const TolerancePolicy& tol) {
    if (s.tag() != Geometry::Spherical) throw InputError("spherical_dual: spherical simplex required");
    const FacetNormals fn = facet_normals(s, tol);
    std::vector<ModelPoint> vertices;
    vertices.reserve(fn.normals.size());
    for (const auto& n : fn.normals)
        vertices.push_back(ModelPoint::spherical((-n).normalized()));
    return Simplex(Geometry::Spherical, std::move(vertices), tol);
}

OrderRelation compare(const DihedralAngles& a, const DihedralAngles& b,
                      const TolerancePolicy& tol) {
    if (a.size() != b.size()) throw InputError("compare: dimension mismatch");
    const int n1 = a.size();
    OrderRelation rel;
    rel.margins = b.angles - a.angles;

    // the strict order requires every off-diagonal pair to move strictly
    bool le = true, ge = true, all_less = true, all_greater = true;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            if (i == j) continue;
            const double m = rel.margins(i, j);
            if (m < -tol.angle_eps) le = false;
            if (m > tol.angle_eps) ge = false;
            if (m <= tol.angle_eps) all_less = false;
            if (m >= -tol.angle_eps) all_greater = false;
        }
    if (le && ge) rel.order = Order::Equal;
    else if (le) rel.order = all_less ? Order::StrictlyLess : Order::LessOrEqualNotStrict;
    else if (ge) rel.order = all_greater ? Order::StrictlyGreater : Order::GreaterOrEqualNotStrict;
    else rel.order = Order::Incomparable;
    return rel;
}

}  // namespace simplexorder
