#include "simplexorder/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace simplexorder {

TolerancePolicy TolerancePolicy::from_env() {
    TolerancePolicy tol;
    if (const char* s = std::getenv("SIMPLEX_ORDER_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && v > 0.0) tol.eq_zero = v;
    }
    return tol;
}

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InputError("SymmetricMatrix: matrix not square");
    if (m.rows() < 2) throw InputError("SymmetricMatrix: size must be >= 2");
    if (m.rows() > kMaxDim + 1) throw InputError("SymmetricMatrix: size exceeds dimension cap");
    if (!m.allFinite()) throw InputError("SymmetricMatrix: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("SymmetricMatrix: matrix not symmetric");
    mat_ = 0.5 * (m + m.transpose());
}

Eigen::MatrixXd delete_row_col(const Eigen::MatrixXd& m, int row, int col) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd out(n - 1, m.cols() - 1);
    for (int i = 0, oi = 0; i < n; ++i) {
        if (i == row) continue;
        for (int j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

double smallest_eigenvalue(const Eigen::MatrixXd& sym) {
    if (sym.rows() == 1) return sym(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m, double reltol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = reltol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

MatrixDiagnostics gram_diagnostics(const SymmetricMatrix& a, const TolerancePolicy& tol) {
    const Eigen::MatrixXd& m = a.mat();
    const int n1 = a.size();
    MatrixDiagnostics d;
    d.det = m.determinant();
    d.leading_minor_mins.reserve(n1);
    for (int k = 1; k <= n1; ++k)
        d.leading_minor_mins.push_back(smallest_eigenvalue(m.topLeftCorner(k, k)));

    d.cofactors.resize(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            const double minor = delete_row_col(m, i, j).determinant();
            d.cofactors(i, j) = (((i + j) % 2) ? -1.0 : 1.0) * minor;
        }
    d.cofactors_all_positive = (d.cofactors.minCoeff() > tol.strict_margin);

    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    d.principal_n_blocks_pd = true;
    for (int k = 0; k < n1; ++k) {
        if (smallest_eigenvalue(delete_row_col(m, k, k)) <= -tol.eq_zero * scale) {
            d.principal_n_blocks_pd = false;
            break;
        }
    }
    return d;
}

namespace {

// Minimum-norm point of the affine hull of a point subset, via the KKT system
// [ G 1 ; 1^T 0 ] [lambda ; -mu] = [0 ; 1].
bool affine_min_norm(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& idx,
                     Eigen::VectorXd* lambda) {
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXd kkt(k + 1, k + 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) kkt(i, j) = pts[idx[i]].dot(pts[idx[j]]);
    kkt.row(k).setOnes();
    kkt.col(k).setOnes();
    kkt(k, k) = 0.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs(k) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) return false;
    Eigen::VectorXd sol = lu.solve(rhs);
    if ((kkt * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) return false;
    *lambda = sol.head(k);
    return true;
}

void check_unit_points(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw InputError("hemisphere_witness: empty point set");
    const auto dim = points.front().size();
    if (dim < 1) throw InputError("hemisphere_witness: zero-dimensional points");
    for (const auto& p : points) {
        if (p.size() != dim) throw InputError("hemisphere_witness: inconsistent dimensions");
        if (std::abs(p.norm() - 1.0) > 1e-8) throw InputError("hemisphere_witness: non-unit point");
    }
}

}  // namespace

MinNormPoint min_norm_point_in_hull(const std::vector<Eigen::VectorXd>& points) {
    const int m = static_cast<int>(points.size());
    if (m == 0) throw InputError("min_norm_point_in_hull: empty point set");
    if (m > kMaxDim + 2) throw InputError("min_norm_point_in_hull: too many points");

    MinNormPoint best;
    double best_norm = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        Eigen::VectorXd lambda;
        if (idx.size() == 1) {
            lambda = Eigen::VectorXd::Ones(1);
        } else if (!affine_min_norm(points, idx, &lambda)) {
            continue;
        }
        if (lambda.minCoeff() < -1e-12) continue;
        Eigen::VectorXd p = Eigen::VectorXd::Zero(points.front().size());
        for (size_t i = 0; i < idx.size(); ++i) p += lambda(static_cast<int>(i)) * points[idx[i]];
        const double norm = p.norm();
        if (norm < best_norm) {
            best_norm = norm;
            best.point = p;
            best.support = idx;
            best.coefficients = lambda;
        }
    }
    return best;
}

std::optional<Eigen::VectorXd> hemisphere_witness(const std::vector<Eigen::VectorXd>& points,
                                                  HemisphereMode mode,
                                                  const TolerancePolicy& tol) {
    check_unit_points(points);
    const int k = static_cast<int>(points.front().size());
    const int m = static_cast<int>(points.size());

    // max_{|w|<=1} min_i <w,u_i> equals the distance from the origin to the
    // convex hull; the maximizer is the normalized hull projection.
    const MinNormPoint proj = min_norm_point_in_hull(points);
    const double dist = proj.point.norm();
    if (dist >= std::max(tol.strict_margin, 1e-14)) {
        Eigen::VectorXd w = proj.point / dist;
        if (mode == HemisphereMode::Open) {
            for (const auto& u : points)
                if (w.dot(u) < tol.strict_margin) return std::nullopt;
        }
        return w;
    }
    if (mode == HemisphereMode::Open) return std::nullopt;

    // Closed case with the origin in the hull: the feasible cone {w : Uw >= 0}
    // is nonzero iff it has an extreme ray, each of which is pinned by k-1
    // independent active constraints (or by a rank defect of the whole set).
    Eigen::MatrixXd u_rows(m, k);
    for (int i = 0; i < m; ++i) u_rows.row(i) = points[i].transpose();
    Eigen::MatrixXd null_all = kernel_basis(u_rows, tol.eq_zero);
    if (null_all.cols() > 0) return null_all.col(0);  // all products ~ 0

    const auto feasible = [&](const Eigen::VectorXd& w) {
        for (const auto& u : points)
            if (w.dot(u) < -tol.eq_zero) return false;
        return true;
    };
    if (k == 1) {
        Eigen::VectorXd w(1);
        w(0) = 1.0;
        if (feasible(w)) return w;
        w(0) = -1.0;
        if (feasible(w)) return w;
        return std::nullopt;
    }
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != k - 1) continue;
        Eigen::MatrixXd sub(k - 1, k);
        int r = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) sub.row(r++) = points[i].transpose();
        Eigen::MatrixXd null_sub = kernel_basis(sub, tol.eq_zero);
        if (null_sub.cols() != 1) continue;
        Eigen::VectorXd w = null_sub.col(0);
        if (feasible(w)) return w;
        if (feasible(-w)) return -w;
    }
    return std::nullopt;
}

Eigen::VectorXd solve_square(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const TolerancePolicy& tol) {
    if (a.rows() != a.cols()) throw InputError("solve_square: matrix not square");
    if (a.rows() != b.size()) throw InputError("solve_square: size mismatch");
    if (!a.allFinite() || !b.allFinite()) throw InputError("solve_square: non-finite input");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sv_min = sv(sv.size() - 1);
    if (sv_min <= tol.eq_zero * std::max(1.0, sv(0)))
        throw SingularSystem("solve_square: singular to tolerance", sv_min);
    return svd.solve(b);
}

}  // namespace simplexorder
