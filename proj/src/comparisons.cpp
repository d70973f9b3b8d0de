#include "simplexorder/comparisons.hpp"

#include <cmath>
#include <sstream>

namespace simplexorder {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

// Gram path a_ij = g_ij + dir * t * (2/3)(1 - g_ij^2), dir = -1 opening the
// angles downward (hyperbolic side), dir = +1 upward (spherical side).  The
// rate vanishes quadratically at +-1, so the entries stay in (-1,1) and the
// induced angle change is (2/3) t sin(zeta), uniformly small in t.
Eigen::MatrixXd gram_path(const Eigen::MatrixXd& g, double t, double dir) {
    const int n1 = static_cast<int>(g.rows());
    Eigen::MatrixXd a = g;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (i != j) a(i, j) = g(i, j) + dir * t * (2.0 / 3.0) * (1.0 - g(i, j) * g(i, j));
    return a;
}

double bracket_branch(const Eigen::MatrixXd& g, double t_request, double dir,
                      Geometry target, const TolerancePolicy& tol) {
    double t = t_request;
    for (int iter = 0; iter < 60; ++iter) {
        const Eigen::MatrixXd a = gram_path(g, t, dir);
        bool in_range = true;
        for (int i = 0; i < a.rows() && in_range; ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (i != j && std::abs(a(i, j)) >= 1.0) {
                    in_range = false;
                    break;
                }
        if (in_range && is_geometry(classify_gram(SymmetricMatrix(a), tol), target)) return t;
        t /= 2.0;
    }
    throw NumericalFailure("m3_bracket: halving exhausted without a valid Gram");
}

// Orthonormal basis (columns) of the span of the given ambient vectors;
// throws unless the rank is exactly `expected_rank`.
Eigen::MatrixXd span_basis(const std::vector<Eigen::VectorXd>& vecs, int expected_rank,
                           const TolerancePolicy& tol) {
    const int k = static_cast<int>(vecs.front().size());
    Eigen::MatrixXd m(k, static_cast<int>(vecs.size()));
    for (size_t i = 0; i < vecs.size(); ++i) m.col(static_cast<int>(i)) = vecs[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol.eq_zero * std::max(1.0, sv(0))) ++rank;
    if (rank != expected_rank)
        throw NumericalFailure("span of chain points has unexpected rank");
    return svd.matrixU().leftCols(expected_rank);
}

// One-dimensional kernel coefficients of the matrix with the given columns,
// normalized to positive entries summing to 1.
Eigen::VectorXd positive_kernel_coefficients(const Eigen::MatrixXd& columns,
                                             const TolerancePolicy& tol,
                                             const char* what) {
    Eigen::MatrixXd kernel = kernel_basis(columns, tol.eq_zero);
    if (kernel.cols() != 1)
        throw DegenerateSimplex(std::string(what) + ": kernel is not one-dimensional");
    Eigen::VectorXd c = kernel.col(0);
    if (c.maxCoeff() <= 0.0) c = -c;
    if (c.minCoeff() <= 0.0)
        throw DegenerateSimplex(std::string(what) + ": kernel coefficients change sign");
    return c / c.sum();
}
}  // namespace

BracketResult m3_bracket(const Simplex& euclid, double t_request, const TolerancePolicy& tol) {
    if (euclid.tag() != Geometry::Euclidean)
        throw InputError("m3_bracket: Euclidean simplex required");
    if (t_request <= 0.0 || t_request > 1.0)
        throw InputError("m3_bracket: t_request must be in (0,1]");
    const GramMatrix g = gram_of(euclid, tol);

    const double t_hyp = bracket_branch(g.matrix.mat(), t_request, -1.0, Geometry::Hyperbolic, tol);
    const double t_sph = bracket_branch(g.matrix.mat(), t_request, +1.0, Geometry::Spherical, tol);
    GramMatrix gram_hyp{SymmetricMatrix(gram_path(g.matrix.mat(), t_hyp, -1.0))};
    GramMatrix gram_sph{SymmetricMatrix(gram_path(g.matrix.mat(), t_sph, +1.0))};
    Simplex simplex_hyp = realize(gram_hyp.matrix, tol);
    Simplex simplex_sph = realize(gram_sph.matrix, tol);
    return BracketResult{t_hyp, t_sph, gram_hyp, gram_sph,
                         std::move(simplex_hyp), std::move(simplex_sph)};
}

RigidityReport m4_rigidity_witness(const GramMatrix& g1, const GramMatrix& g2,
                                   const TolerancePolicy& tol) {
    if (g1.size() != g2.size()) throw InputError("m4_rigidity_witness: size mismatch");
    RigidityReport report;

    const bool e1 = is_geometry(classify_gram(g1.matrix, tol), Geometry::Euclidean);
    const bool e2 = is_geometry(classify_gram(g2.matrix, tol), Geometry::Euclidean);
    const OrderRelation rel = compare(dihedral_angles(g1), dihedral_angles(g2), tol);
    const bool leq = rel.order == Order::Equal || rel.order == Order::StrictlyLess ||
                     rel.order == Order::LessOrEqualNotStrict;
    report.premise_holds = e1 && e2 && leq;

    const int n1 = g1.size();
    for (int i = 0; i < n1 && !report.strict_pair; ++i)
        for (int j = i + 1; j < n1; ++j)
            if (rel.margins(i, j) > tol.angle_eps) {
                report.strict_pair = {i, j};
                break;
            }

    // f(t) = det((1-t)G1 + tG2); f'(1) by the cofactor formula
    const Eigen::MatrixXd diff = g2.matrix.mat() - g1.matrix.mat();
    const MatrixDiagnostics d2 = gram_diagnostics(g2.matrix, tol);
    report.f_prime_at_1 = (diff.array() * d2.cofactors.array()).sum();

    if (report.premise_holds && report.strict_pair) {
        double f_min = 0.0;
        for (int k = 0; k <= 100; ++k) {
            const double t = k / 100.0;
            const Eigen::MatrixXd at = (1.0 - t) * g1.matrix.mat() + t * g2.matrix.mat();
            f_min = std::min(f_min, at.determinant());
        }
        std::ostringstream os;
        os << "both-Euclidean premise with a strict pair: f'(1) = " << report.f_prime_at_1
           << " forces det < 0 just below t = 1 (grid min " << f_min
           << "), contradicting positive semidefiniteness";
        report.diagnostics = os.str();
        report.verdict = RigidityVerdict::TheoremViolationSuspected;
    }
    return report;
}

InsphereData hyperbolic_incenter(const Simplex& hyp, const TolerancePolicy& tol) {
    if (hyp.tag() != Geometry::Hyperbolic)
        throw InputError("hyperbolic_incenter: hyperbolic simplex required");
    const FacetNormals fn = facet_normals(hyp, tol);
    const int n1 = hyp.dim() + 1;
    const int k = n1;  // ambient dimension n+1

    // <x, n_i>_M - sinh(r) = 0 for all i: a homogeneous linear system in
    // (x, sinh r) whose kernel is the incenter axis.
    Eigen::MatrixXd sys(n1, k + 1);
    for (int i = 0; i < n1; ++i) {
        Eigen::VectorXd row = fn.normals[i];
        row(k - 1) = -row(k - 1);
        sys.row(i).head(k) = row.transpose();
        sys(i, k) = -1.0;
    }
    Eigen::MatrixXd kernel = kernel_basis(sys, tol.eq_zero);
    if (kernel.cols() != 1)
        throw DegenerateSimplex("hyperbolic_incenter: equidistance system is degenerate");
    Eigen::VectorXd axis = kernel.col(0);
    Eigen::VectorXd x = axis.head(k);
    const double q = minkowski_dot(x, x);
    if (q >= -tol.eq_zero)
        throw DegenerateSimplex("hyperbolic_incenter: incenter direction is not timelike");
    const double scale = 1.0 / std::sqrt(-q);
    x *= scale;
    double h = axis(k) * scale;
    if (x(k - 1) < 0.0) {
        x = -x;
        h = -h;
    }
    if (h <= 0.0)
        throw DegenerateSimplex("hyperbolic_incenter: center not on the interior side of all facets");

    InsphereData data{ModelPoint::hyperboloid(x), std::asinh(h), {}, {}};
    const Isometry iso = translate_to_basepoint(data.center);
    data.tangency_dirs.reserve(n1);
    for (const auto& n : fn.normals) {
        const Eigen::VectorXd moved = iso.apply_vector(n);
        // insphere touches the facet opposite to the inward normal direction
        data.tangency_dirs.push_back((-moved.head(k - 1)).normalized());
    }

    Eigen::MatrixXd u(k - 1, n1);
    for (int i = 0; i < n1; ++i) u.col(i) = data.tangency_dirs[i];
    data.balance = positive_kernel_coefficients(u, tol, "hyperbolic_incenter");
    return data;
}

M2Result m2_euclidean_from_hyperbolic(const Simplex& hyp, const TolerancePolicy& tol) {
    InsphereData ins = hyperbolic_incenter(hyp, tol);
    const int n1 = hyp.dim() + 1;
    const int n = hyp.dim();

    // compactness: no open-hemisphere witness for the reversed tangency set
    std::vector<Eigen::VectorXd> reversed;
    reversed.reserve(n1);
    for (const auto& u : ins.tangency_dirs) reversed.push_back(-u);
    if (hemisphere_witness(reversed, HemisphereMode::Open, tol))
        throw NumericalFailure("m2: tangent hyperplanes do not bound a compact simplex");

    // Euclidean simplex bounded by hyperplanes tangent to the unit sphere at
    // the tangency directions: <u_i, x> = 1
    std::vector<ModelPoint> vertices;
    vertices.reserve(n1);
    for (int j = 0; j < n1; ++j) {
        Eigen::MatrixXd sys(n, n);
        int r = 0;
        for (int i = 0; i < n1; ++i)
            if (i != j) sys.row(r++) = ins.tangency_dirs[i].transpose();
        vertices.push_back(
            ModelPoint::euclidean(solve_square(sys, Eigen::VectorXd::Ones(n), tol)));
    }
    Simplex euclid(Geometry::Euclidean, std::move(vertices), tol);

    DihedralAngles xi;
    xi.angles = Eigen::MatrixXd::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (i != j)
                xi.angles(i, j) =
                    kPi - std::acos(clamp_unit(ins.tangency_dirs[i].dot(ins.tangency_dirs[j])));
    DihedralAngles eta = dihedral_angles(gram_of(hyp, tol));
    return M2Result{std::move(euclid), std::move(xi), std::move(eta), std::move(ins)};
}

std::vector<int> barycentric_support(const Simplex& dual, const ModelPoint& s, double threshold) {
    const int n1 = dual.dim() + 1;
    Eigen::MatrixXd v(n1, n1);
    for (int i = 0; i < n1; ++i) v.col(i) = dual.vertex(i).coords;
    Eigen::VectorXd alpha = solve_square(v, s.coords);
    const double total = alpha.sum();
    if (std::abs(total) < 1e-12)
        throw NumericalFailure("barycentric_support: degenerate cone coordinates");
    alpha /= total;
    std::vector<int> support;
    for (int i = 0; i < n1; ++i)
        if (alpha(i) > threshold) support.push_back(i);
    return support;
}

DualChain extend_dual_to_equator(const Simplex& dual_centered, const MinBallResult& ball,
                                 const TolerancePolicy& tol) {
    if (dual_centered.tag() != Geometry::Spherical)
        throw InputError("extend_dual_to_equator: spherical simplex required");
    const int n1 = dual_centered.dim() + 1;
    const int k = n1;
    Eigen::VectorXd south = Eigen::VectorXd::Zero(k);
    south(k - 1) = -1.0;
    if ((ball.ball.center.coords - south).norm() > 1e-9)
        throw InputError("extend_dual_to_equator: ball center must be at (0,...,0,-1)");

    const double t_hat = kPi / 2.0 - ball.ball.radius;
    DualChain chain{dual_centered, ball.ball, static_cast<int>(ball.support.size()), t_hat,
                    {}, std::nullopt, std::nullopt, {}, {}};
    chain.extended.reserve(n1);
    for (int i = 0; i < n1; ++i) {
        const ModelPoint u =
            spherical_ray_extend(ball.ball.center, dual_centered.vertex(i), t_hat);
        chain.extended.push_back(u.coords);
    }

    // boundary vertices land on the equator, the rest stay strictly below it
    for (int i : ball.support)
        if (std::abs(chain.extended[i](k - 1)) > 1e-10)
            throw NumericalFailure("extend_dual_to_equator: equator residual too large");
    for (int i = 0; i < n1; ++i)
        for (int j = i + 1; j < n1; ++j) {
            const double du = std::acos(clamp_unit(chain.extended[i].dot(chain.extended[j])));
            if (du <= distance(dual_centered.vertex(i), dual_centered.vertex(j)))
                throw NumericalFailure("extend_dual_to_equator: distances failed to increase");
        }
    return chain;
}

DualChain perturb_off_closed_hemisphere(DualChain chain, const TolerancePolicy& tol) {
    const int n1 = chain.dual.dim() + 1;
    const int n = chain.dual.dim();
    if (chain.extended.size() != static_cast<size_t>(n1))
        throw InputError("perturb_off_closed_hemisphere: chain has no extended points");

    const Eigen::MatrixXd basis = span_basis(chain.extended, n, tol);
    const auto in_span = [&](const std::vector<Eigen::VectorXd>& vecs) {
        std::vector<Eigen::VectorXd> out;
        out.reserve(vecs.size());
        for (const auto& v : vecs) out.push_back((basis.transpose() * v).normalized());
        return out;
    };

    const std::vector<Eigen::VectorXd> u_span = in_span(chain.extended);
    if (!hemisphere_witness(u_span, HemisphereMode::Closed, tol)) {
        chain.perturbed = chain.extended;
        chain.delta = 0.0;
    } else {
        const std::vector<int> support =
            barycentric_support(chain.dual, chain.ball.center, 1e-8);
        const int ell = static_cast<int>(support.size());
        if (ell < 2 || ell > n)
            throw NumericalFailure("perturb_off_closed_hemisphere: inconsistent face dimension");
        chain.face_dim = ell;

        std::vector<bool> in_support(n1, false);
        for (int i : support) in_support[i] = true;
        Eigen::VectorXd drift = Eigen::VectorXd::Zero(chain.extended.front().size());
        for (int i = 0; i < n1; ++i)
            if (!in_support[i]) drift += chain.extended[i];

        double eps = kPi;
        for (int i = 0; i < n1; ++i)
            for (int j = i + 1; j < n1; ++j) {
                const double du = std::acos(clamp_unit(chain.extended[i].dot(chain.extended[j])));
                eps = std::min(eps, du - distance(chain.dual.vertex(i), chain.dual.vertex(j)));
            }
        eps *= 0.5;

        double delta = eps / (2.0 * (n1));
        bool accepted = false;
        for (int iter = 0; iter < 60 && !accepted; ++iter, delta /= 2.0) {
            std::vector<Eigen::VectorXd> w(n1);
            for (int i = 0; i < n1; ++i)
                w[i] = in_support[i] ? (chain.extended[i] - delta * drift).normalized()
                                     : chain.extended[i];
            std::vector<Eigen::VectorXd> w_span = in_span(w);

            bool ok = true;
            // every n-subset linearly independent
            for (int q = 0; q < n1 && ok; ++q) {
                Eigen::MatrixXd sub(n, n);
                int c = 0;
                for (int i = 0; i < n1; ++i)
                    if (i != q) sub.col(c++) = w_span[i];
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
                if (svd.singularValues()(n - 1) <= tol.eq_zero) ok = false;
            }
            if (ok && hemisphere_witness(w_span, HemisphereMode::Closed, tol)) ok = false;
            for (int i = 0; i < n1 && ok; ++i)
                for (int j = i + 1; j < n1; ++j) {
                    const double dw = std::acos(clamp_unit(w[i].dot(w[j])));
                    if (dw <= distance(chain.dual.vertex(i), chain.dual.vertex(j))) {
                        ok = false;
                        break;
                    }
                }
            if (ok) {
                chain.perturbed = std::move(w);
                chain.delta = delta;
                accepted = true;
            }
        }
        if (!accepted)
            throw NumericalFailure(
                "perturb_off_closed_hemisphere: no admissible delta after 60 halvings");
    }

    // balance coefficients: sum b_i w_i = 0 with b_i > 0
    Eigen::MatrixXd w_cols(n, n1);
    for (int i = 0; i < n1; ++i)
        w_cols.col(i) = basis.transpose() * chain.perturbed[i];
    chain.coefficients =
        positive_kernel_coefficients(w_cols, tol, "perturb_off_closed_hemisphere");
    Eigen::VectorXd residual = Eigen::VectorXd::Zero(chain.perturbed.front().size());
    for (int i = 0; i < n1; ++i) residual += chain.coefficients(i) * chain.perturbed[i];
    if (residual.cwiseAbs().maxCoeff() > 1e-9)
        throw NumericalFailure("perturb_off_closed_hemisphere: balance residual too large");
    return chain;
}

M1Result m1_euclidean_from_spherical(const Simplex& sph, const TolerancePolicy& tol) {
    if (sph.tag() != Geometry::Spherical)
        throw InputError("m1_euclidean_from_spherical: spherical simplex required");
    const int n1 = sph.dim() + 1;
    const int n = sph.dim();

    const Simplex dual = spherical_dual(sph, tol);
    MinBallResult ball = min_enclosing_spherical_ball(dual.vertices(), tol);
    const Isometry iso = translate_to_basepoint(ball.ball.center);

    std::vector<ModelPoint> centered;
    centered.reserve(n1);
    for (const auto& v : dual.vertices()) centered.push_back(iso.apply(v));
    Simplex dual_centered(Geometry::Spherical, std::move(centered), tol);
    MinBallResult ball_centered{{iso.apply(ball.ball.center), ball.ball.radius}, ball.support};

    DualChain chain =
        perturb_off_closed_hemisphere(extend_dual_to_equator(dual_centered, ball_centered, tol), tol);

    const Eigen::MatrixXd basis = span_basis(chain.perturbed, n, tol);
    std::vector<Eigen::VectorXd> w(n1);
    for (int i = 0; i < n1; ++i) w[i] = (basis.transpose() * chain.perturbed[i]).normalized();

    std::vector<ModelPoint> vertices;
    vertices.reserve(n1);
    for (int j = 0; j < n1; ++j) {
        Eigen::MatrixXd sys(n, n);
        int r = 0;
        for (int i = 0; i < n1; ++i)
            if (i != j) sys.row(r++) = w[i].transpose();
        vertices.push_back(
            ModelPoint::euclidean(solve_square(sys, Eigen::VectorXd::Ones(n), tol)));
    }
    Simplex euclid(Geometry::Euclidean, std::move(vertices), tol);

    DihedralAngles xi;
    xi.angles = Eigen::MatrixXd::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (i != j) xi.angles(i, j) = kPi - std::acos(clamp_unit(w[i].dot(w[j])));
    return M1Result{std::move(euclid), std::move(xi), std::move(chain)};
}

}  // namespace simplexorder
