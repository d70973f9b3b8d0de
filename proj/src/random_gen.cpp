#include "simplexorder/random_gen.hpp"

#include "simplexorder/comparisons.hpp"

#include <cmath>

namespace simplexorder {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxAttempts = 20000;

// how far the Gram sits from the decision boundaries of its own class; the
// Euclidean det band itself is excluded since that determinant is exactly
// zero up to roundoff by construction
double classification_margin(const GramMatrix& g, Geometry intended) {
    if (!is_geometry(classify_gram(g.matrix), intended)) return -1.0;
    const MatrixDiagnostics d = gram_diagnostics(g.matrix);
    switch (intended) {
        case Geometry::Spherical:
            return d.leading_minor_mins.back();
        case Geometry::Hyperbolic: {
            double margin = -d.det;
            margin = std::min(margin, d.cofactors.minCoeff());
            return margin;
        }
        case Geometry::Euclidean:
            return d.cofactors.minCoeff();
    }
    return -1.0;
}
}  // namespace

Eigen::VectorXd SimplexSampler::gaussian(int k) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v(i) = normal(rng_);
    return v;
}

Simplex SimplexSampler::sample_once(Geometry geometry, int dim) {
    std::vector<ModelPoint> vertices;
    vertices.reserve(dim + 1);
    switch (geometry) {
        case Geometry::Euclidean: {
            for (int i = 0; i <= dim; ++i)
                vertices.push_back(ModelPoint::euclidean(gaussian(dim)));
            break;
        }
        case Geometry::Hyperbolic: {
            std::uniform_real_distribution<double> radius(0.3, 2.0);
            for (int i = 0; i <= dim; ++i) {
                const Eigen::VectorXd dir = gaussian(dim).normalized();
                const double rho = radius(rng_);
                Eigen::VectorXd x(dim + 1);
                x.head(dim) = std::sinh(rho) * dir;
                x(dim) = std::cosh(rho);
                vertices.push_back(ModelPoint::hyperboloid(x));
            }
            break;
        }
        case Geometry::Spherical: {
            const Eigen::VectorXd center = gaussian(dim + 1).normalized();
            std::uniform_real_distribution<double> angle(0.0, kPi / 2.0 - 0.1);
            for (int i = 0; i <= dim; ++i) {
                Eigen::VectorXd t = gaussian(dim + 1);
                t -= t.dot(center) * center;
                t.normalize();
                const double a = angle(rng_);
                vertices.push_back(
                    ModelPoint::spherical(std::cos(a) * center + std::sin(a) * t));
            }
            break;
        }
    }
    return Simplex(geometry, std::move(vertices));
}

Simplex SimplexSampler::sample(Geometry geometry, int dim) {
    if (dim < 2 || dim > kMaxDim) throw InputError("SimplexSampler: dim must be in [2,7]");
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        try {
            Simplex s = sample_once(geometry, dim);
            const GramMatrix g = gram_of(s);
            const DihedralAngles z = dihedral_angles(g);
            bool ok = true;
            for (int i = 0; i <= dim && ok; ++i)
                for (int j = 0; j <= dim; ++j) {
                    if (i == j) continue;
                    if (z.angles(i, j) < 0.05 || z.angles(i, j) > kPi - 0.05) {
                        ok = false;
                        break;
                    }
                }
            // keep the sample well inside its classification region so that
            // downstream sign tests are never decided by roundoff
            if (ok) ok = classification_margin(g, geometry) > 1e-6;
            if (ok) return s;
        } catch (const DegenerateSimplex&) {
        } catch (const InputError&) {
        }
    }
    throw NumericalFailure("SimplexSampler: rejection sampling exhausted");
}

Simplex SimplexSampler::sample_boundary_center(int dim, double threshold) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Simplex s = sample(Geometry::Spherical, dim);
        try {
            const Simplex dual = spherical_dual(s);
            const MinBallResult ball = min_enclosing_spherical_ball(dual.vertices());
            Eigen::MatrixXd v(dim + 1, dim + 1);
            for (int i = 0; i <= dim; ++i) v.col(i) = dual.vertex(i).coords;
            Eigen::VectorXd alpha = solve_square(v, ball.ball.center.coords);
            alpha /= alpha.sum();
            if (alpha.minCoeff() < threshold) return s;
        } catch (const std::runtime_error&) {
        }
    }
    throw NumericalFailure("SimplexSampler: no boundary-center case found");
}

}  // namespace simplexorder
