#include "simplexorder/geometry.hpp"

#include <cmath>

namespace simplexorder {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }
}  // namespace

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::Spherical: return "spherical";
        case Geometry::Euclidean: return "euclidean";
        case Geometry::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(a.size());
    return a.head(n - 1).dot(b.head(n - 1)) - a(n - 1) * b(n - 1);
}

int ModelPoint::dim() const {
    const int k = static_cast<int>(coords.size());
    return tag == Geometry::Euclidean ? k : k - 1;
}

double ModelPoint::normalization_residual() const {
    switch (tag) {
        case Geometry::Spherical: return std::abs(coords.norm() - 1.0);
        case Geometry::Hyperbolic: return std::abs(minkowski_dot(coords, coords) + 1.0);
        case Geometry::Euclidean: return 0.0;
    }
    return 0.0;
}

ModelPoint ModelPoint::spherical(const Eigen::VectorXd& v) {
    if (v.size() < 2 || v.size() > kMaxDim + 1 || !v.allFinite())
        throw InputError("spherical point: bad coordinate vector");
    ModelPoint p{Geometry::Spherical, v};
    if (p.normalization_residual() > 1e-10)
        throw InputError("spherical point: not on the unit sphere");
    return p;
}

ModelPoint ModelPoint::euclidean(const Eigen::VectorXd& v) {
    if (v.size() < 1 || v.size() > kMaxDim || !v.allFinite())
        throw InputError("euclidean point: bad coordinate vector");
    return ModelPoint{Geometry::Euclidean, v};
}

ModelPoint ModelPoint::hyperboloid(const Eigen::VectorXd& v) {
    if (v.size() < 2 || v.size() > kMaxDim + 1 || !v.allFinite())
        throw InputError("hyperboloid point: bad coordinate vector");
    ModelPoint p{Geometry::Hyperbolic, v};
    if (p.normalization_residual() > 1e-10 || v(v.size() - 1) <= 0.0)
        throw InputError("hyperboloid point: not on the upper sheet");
    return p;
}

double distance(const ModelPoint& p, const ModelPoint& q) {
    if (p.tag != q.tag || p.coords.size() != q.coords.size())
        throw InputError("distance: geometry or dimension mismatch");
    switch (p.tag) {
        case Geometry::Spherical:
            return std::acos(clamp_unit(p.coords.dot(q.coords)));
        case Geometry::Euclidean:
            return (p.coords - q.coords).norm();
        case Geometry::Hyperbolic:
            return std::acosh(std::max(1.0, -minkowski_dot(p.coords, q.coords)));
    }
    return 0.0;
}

ModelPoint Isometry::apply(const ModelPoint& p) const {
    if (p.tag != tag) throw InputError("Isometry: geometry mismatch");
    ModelPoint out{tag, matrix * p.coords};
    if (out.normalization_residual() > 1e-9)
        throw NumericalFailure("Isometry: image violates model invariant");
    // renormalize exactly to keep downstream residuals tight
    if (tag == Geometry::Spherical) {
        out.coords.normalize();
    } else if (tag == Geometry::Hyperbolic) {
        out.coords /= std::sqrt(-minkowski_dot(out.coords, out.coords));
    }
    return out;
}

Isometry Isometry::compose(const Isometry& inner) const {
    if (tag != inner.tag) throw InputError("Isometry: geometry mismatch");
    return Isometry{tag, matrix * inner.matrix};
}

Isometry translate_to_basepoint(const ModelPoint& p) {
    const int k = static_cast<int>(p.coords.size());
    if (p.tag == Geometry::Spherical) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        b(k - 1) = -1.0;
        const Eigen::VectorXd u = p.coords.normalized();
        const double c = clamp_unit(u.dot(b));
        if (c > 1.0 - 1e-15) return {Geometry::Spherical, Eigen::MatrixXd::Identity(k, k)};
        Eigen::VectorXd v;
        if (c < -1.0 + 1e-12) {
            // antipodal: rotate by pi in any plane containing u
            int j = 0;
            for (int i = 1; i < k; ++i)
                if (std::abs(u(i)) < std::abs(u(j))) j = i;
            v = Eigen::VectorXd::Unit(k, j) - u(j) * u;
            v.normalize();
            Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(k, k) -
                                  2.0 * u * u.transpose() - 2.0 * v * v.transpose();
            return {Geometry::Spherical, rot};
        }
        v = (b - c * u).normalized();
        const double theta = std::acos(c);
        Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(k, k) +
                              (std::cos(theta) - 1.0) * (u * u.transpose() + v * v.transpose()) +
                              std::sin(theta) * (v * u.transpose() - u * v.transpose());
        return {Geometry::Spherical, rot};
    }
    if (p.tag == Geometry::Hyperbolic) {
        const double d = std::acosh(std::max(1.0, p.coords(k - 1)));
        if (d < 1e-15) return {Geometry::Hyperbolic, Eigen::MatrixXd::Identity(k, k)};
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        b(k - 1) = 1.0;
        const Eigen::VectorXd w = (p.coords - std::cosh(d) * b) / std::sinh(d);
        // boost by -d in the (w, b) plane
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k, k);
        m += w * ((std::cosh(d) - 1.0) * w.transpose() - std::sinh(d) * b.transpose());
        m += b * ((std::cosh(d) - 1.0) * b.transpose() - std::sinh(d) * w.transpose());
        return {Geometry::Hyperbolic, m};
    }
    throw InputError("translate_to_basepoint: spherical or hyperbolic points only");
}

Eigen::VectorXd hyperboloid_to_poincare(const ModelPoint& p) {
    if (p.tag != Geometry::Hyperbolic) throw InputError("hyperboloid_to_poincare: wrong geometry");
    const int k = static_cast<int>(p.coords.size());
    return p.coords.head(k - 1) / (1.0 + p.coords(k - 1));
}

ModelPoint poincare_to_hyperboloid(const Eigen::VectorXd& y) {
    const double n2 = y.squaredNorm();
    if (n2 >= 1.0) throw InputError("poincare_to_hyperboloid: point outside the unit ball");
    const int n = static_cast<int>(y.size());
    Eigen::VectorXd x(n + 1);
    x.head(n) = 2.0 * y / (1.0 - n2);
    x(n) = (1.0 + n2) / (1.0 - n2);
    return ModelPoint::hyperboloid(x);
}

ModelPoint spherical_ray_extend(const ModelPoint& s, const ModelPoint& v, double t) {
    if (s.tag != Geometry::Spherical || v.tag != Geometry::Spherical)
        throw InputError("spherical_ray_extend: spherical points required");
    const double a = distance(s, v);
    if (a < 1e-12 || a > kPi - 1e-12)
        throw DegenerateRay("spherical_ray_extend: ray through antipodal or coincident points");
    if (t < -a - 1e-12 || t > kPi - a + 1e-12)
        throw InputError("spherical_ray_extend: parameter out of range");
    const Eigen::VectorXd e = (v.coords - std::cos(a) * s.coords).normalized();
    Eigen::VectorXd out = std::cos(a + t) * s.coords + std::sin(a + t) * e;
    return ModelPoint::spherical(out.normalized());
}

double spherical_third_side(double x, double y, double c) {
    if (x <= 0.0 || x >= kPi || y <= 0.0 || y >= kPi || c <= 0.0 || c > kPi)
        throw InputError("spherical_third_side: arguments out of range");
    const double rhs = std::cos(x) * std::cos(y) + std::sin(x) * std::sin(y) * std::cos(c);
    return std::acos(clamp_unit(rhs));
}

double extension_growth_rate(double x, double y, double c, double g) {
    if (g <= 0.0) throw InputError("extension_growth_rate: growth rate must be positive");
    if (x + y >= kPi) throw PreconditionViolated("extension_growth_rate: requires x + y < pi");
    const double z = spherical_third_side(x, y, c);
    return g * (1.0 - std::cos(c)) * std::sin(x + y) / std::sin(z);
}

MinBallResult min_enclosing_spherical_ball(const std::vector<ModelPoint>& points,
                                           const TolerancePolicy& tol) {
    if (points.empty()) throw InputError("min_enclosing_spherical_ball: empty point set");
    std::vector<Eigen::VectorXd> coords;
    coords.reserve(points.size());
    for (const auto& p : points) {
        if (p.tag != Geometry::Spherical)
            throw InputError("min_enclosing_spherical_ball: spherical points required");
        coords.push_back(p.coords);
    }

    const MinNormPoint proj = min_norm_point_in_hull(coords);
    const double dist = proj.point.norm();
    if (dist <= tol.eq_zero)
        throw BallTooLarge("min_enclosing_spherical_ball: no enclosing ball of radius < pi/2");

    MinBallResult result;
    result.ball.center = ModelPoint::spherical(proj.point / dist);
    result.ball.radius = std::acos(clamp_unit(dist));
    if (result.ball.radius >= kPi / 2.0 - tol.eq_zero)
        throw BallTooLarge("min_enclosing_spherical_ball: radius reaches pi/2");

    for (size_t i = 0; i < points.size(); ++i) {
        if (distance(points[i], result.ball.center) >= result.ball.radius - 1e-8)
            result.support.push_back(static_cast<int>(i));
    }

    // Optimality certificate: the tangent directions of the support points at
    // the center must not fit in an open hemisphere.
    if (result.support.size() >= 2 && result.ball.radius > 1e-10) {
        const Eigen::VectorXd& c = result.ball.center.coords;
        std::vector<Eigen::VectorXd> tangent;
        for (int i : result.support) {
            Eigen::VectorXd t = coords[i] - coords[i].dot(c) * c;
            const double n = t.norm();
            if (n > 1e-12) tangent.push_back(t / n);
        }
        if (!tangent.empty() && hemisphere_witness(tangent, HemisphereMode::Open, tol))
            throw NumericalFailure("min_enclosing_spherical_ball: support fails optimality certificate");
    }
    return result;
}

}  // namespace simplexorder
