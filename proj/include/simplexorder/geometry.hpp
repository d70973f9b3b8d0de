#pragma once

#include "simplexorder/numeric.hpp"

#include <vector>

namespace simplexorder {

enum class Geometry { Spherical, Euclidean, Hyperbolic };

const char* to_string(Geometry g);

// Minkowski form diag(+,...,+,-) on the last coordinate.
double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// A point of S^n (unit vector in E^{n+1}), E^n, or H^n (upper hyperboloid
// sheet: <x,x>_M = -1, x_last > 0).
struct ModelPoint {
    Geometry tag;
    Eigen::VectorXd coords;

    int dim() const;  // the n of S^n / E^n / H^n

    static ModelPoint spherical(const Eigen::VectorXd& v);
    static ModelPoint euclidean(const Eigen::VectorXd& v);
    static ModelPoint hyperboloid(const Eigen::VectorXd& v);

    double normalization_residual() const;
};

double distance(const ModelPoint& p, const ModelPoint& q);

// Linear isometry of the ambient model space (rotation for S^n, Lorentz
// transform for H^n).
struct Isometry {
    Geometry tag;
    Eigen::MatrixXd matrix;

    ModelPoint apply(const ModelPoint& p) const;
    Eigen::VectorXd apply_vector(const Eigen::VectorXd& v) const { return matrix * v; }
    Isometry compose(const Isometry& inner) const;
};

// S^n: rotation taking p to (0,...,0,-1).  H^n: boost taking p to (0,...,0,1).
Isometry translate_to_basepoint(const ModelPoint& p);

Eigen::VectorXd hyperboloid_to_poincare(const ModelPoint& p);
ModelPoint poincare_to_hyperboloid(const Eigen::VectorXd& y);

// Point at angle d(s,v)+t from s on the great circle through s and v.
ModelPoint spherical_ray_extend(const ModelPoint& s, const ModelPoint& v, double t);

// Spherical cosine law: side z opposite the angle c between sides x and y.
double spherical_third_side(double x, double y, double c);

// z'(t) = g (1-cos c) sin(x+y) / sin z for the equal-rate side extension.
double extension_growth_rate(double x, double y, double c, double g);

struct SphericalBall {
    ModelPoint center;
    double radius = 0.0;  // radians, in [0, pi/2)
};

struct MinBallResult {
    SphericalBall ball;
    std::vector<int> support;  // points at distance radius (within 1e-8)
};

// Smallest spherical ball containing the points; exact via the convex dual
// max_{|c|=1} min_i <c,p_i> = dist(0, conv hull).  Certifies that the support
// set admits no open-hemisphere witness in the tangent space at the center.
MinBallResult min_enclosing_spherical_ball(const std::vector<ModelPoint>& points,
                                           const TolerancePolicy& tol = {});

}  // namespace simplexorder
