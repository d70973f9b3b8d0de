#pragma once

#include "simplexorder/simplex.hpp"

#include <optional>

namespace simplexorder {

// A Euclidean simplex bracketed between a hyperbolic and a spherical one
// along the Gram path a_ij(t) = g_ij -+ t (2/3)(1 - g_ij^2).
struct BracketResult {
    double t_hyp = 0.0;
    double t_sph = 0.0;
    GramMatrix gram_hyp;
    GramMatrix gram_sph;
    Simplex simplex_hyp;
    Simplex simplex_sph;
};

struct InsphereData {
    ModelPoint center;
    double inradius = 0.0;
    std::vector<Eigen::VectorXd> tangency_dirs;  // unit vectors in E^n
    Eigen::VectorXd balance;                     // lambda_i > 0, sum = 1, sum lambda_i u_i = 0
};

// Trace of the spherical-to-Euclidean pipeline, everything expressed after
// the ball center has been moved to (0,...,0,-1).
struct DualChain {
    Simplex dual;                          // S*, centered
    SphericalBall ball;                    // B_s
    int boundary_count = 0;                // m
    double t_hat = 0.0;                    // extension arclength pi/2 - r
    std::vector<Eigen::VectorXd> extended;  // u_i in E^{n+1}
    std::optional<int> face_dim;           // ell (boundary-center case only)
    std::optional<double> delta;
    std::vector<Eigen::VectorXd> perturbed;  // unit w_i (empty until perturbed)
    Eigen::VectorXd coefficients;            // b_i > 0 with sum b_i w_i = 0
};

enum class RigidityVerdict { Consistent, TheoremViolationSuspected };

struct RigidityReport {
    bool premise_holds = false;  // both Euclidean and G1 <= G2 entrywise
    std::optional<std::pair<int, int>> strict_pair;
    double f_prime_at_1 = 0.0;
    RigidityVerdict verdict = RigidityVerdict::Consistent;
    std::string diagnostics;
};

struct M2Result {
    Simplex euclidean;
    DihedralAngles xi;   // Euclidean angles
    DihedralAngles eta;  // hyperbolic angles of the input
    InsphereData insphere;
};

struct M1Result {
    Simplex euclidean;
    DihedralAngles xi;
    DualChain chain;
};

BracketResult m3_bracket(const Simplex& euclid, double t_request,
                         const TolerancePolicy& tol = {});

RigidityReport m4_rigidity_witness(const GramMatrix& g1, const GramMatrix& g2,
                                   const TolerancePolicy& tol = {});

InsphereData hyperbolic_incenter(const Simplex& hyp, const TolerancePolicy& tol = {});

M2Result m2_euclidean_from_hyperbolic(const Simplex& hyp, const TolerancePolicy& tol = {});

// Partial chain through the extended points u_i; expects the ball center to
// already be at (0,...,0,-1).
DualChain extend_dual_to_equator(const Simplex& dual_centered, const MinBallResult& ball,
                                 const TolerancePolicy& tol = {});

// Completes w_i, delta, b_i (identity when the u_i already avoid every closed
// hemisphere of their span).
DualChain perturb_off_closed_hemisphere(DualChain chain, const TolerancePolicy& tol = {});

M1Result m1_euclidean_from_spherical(const Simplex& sph, const TolerancePolicy& tol = {});

// Support indices of the normalized cone coordinates of s within the dual's
// vertex basis; detects when the ball center sits on a proper face of the dual.
std::vector<int> barycentric_support(const Simplex& dual, const ModelPoint& s,
                                     double threshold = 1e-8);

}  // namespace simplexorder
