#pragma once

#include "simplexorder/simplex.hpp"

#include <cstdint>
#include <random>

namespace simplexorder {

// Seeded, reproducible rejection sampler for nondegenerate simplexes with
// dihedral angles inside (0.05, pi - 0.05).
class SimplexSampler {
public:
    explicit SimplexSampler(std::uint64_t seed) : rng_(seed) {}

    Simplex sample(Geometry geometry, int dim);

    // Spherical simplex whose dual's min-ball center lies on the boundary of
    // the dual (smallest cone coordinate below `threshold`).
    Simplex sample_boundary_center(int dim, double threshold = 1e-3);

    std::mt19937_64& rng() { return rng_; }

private:
    Simplex sample_once(Geometry geometry, int dim);
    Eigen::VectorXd gaussian(int k);

    std::mt19937_64 rng_;
};

}  // namespace simplexorder
