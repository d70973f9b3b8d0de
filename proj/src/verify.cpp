#include "simplexorder/verify.hpp"

#include "simplexorder/comparisons.hpp"
#include "simplexorder/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace simplexorder {

namespace {

struct TrialOutcome {
    bool pass = false;
    double margin = 0.0;
    double residual = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t dim,
                       std::uint64_t trial) {
    std::uint64_t x = seed ^ (suite * 0x9e3779b97f4a7c15ULL) ^ (dim * 0xbf58476d1ce4e5b9ULL) ^
                      (trial * 0x94d049bb133111ebULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

double min_offdiag_margin(const Eigen::MatrixXd& margins) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < margins.rows(); ++i)
        for (int j = 0; j < margins.cols(); ++j)
            if (i != j) m = std::min(m, margins(i, j));
    return m;
}

TrialOutcome trial_m1(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    SimplexSampler sampler(seed);
    const Simplex s = sampler.sample(Geometry::Spherical, dim);
    const DihedralAngles sigma = dihedral_angles(gram_of(s, tol));
    const M1Result r = m1_euclidean_from_spherical(s, tol);

    TrialOutcome out;
    out.margin = min_offdiag_margin(sigma.angles - r.xi.angles);
    Eigen::VectorXd balance = Eigen::VectorXd::Zero(dim + 1);
    for (int i = 0; i <= dim; ++i)
        balance += r.chain.coefficients(i) * r.chain.perturbed[i];
    out.residual = balance.cwiseAbs().maxCoeff();
    out.pass = out.margin > tol.angle_eps && out.residual < 1e-9;
    return out;
}

TrialOutcome trial_m2(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    SimplexSampler sampler(seed);
    const Simplex h = sampler.sample(Geometry::Hyperbolic, dim);
    const M2Result r = m2_euclidean_from_hyperbolic(h, tol);

    TrialOutcome out;
    out.margin = min_offdiag_margin(r.xi.angles - r.eta.angles);

    const FacetNormals fn = facet_normals(h, tol);
    double facet_residual = 0.0;
    for (const auto& n : fn.normals) {
        const double d = std::asinh(minkowski_dot(r.insphere.center.coords, n));
        facet_residual = std::max(facet_residual, std::abs(d - r.insphere.inradius));
    }
    Eigen::VectorXd balance = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i <= dim; ++i)
        balance += r.insphere.balance(i) * r.insphere.tangency_dirs[i];
    out.residual = std::max(facet_residual, balance.cwiseAbs().maxCoeff());
    out.pass = out.margin > tol.angle_eps && facet_residual < 1e-9 &&
               balance.cwiseAbs().maxCoeff() < 1e-10 && r.insphere.balance.minCoeff() > 0.0;
    return out;
}

TrialOutcome trial_m3(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    SimplexSampler sampler(seed);
    const Simplex e = sampler.sample(Geometry::Euclidean, dim);
    const DihedralAngles ze = dihedral_angles(gram_of(e, tol));
    const BracketResult r = m3_bracket(e, 0.2, tol);

    const OrderRelation lo = compare(dihedral_angles(r.gram_hyp), ze, tol);
    const OrderRelation hi = compare(ze, dihedral_angles(r.gram_sph), tol);
    TrialOutcome out;
    out.margin = std::min(min_offdiag_margin(lo.margins), min_offdiag_margin(hi.margins));
    out.pass = lo.order == Order::StrictlyLess && hi.order == Order::StrictlyLess &&
               out.margin > 1e-10;
    return out;
}

TrialOutcome trial_m4(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    SimplexSampler sampler(seed);
    const Simplex e = sampler.sample(Geometry::Euclidean, dim);
    const GramMatrix g1 = gram_of(e, tol);

    std::uniform_real_distribution<double> bump(0.0, 0.05);
    Eigen::MatrixXd m2 = g1.matrix.mat();
    for (int i = 0; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) {
            const double raised = std::min(m2(i, j) + bump(sampler.rng()), 1.0 - 1e-6);
            m2(i, j) = m2(j, i) = raised;
        }
    const GramMatrix g2{SymmetricMatrix(m2)};
    const RigidityReport r = m4_rigidity_witness(g1, g2, tol);

    TrialOutcome out;
    out.pass = r.verdict == RigidityVerdict::Consistent;
    out.margin = out.pass ? 1.0 : -1.0;
    return out;
}

TrialOutcome run_trial(int suite, int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    try {
        switch (suite) {
            case 0: return trial_m1(dim, seed, tol);
            case 1: return trial_m2(dim, seed, tol);
            case 2: return trial_m3(dim, seed, tol);
            case 3: return trial_m4(dim, seed, tol);
        }
    } catch (const std::runtime_error&) {
    }
    return TrialOutcome{false, -1.0, std::numeric_limits<double>::infinity()};
}

}  // namespace

VerificationReport run_verification(int trials, const std::vector<int>& dims,
                                    std::uint64_t seed, const TolerancePolicy& tol,
                                    bool parallel) {
    if (trials < 1) throw InputError("run_verification: trials must be >= 1");
    for (int d : dims)
        if (d < 2 || d > kMaxDim) throw InputError("run_verification: dims must be in [2,7]");

    static const char* kSuiteNames[] = {"m1", "m2", "m3", "m4"};
    VerificationReport report;
    report.seed = seed;
    report.trials = trials;
    report.dims = dims;

    struct Task {
        int suite;
        int dim;
        std::uint64_t trial_seed;
    };
    std::vector<Task> tasks;
    for (int suite = 0; suite < 4; ++suite)
        for (int dim : dims)
            for (int t = 0; t < trials; ++t)
                tasks.push_back({suite, dim, mix_seed(seed, suite, dim, t)});

    std::vector<TrialOutcome> outcomes(tasks.size());
    if (parallel) {
        const size_t workers = std::max<size_t>(1, std::thread::hardware_concurrency());
        std::vector<std::future<void>> futures;
        for (size_t w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (size_t i = w; i < tasks.size(); i += workers)
                    outcomes[i] = run_trial(tasks[i].suite, tasks[i].dim, tasks[i].trial_seed, tol);
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (size_t i = 0; i < tasks.size(); ++i)
            outcomes[i] = run_trial(tasks[i].suite, tasks[i].dim, tasks[i].trial_seed, tol);
    }

    for (int suite = 0; suite < 4; ++suite) {
        SuiteReport& sr = report.suites[kSuiteNames[suite]];
        sr.min_margin = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].suite != suite) continue;
            ++sr.trials;
            const TrialOutcome& o = outcomes[i];
            if (o.pass) ++sr.passes;
            else sr.failed_seeds.push_back(tasks[i].trial_seed);
            sr.min_margin = std::min(sr.min_margin, o.margin);
            sr.worst_residual = std::max(sr.worst_residual, o.residual);
        }
    }
    report.all_passed = true;
    for (const auto& [name, sr] : report.suites)
        if (!sr.passed()) report.all_passed = false;
    return report;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["dims"] = report.dims;
    for (const auto& [name, sr] : report.suites) {
        nlohmann::json s;
        s["trials"] = sr.trials;
        s["passes"] = sr.passes;
        s["min_margin"] = sr.min_margin;
        s["worst_residual"] = sr.worst_residual;
        s["failed_seeds"] = sr.failed_seeds;
        j["suites"][name] = s;
    }
    j["all_passed"] = report.all_passed;
    return j;
}

}  // namespace simplexorder
