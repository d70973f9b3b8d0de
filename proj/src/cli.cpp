#include "simplexorder/cli.hpp"

#include "simplexorder/json_io.hpp"
#include "simplexorder/random_gen.hpp"
#include "simplexorder/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace simplexorder {

namespace {

std::string read_spec_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<int> parse_dims(const std::string& text) {
    const auto dots = text.find("..");
    std::vector<int> dims;
    if (dots == std::string::npos) {
        dims.push_back(std::stoi(text));
    } else {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw InputError("dims: empty range " + text);
        for (int d = lo; d <= hi; ++d) dims.push_back(d);
    }
    for (int d : dims)
        if (d < 2 || d > kMaxDim) throw InputError("dims: values must be in [2,7]");
    return dims;
}

nlohmann::json classify_json(const GramMatrix& g, const TolerancePolicy& tol) {
    const GramClass c = classify_gram(g.matrix, tol);
    const MatrixDiagnostics d = gram_diagnostics(g.matrix, tol);
    nlohmann::json j;
    if (const NotAGram* bad = std::get_if<NotAGram>(&c)) {
        j["class"] = "not_a_gram";
        j["reason"] = bad->reason;
    } else {
        j["class"] = to_string(std::get<Geometry>(c));
    }
    j["det"] = d.det;
    j["min_cofactor"] = d.cofactors.minCoeff();
    return j;
}

Geometry parse_geometry(const std::string& name) {
    if (name == "spherical") return Geometry::Spherical;
    if (name == "euclidean") return Geometry::Euclidean;
    if (name == "hyperbolic") return Geometry::Hyperbolic;
    throw InputError("geometry: unknown value \"" + name + "\"");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dihedral-angle comparison of geodesic simplexes"};
    app.require_subcommand(1);

    std::string spec_path, spec_path_b, which, geometry_name = "euclidean", dims_text = "2..5";
    double t_request = 0.2;
    int trials = 50, dim = 2;
    std::uint64_t seed = 42;
    bool parallel = false;

    auto* classify = app.add_subcommand("classify", "classify a Gram matrix or simplex");
    classify->add_option("spec", spec_path)->required();
    auto* angles = app.add_subcommand("angles", "dihedral angle table");
    angles->add_option("spec", spec_path)->required();
    auto* dual = app.add_subcommand("dual", "spherical dual simplex");
    dual->add_option("spec", spec_path)->required();
    auto* construct = app.add_subcommand("construct", "run one of the constructions m1|m2|m3");
    construct->add_option("which", which)->required()->check(CLI::IsMember({"m1", "m2", "m3"}));
    construct->add_option("spec", spec_path)->required();
    construct->add_option("--t", t_request, "path parameter for m3");
    auto* cmp = app.add_subcommand("compare", "compare two dihedral-angle tables");
    cmp->add_option("specA", spec_path)->required();
    cmp->add_option("specB", spec_path_b)->required();
    auto* random = app.add_subcommand("random", "sample a random simplex");
    random->add_option("--geometry", geometry_name)->required();
    random->add_option("--dim", dim)->required();
    random->add_option("--seed", seed)->required();
    auto* verify = app.add_subcommand("verify", "run the built-in comparison check suites");
    verify->add_option("--trials", trials);
    verify->add_option("--dims", dims_text);
    verify->add_option("--seed", seed);
    verify->add_flag("--parallel", parallel);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 1;
    }

    const TolerancePolicy tol = TolerancePolicy::from_env();
    try {
        if (classify->parsed()) {
            const ParsedSpec spec = parse_simplex_spec(read_spec_text(spec_path), tol);
            out << classify_json(to_gram(spec, tol), tol).dump() << "\n";
        } else if (angles->parsed()) {
            const ParsedSpec spec = parse_simplex_spec(read_spec_text(spec_path), tol);
            out << nlohmann::json{{"angles", angles_to_json(dihedral_angles(to_gram(spec, tol)))}}
                       .dump()
                << "\n";
        } else if (dual->parsed()) {
            const ParsedSpec spec = parse_simplex_spec(read_spec_text(spec_path), tol);
            out << simplex_to_json(spherical_dual(to_simplex(spec, tol), tol)).dump() << "\n";
        } else if (construct->parsed()) {
            const ParsedSpec spec = parse_simplex_spec(read_spec_text(spec_path), tol);
            const Simplex s = to_simplex(spec, tol);
            nlohmann::json j;
            if (which == "m1") {
                const M1Result r = m1_euclidean_from_spherical(s, tol);
                j["euclidean"] = simplex_to_json(r.euclidean);
                j["xi"] = angles_to_json(r.xi);
                j["chain"] = dual_chain_to_json(r.chain);
            } else if (which == "m2") {
                const M2Result r = m2_euclidean_from_hyperbolic(s, tol);
                j["euclidean"] = simplex_to_json(r.euclidean);
                j["xi"] = angles_to_json(r.xi);
                j["eta"] = angles_to_json(r.eta);
                nlohmann::json balance = nlohmann::json::array();
                for (int i = 0; i < r.insphere.balance.size(); ++i)
                    balance.push_back(r.insphere.balance(i));
                j["insphere"] = {{"inradius", r.insphere.inradius}, {"balance", balance}};
            } else {
                const BracketResult r = m3_bracket(s, t_request, tol);
                j["t_hyp"] = r.t_hyp;
                j["t_sph"] = r.t_sph;
                j["gram_hyp"] = matrix_to_json(r.gram_hyp.matrix.mat());
                j["gram_sph"] = matrix_to_json(r.gram_sph.matrix.mat());
                j["angles_hyp"] = angles_to_json(dihedral_angles(r.gram_hyp));
                j["angles_sph"] = angles_to_json(dihedral_angles(r.gram_sph));
            }
            out << j.dump() << "\n";
        } else if (cmp->parsed()) {
            const ParsedSpec a = parse_simplex_spec(read_spec_text(spec_path), tol);
            const ParsedSpec b = parse_simplex_spec(read_spec_text(spec_path_b), tol);
            const OrderRelation rel =
                compare(dihedral_angles(to_gram(a, tol)), dihedral_angles(to_gram(b, tol)), tol);
            out << nlohmann::json{{"order", to_string(rel.order)},
                                  {"margins", matrix_to_json(rel.margins)}}
                       .dump()
                << "\n";
        } else if (random->parsed()) {
            SimplexSampler sampler(seed);
            out << simplex_to_json(sampler.sample(parse_geometry(geometry_name), dim)).dump()
                << "\n";
        } else if (verify->parsed()) {
            const VerificationReport report =
                run_verification(trials, parse_dims(dims_text), seed, tol, parallel);
            out << report_to_json(report).dump(2) << "\n";
            return report.all_passed ? 0 : 2;
        }
        return 0;
    } catch (const InputError& e) {
        err << nlohmann::json{{"error", {{"type", "input"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    } catch (const DegenerateSimplex& e) {
        err << nlohmann::json{{"error", {{"type", "degenerate_simplex"}, {"message", e.what()}}}}
                   .dump()
            << "\n";
        return 1;
    } catch (const DegenerateRay& e) {
        err << nlohmann::json{{"error", {{"type", "degenerate_ray"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 1;
    } catch (const PreconditionViolated& e) {
        err << nlohmann::json{{"error", {{"type", "precondition"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 1;
    } catch (const BallTooLarge& e) {
        err << nlohmann::json{{"error", {{"type", "ball_too_large"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 1;
    } catch (const SingularSystem& e) {
        err << nlohmann::json{{"error",
                               {{"type", "singular_system"},
                                {"message", e.what()},
                                {"smallest_singular_value", e.smallest_singular_value}}}}
                   .dump()
            << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", {{"type", "numerical"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 2;
    }
}

}  // namespace simplexorder
