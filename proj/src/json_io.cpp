#include "simplexorder/json_io.hpp"

namespace simplexorder {

namespace {

Eigen::MatrixXd parse_matrix(const nlohmann::json& rows, const std::string& path) {
    if (!rows.is_array() || rows.empty())
        throw InputError(path + ": expected a non-empty array of rows");
    const size_t cols = rows[0].is_array() ? rows[0].size() : 0;
    if (cols == 0) throw InputError(path + "[0]: expected a non-empty row");
    Eigen::MatrixXd m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols)
            throw InputError(rp + ": row length mismatch");
        for (size_t j = 0; j < cols; ++j) {
            if (!row[j].is_number())
                throw InputError(rp + "[" + std::to_string(j) + "]: expected a number");
            m(static_cast<int>(i), static_cast<int>(j)) = row[j].get<double>();
        }
    }
    return m;
}

}  // namespace

ParsedSpec parse_simplex_spec(const nlohmann::json& spec, const TolerancePolicy& tol) {
    if (!spec.is_object()) throw InputError("spec: expected a JSON object");

    if (spec.contains("gram")) {
        try {
            return GramMatrix(SymmetricMatrix(parse_matrix(spec["gram"], "gram")));
        } catch (const InputError& e) {
            throw InputError(std::string("gram: ") + e.what());
        }
    }

    if (!spec.contains("geometry")) throw InputError("spec: missing \"geometry\" or \"gram\"");
    const std::string geom = spec["geometry"].get<std::string>();
    Geometry tag;
    if (geom == "spherical") tag = Geometry::Spherical;
    else if (geom == "euclidean") tag = Geometry::Euclidean;
    else if (geom == "hyperbolic") tag = Geometry::Hyperbolic;
    else throw InputError("geometry: unknown value \"" + geom + "\"");

    std::string model = "hyperboloid";
    if (spec.contains("model")) model = spec["model"].get<std::string>();
    if (model != "hyperboloid" && model != "poincare")
        throw InputError("model: expected \"hyperboloid\" or \"poincare\"");

    if (!spec.contains("vertices")) throw InputError("spec: missing \"vertices\"");
    const Eigen::MatrixXd coords = parse_matrix(spec["vertices"], "vertices");

    std::vector<ModelPoint> vertices;
    vertices.reserve(coords.rows());
    for (int i = 0; i < coords.rows(); ++i) {
        const std::string path = "vertices[" + std::to_string(i) + "]";
        const Eigen::VectorXd v = coords.row(i).transpose();
        try {
            switch (tag) {
                case Geometry::Spherical: vertices.push_back(ModelPoint::spherical(v)); break;
                case Geometry::Euclidean: vertices.push_back(ModelPoint::euclidean(v)); break;
                case Geometry::Hyperbolic:
                    vertices.push_back(model == "poincare" ? poincare_to_hyperboloid(v)
                                                           : ModelPoint::hyperboloid(v));
                    break;
            }
        } catch (const InputError& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    try {
        return Simplex(tag, std::move(vertices), tol);
    } catch (const std::runtime_error& e) {
        throw InputError(std::string("vertices: ") + e.what());
    }
}

ParsedSpec parse_simplex_spec(const std::string& text, const TolerancePolicy& tol) {
    nlohmann::json spec;
    try {
        spec = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("spec: invalid JSON: ") + e.what());
    }
    return parse_simplex_spec(spec, tol);
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json simplex_to_json(const Simplex& s) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : s.vertices()) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < v.coords.size(); ++i) row.push_back(v.coords(i));
        vertices.push_back(row);
    }
    return {{"geometry", to_string(s.tag())}, {"vertices", vertices}};
}

nlohmann::json angles_to_json(const DihedralAngles& a) { return matrix_to_json(a.angles); }

nlohmann::json dual_chain_to_json(const DualChain& c) {
    nlohmann::json j;
    j["dual"] = simplex_to_json(c.dual);
    j["ball"] = {{"center", matrix_to_json(c.ball.center.coords.transpose())[0]},
                 {"radius", c.ball.radius}};
    j["boundary_count"] = c.boundary_count;
    j["t_hat"] = c.t_hat;
    nlohmann::json extended = nlohmann::json::array();
    for (const auto& u : c.extended) extended.push_back(matrix_to_json(u.transpose())[0]);
    j["extended"] = extended;
    if (c.face_dim) j["face_dim"] = *c.face_dim;
    if (c.delta) j["delta"] = *c.delta;
    nlohmann::json perturbed = nlohmann::json::array();
    for (const auto& w : c.perturbed) perturbed.push_back(matrix_to_json(w.transpose())[0]);
    j["perturbed"] = perturbed;
    if (c.coefficients.size() > 0) {
        nlohmann::json b = nlohmann::json::array();
        for (int i = 0; i < c.coefficients.size(); ++i) b.push_back(c.coefficients(i));
        j["coefficients"] = b;
    }
    return j;
}

Simplex to_simplex(const ParsedSpec& spec, const TolerancePolicy& tol) {
    if (const Simplex* s = std::get_if<Simplex>(&spec)) return *s;
    return realize(std::get<GramMatrix>(spec).matrix, tol);
}

GramMatrix to_gram(const ParsedSpec& spec, const TolerancePolicy& tol) {
    if (const GramMatrix* g = std::get_if<GramMatrix>(&spec)) return *g;
    return gram_of(std::get<Simplex>(spec), tol);
}

}  // namespace simplexorder
