#include "rumkit/framework_io.hpp"

#include <json.hpp>

namespace rumkit {

namespace {

using json = nlohmann::ordered_json;

ExactScalar parse_scalar_checked(const json& j, long file_radicand, const std::string& where) {
    if (!j.is_string())
        throw ParseError(where + ": scalar literals must be strings");
    ExactScalar s;
    try {
        s = ExactScalar::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    const long r = s.effective_radicand();
    if (r != 0 && r != file_radicand)
        throw ParseError(where + ": literal uses sqrt(" + std::to_string(r) +
                         ") but the file declares radicand " + std::to_string(file_radicand));
    return s;
}

std::vector<ExactVec> parse_vector_list(const json& j, int dim, long radicand,
                                        const std::string& what) {
    if (!j.is_array() || j.empty())
        throw ParseError("'" + what + "' must be a nonempty array");
    std::vector<ExactVec> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        const std::string where = what + " " + std::to_string(i + 1);
        if (!row.is_array())
            throw ParseError(where + ": expected an array of scalar literals");
        if (static_cast<int>(row.size()) != dim)
            throw ParseError(where + ": expected " + std::to_string(dim) +
                             " coordinates, got " + std::to_string(row.size()));
        ExactVec v;
        v.reserve(row.size());
        for (size_t k = 0; k < row.size(); ++k)
            v.push_back(parse_scalar_checked(
                row[k], radicand, where + ", coordinate " + std::to_string(k + 1)));
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

CrystalFramework parse_framework(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("framework file must be a JSON object");

    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw ParseError("missing or non-integer 'dimension'");
    const int dim = j["dimension"].get<int>();

    long radicand = 0;
    if (j.contains("radicand")) {
        if (!j["radicand"].is_number_integer())
            throw ParseError("'radicand' must be an integer");
        radicand = j["radicand"].get<long>();
    }

    if (!j.contains("periods")) throw ParseError("missing 'periods'");
    if (!j.contains("vertices")) throw ParseError("missing 'vertices'");
    if (!j.contains("edges")) throw ParseError("missing 'edges'");

    Motif motif;
    motif.dimension = dim;
    motif.vertices = parse_vector_list(j["vertices"], dim, radicand, "vertex");
    std::vector<ExactVec> periods = parse_vector_list(j["periods"], dim, radicand, "period");
    const size_t rank = periods.size();

    const json& edges = j["edges"];
    if (!edges.is_array() || edges.empty())
        throw ParseError("'edges' must be a nonempty array");
    motif.edges.reserve(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        const std::string where = "edge " + std::to_string(i + 1);
        if (!e.is_object()) throw ParseError(where + ": expected an object");
        for (const char* field : {"kappa", "tau"})
            if (!e.contains(field) || !e[field].is_number_integer())
                throw ParseError(where + ": missing or non-integer '" + field + "'");
        if (!e.contains("delta") || !e["delta"].is_array())
            throw ParseError(where + ": missing 'delta' array");
        if (e["delta"].size() != rank)
            throw ParseError(where + ": 'delta' must have " + std::to_string(rank) +
                             " components (one per period vector)");
        EdgeSpec spec;
        spec.kappa = e["kappa"].get<int>() - 1;
        spec.tau = e["tau"].get<int>() - 1;
        for (const json& d : e["delta"]) {
            if (!d.is_number_integer())
                throw ParseError(where + ": 'delta' components must be integers");
            spec.delta.push_back(d.get<int>());
        }
        motif.edges.push_back(std::move(spec));
    }

    try {
        return CrystalFramework::create(std::move(motif), TranslationGroup(std::move(periods)));
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid framework: ") + e.what());
    }
}

std::string serialize_framework(const CrystalFramework& fw) {
    json j;
    j["dimension"] = fw.dim();
    j["radicand"] = fw.framework_radicand();
    auto vec_list = [](const std::vector<ExactVec>& vs) {
        json arr = json::array();
        for (const auto& v : vs) {
            json row = json::array();
            for (const auto& c : v) row.push_back(c.to_string());
            arr.push_back(std::move(row));
        }
        return arr;
    };
    j["periods"] = vec_list(fw.translations().periods());
    j["vertices"] = vec_list(fw.motif().vertices);
    json edges = json::array();
    for (const EdgeSpec& e : fw.motif().edges) {
        json je;
        je["kappa"] = e.kappa + 1;
        je["tau"] = e.tau + 1;
        je["delta"] = e.delta;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

} // namespace rumkit
