#include "bellpoly/io.hpp"

#include "bellpoly/nosignal.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace bellpoly {

namespace fs = std::filesystem;

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const RVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(q.str());
    return out;
}

Json to_json(const Scenario& s) { return Json::array({s.nx, s.ny, s.na, s.nb}); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw FormatError("bad rational \"" + j.get<std::string>() + "\": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw FormatError("expected a rational string or integer, got " + j.dump());
}

RVector rvector_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("expected an array of rationals");
    RVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational_from_json(j[i]);
    return v;
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw FormatError("scenario must be [nx, ny, na, nb]");
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw FormatError("scenario entries must be integers");
    }
    try {
        return Scenario::make(j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

ReducedPoint point_from_json(const Json& j) {
    const Scenario s = scenario_from_json(field(j, "scenario"));
    const std::string basis = j.contains("basis") ? field(j, "basis").get<std::string>() : "reduced";
    RVector coords = rvector_from_json(field(j, "coords"));
    if (basis == "reduced") {
        if (coords.size() != s.dimension()) {
            throw FormatError("reduced point needs " + std::to_string(s.dimension()) + " coordinates, got " +
                              std::to_string(coords.size()));
        }
        return ReducedPoint(s, std::move(coords));
    }
    if (basis == "full") {
        if (coords.size() != s.full_size()) {
            throw FormatError("full point needs " + std::to_string(s.full_size()) + " cells, got " +
                              std::to_string(coords.size()));
        }
        FullPoint full(s);
        full.probs = coords.values();
        try {
            return to_reduced(full);
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    throw FormatError("basis must be \"reduced\" or \"full\", got \"" + basis + "\"");
}

Json point_to_json(const ReducedPoint& p) {
    Json j;
    j["scenario"] = to_json(p.scenario);
    j["basis"] = "reduced";
    j["coords"] = to_json(p.coords);
    return j;
}

VPolytope polytope_from_json(const Json& j) {
    VPolytope v;
    v.scenario = scenario_from_json(field(j, "scenario"));
    try {
        v.label = parse_label(field(j, "label").get<std::string>());
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
    const Json& verts = field(j, "vertices");
    if (!verts.is_array()) throw FormatError("vertices must be an array");
    v.vertices.reserve(verts.size());
    for (const auto& row : verts) {
        RVector r = rvector_from_json(row);
        if (r.size() != v.scenario.dimension()) throw FormatError("vertex has the wrong dimension");
        v.vertices.push_back(std::move(r));
    }
    return v;
}

Json polytope_to_json(const VPolytope& v) {
    Json j;
    j["scenario"] = to_json(v.scenario);
    j["label"] = std::string(to_string(v.label));
    Json verts = Json::array();
    for (const auto& r : v.vertices) verts.push_back(to_json(r));
    j["vertices"] = std::move(verts);
    return j;
}

Json distance_to_json(const DistanceResult& d) {
    Json j;
    j["status"] = "optimal";
    j["distance"] = to_json(d.distance);
    j["witness"] = to_json(d.witness);
    j["weights"] = to_json(d.weights);
    return j;
}

Json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path PolytopeCache::path_for(const Scenario& s, PolytopeLabel label) const {
    std::ostringstream name;
    name << to_string(label) << '_' << s.nx << '_' << s.ny << '_' << s.na << '_' << s.nb << "_h" << kNsHrepVersion
         << ".json";
    return dir_ / name.str();
}

std::optional<VPolytope> PolytopeCache::load(const Scenario& s, PolytopeLabel label) const {
    const fs::path p = path_for(s, label);
    if (!fs::exists(p)) return std::nullopt;
    VPolytope v = polytope_from_json(read_json_file(p));
    if (v.scenario != s || v.label != label) throw FormatError("cache entry " + p.string() + " does not match its key");
    return v;
}

void PolytopeCache::store(const VPolytope& v) const {
    fs::create_directories(dir_);
    write_file_atomic(path_for(v.scenario, v.label), polytope_to_json(v).dump() + "\n");
}

VPolytope cached_ns_polytope(const Scenario& s, const PolytopeCache* cache) {
    if (cache) {
        if (auto hit = cache->load(s, PolytopeLabel::nosignaling)) return *std::move(hit);
    }
    VPolytope v = ns_polytope(s);
    if (cache) cache->store(v);
    return v;
}

}  // namespace bellpoly
