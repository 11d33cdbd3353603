#include "nbhd/scenario/io.hpp"

#include "nbhd/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nbhd::scenario {

namespace {

Json string_list(const std::vector<std::string>& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(x);
    return j;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + "." + key + ": missing");
    return *it;
}

long integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<long>();
}

std::size_t index_value(const Json& j, const std::string& where, std::size_t bound) {
    const long v = integer(j, where);
    if (v < 0 || static_cast<std::size_t>(v) >= bound) throw ParseError(where + ": index out of range");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a list of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ParseError(where + "[" + std::to_string(i) + "]: expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

std::vector<int> integers(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a list of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(static_cast<int>(integer(j[i], where + "[" + std::to_string(i) + "]")));
    }
    return out;
}

}  // namespace

Json to_json(const Scenario& s) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = s.name;
    j["description"] = s.description;
    j["dims"] = {{"p", s.p()}, {"q", s.q()}, {"e", s.e}};
    j["order"] = s.order;
    j["target_order"] = s.target_order;
    j["window"] = {{"radius", s.window.radius}};
    Json charts = Json::array();
    for (const auto& c : s.charts) {
        Json inv = Json::array();
        for (auto b : c.inverted) inv.push_back(b);
        charts.push_back({{"base", string_list(c.base_names)}, {"normal", string_list(c.normal_names)}, {"inverted", inv}});
    }
    j["charts"] = charts;
    Json trs = Json::array();
    for (const auto& [key, t] : s.transitions) {
        Json images = Json::array();
        for (const auto& f : t.images) images.push_back(exact::to_json(f));
        trs.push_back({{"from", key.first}, {"to", key.second}, {"images", images}});
    }
    j["transitions"] = trs;
    Json frames = Json::array();
    for (const auto& [key, g] : s.bundle_transitions) {
        frames.push_back({{"from", key.first}, {"to", key.second}, {"matrix", exact::to_json(g)}});
    }
    Json conns = Json::array();
    for (std::size_t i = 0; i < s.connections.size(); ++i) {
        Json gamma = Json::array();
        for (const auto& m : s.connections[i].gamma) gamma.push_back(exact::to_json(m));
        conns.push_back({{"chart", i}, {"flat", static_cast<bool>(s.flat.at(i))}, {"gamma", gamma}});
    }
    j["bundle"] = {{"transitions", frames}, {"connections", conns}};
    if (s.projective) {
        j["projective"] = {{"n", s.projective->n},
                           {"normal_twists", s.projective->normal_twists},
                           {"bundle_twists", s.projective->bundle_twists}};
    }
    return j;
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("document: expected an object");
    const long version = integer(field(j, "schema_version", "scenario"), "scenario.schema_version");
    if (version != kSchemaVersion) {
        throw SchemaVersionError("scenario.schema_version " + std::to_string(version) + " unsupported (expected " +
                                 std::to_string(kSchemaVersion) + ")");
    }
    Scenario s;
    const auto& name = field(j, "name", "scenario");
    if (!name.is_string()) throw ParseError("scenario.name: expected a string");
    s.name = name.get<std::string>();
    if (j.contains("description")) {
        if (!j["description"].is_string()) throw ParseError("scenario.description: expected a string");
        s.description = j["description"].get<std::string>();
    }
    const auto& dims = field(j, "dims", "scenario");
    const long p = integer(field(dims, "p", "dims"), "dims.p");
    const long q = integer(field(dims, "q", "dims"), "dims.q");
    const long e = integer(field(dims, "e", "dims"), "dims.e");
    if (p < 0 || q < 0 || e < 1) throw ParseError("dims: p, q must be >= 0 and e >= 1");
    const std::size_t nv = static_cast<std::size_t>(p + q);
    s.e = static_cast<std::size_t>(e);
    s.order = static_cast<int>(integer(field(j, "order", "scenario"), "scenario.order"));
    s.target_order = static_cast<int>(integer(field(j, "target_order", "scenario"), "scenario.target_order"));
    if (s.order < 0 || s.target_order < 0) throw ParseError("scenario.order: must be non-negative");
    s.window.radius = static_cast<int>(integer(field(field(j, "window", "scenario"), "radius", "window"), "window.radius"));
    if (s.window.radius < 0) throw ParseError("window.radius: must be non-negative");

    const auto& charts = field(j, "charts", "scenario");
    if (!charts.is_array() || charts.empty()) throw ParseError("charts: expected a non-empty list");
    for (std::size_t i = 0; i < charts.size(); ++i) {
        const std::string at = "charts[" + std::to_string(i) + "]";
        geom::ChartRing ring;
        ring.base_names = strings(field(charts[i], "base", at), at + ".base");
        ring.normal_names = strings(field(charts[i], "normal", at), at + ".normal");
        if (ring.p() != static_cast<std::size_t>(p) || ring.q() != static_cast<std::size_t>(q)) {
            throw ParseError(at + ": variable counts differ from dims");
        }
        const auto& inv = field(charts[i], "inverted", at);
        if (!inv.is_array()) throw ParseError(at + ".inverted: expected a list");
        for (std::size_t k = 0; k < inv.size(); ++k) {
            ring.inverted.push_back(index_value(inv[k], at + ".inverted[" + std::to_string(k) + "]", ring.p()));
        }
        s.charts.push_back(ring);
    }
    const std::size_t nc = s.charts.size();
    const auto& trs = field(j, "transitions", "scenario");
    if (!trs.is_array()) throw ParseError("transitions: expected a list");
    for (std::size_t k = 0; k < trs.size(); ++k) {
        const std::string at = "transitions[" + std::to_string(k) + "]";
        const std::size_t from = index_value(field(trs[k], "from", at), at + ".from", nc);
        const std::size_t to = index_value(field(trs[k], "to", at), at + ".to", nc);
        const auto& images = field(trs[k], "images", at);
        if (!images.is_array() || images.size() != nv) {
            throw ParseError(at + ".images: expected " + std::to_string(nv) + " polynomials");
        }
        geom::ChartTransition t;
        for (std::size_t y = 0; y < nv; ++y) {
            t.images.push_back(exact::poly_from_json(images[y], nv, at + ".images[" + std::to_string(y) + "]"));
        }
        if (!s.transitions.emplace(ChartPair{from, to}, t).second) throw ParseError(at + ": duplicate overlap");
    }
    const auto& bundle = field(j, "bundle", "scenario");
    const auto& frames = field(bundle, "transitions", "bundle");
    if (!frames.is_array()) throw ParseError("bundle.transitions: expected a list");
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const std::string at = "bundle.transitions[" + std::to_string(k) + "]";
        const std::size_t from = index_value(field(frames[k], "from", at), at + ".from", nc);
        const std::size_t to = index_value(field(frames[k], "to", at), at + ".to", nc);
        auto g = exact::matrix_from_json(field(frames[k], "matrix", at), nv, at + ".matrix");
        if (g.rows() != s.e || g.cols() != s.e) throw ParseError(at + ".matrix: expected e x e");
        if (!s.bundle_transitions.emplace(ChartPair{from, to}, g).second) throw ParseError(at + ": duplicate overlap");
    }
    const auto& conns = field(bundle, "connections", "bundle");
    if (!conns.is_array() || conns.size() != nc) throw ParseError("bundle.connections: expected one entry per chart");
    for (std::size_t i = 0; i < nc; ++i) {
        const std::string at = "bundle.connections[" + std::to_string(i) + "]";
        if (index_value(field(conns[i], "chart", at), at + ".chart", nc) != i) throw ParseError(at + ".chart: out of order");
        const auto& flat = field(conns[i], "flat", at);
        if (!flat.is_boolean()) throw ParseError(at + ".flat: expected a boolean");
        const auto& gamma = field(conns[i], "gamma", at);
        if (!gamma.is_array() || gamma.size() != static_cast<std::size_t>(p)) {
            throw ParseError(at + ".gamma: expected p matrices");
        }
        geom::Connection c;
        for (std::size_t b = 0; b < gamma.size(); ++b) {
            auto m = exact::matrix_from_json(gamma[b], nv, at + ".gamma[" + std::to_string(b) + "]");
            if (m.rows() != s.e || m.cols() != s.e) throw ParseError(at + ".gamma: expected e x e");
            c.gamma.push_back(m);
        }
        s.connections.push_back(c);
        s.flat.push_back(flat.get<bool>());
    }
    if (j.contains("projective")) {
        const auto& pj = j["projective"];
        ProjectiveData pd;
        pd.n = static_cast<std::size_t>(integer(field(pj, "n", "projective"), "projective.n"));
        pd.normal_twists = integers(field(pj, "normal_twists", "projective"), "projective.normal_twists");
        pd.bundle_twists = integers(field(pj, "bundle_twists", "projective"), "projective.bundle_twists");
        s.projective = pd;
    }
    return s;
}

std::string dump_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

Scenario parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot write");
    out << dump_scenario(s);
}

std::string scenario_hash(const Scenario& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : dump_scenario(s)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nbhd::scenario
