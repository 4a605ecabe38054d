#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnet/comparison.hpp"
#include "rnet/network.hpp"

namespace rnet::io {

/// Input-file problem: malformed JSON, missing/unknown fields, bad values.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline json parse_json(std::istream& in, const std::string& what) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(what + ": top level must be an object");
    return j;
}

inline void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed) ok = ok || it.key() == k;
        if (!ok) throw ParseError("unknown field \"" + it.key() + "\" in " + where);
    }
}

inline std::vector<std::string> read_vertices(const json& j) {
    if (!j.contains("vertices")) throw ParseError("missing field \"vertices\"");
    const json& v = j["vertices"];
    if (!v.is_array()) throw ParseError("field \"vertices\" must be an array of strings");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_string()) throw ParseError("field \"vertices\" must contain only strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::string read_origin(const json& j) {
    if (!j.contains("origin")) throw ParseError("missing field \"origin\"");
    const json& o = j["origin"];
    if (!o.is_string()) throw ParseError("field \"origin\" must be a string");
    return o.get<std::string>();
}

inline std::vector<EdgeEntry> read_edges(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field \"" + field + "\"");
    const json& arr = j[field];
    if (!arr.is_array()) throw ParseError("field \"" + field + "\" must be an array");
    std::vector<EdgeEntry> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_object())
            throw ParseError("entries of \"" + field + "\" must be objects {u, v, c}");
        reject_unknown(e, {"u", "v", "c"}, "\"" + field + "\" entry");
        for (const char* k : {"u", "v"}) {
            if (!e.contains(k) || !e[k].is_string())
                throw ParseError("edge field \"" + std::string(k) + "\" must be a string");
        }
        if (!e.contains("c") || !e["c"].is_number())
            throw ParseError("edge field \"c\" must be a number");
        double c = e["c"].get<double>();
        if (!(c > 0.0)) throw ParseError("edge field \"c\" must be > 0");
        out.push_back({e["u"].get<std::string>(), e["v"].get<std::string>(), c});
    }
    return out;
}

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out + "\"";
}

inline std::string number17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_edge_array(std::ostream& out, const Network& net, const std::string& field) {
    out << "  " << quote(field) << ": [";
    bool first = true;
    for (const auto& [key, w] : net.edges()) {
        if (!first) out << ",";
        first = false;
        out << "\n    {\"u\": " << quote(net.name(key.first))
            << ", \"v\": " << quote(net.name(key.second)) << ", \"c\": " << number17(w) << "}";
    }
    out << (first ? "]" : "\n  ]");
}

inline void write_header(std::ostream& out, const Network& net) {
    out << "{\n  \"vertices\": [";
    for (int i = 0; i < net.size(); ++i) {
        if (i) out << ", ";
        out << quote(net.name(i));
    }
    out << "],\n  \"origin\": " << quote(net.origin_name()) << ",\n";
}

}  // namespace detail

struct RawNetwork {
    std::vector<std::string> vertices;
    std::vector<EdgeEntry> edges;
    std::string origin;
};

/// Parses a network file without constructing (so invariant violations can be
/// reported as data rather than exceptions).
inline RawNetwork read_raw_network(std::istream& in) {
    auto j = detail::parse_json(in, "network file");
    detail::reject_unknown(j, {"vertices", "origin", "edges"}, "network file");
    return {detail::read_vertices(j), detail::read_edges(j, "edges"), detail::read_origin(j)};
}

inline NetworkPtr read_network(std::istream& in) {
    RawNetwork raw = read_raw_network(in);
    auto violations = validate(raw.vertices, raw.edges, raw.origin);
    if (!violations.empty()) {
        std::string msg = "invalid network:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw ParseError(msg);
    }
    return make_network(std::move(raw.vertices), raw.edges, raw.origin);
}

inline NetworkPtr read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    return read_network(in);
}

/// Writes the network file format: vertices, origin, edges with conductances
/// printed to 17 significant digits so a round trip is bit-exact.
inline void write_network(std::ostream& out, const Network& net) {
    detail::write_header(out, net);
    detail::write_edge_array(out, net, "edges");
    out << "\n}\n";
}

inline void write_network_file(const std::string& path, const Network& net) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
    write_network(out, net);
}

/// Pair file: shared vertices/origin with separate b_edges and c_edges.
inline ConductancePair read_pair(std::istream& in) {
    auto j = detail::parse_json(in, "pair file");
    detail::reject_unknown(j, {"vertices", "origin", "b_edges", "c_edges"}, "pair file");
    auto vertices = detail::read_vertices(j);
    auto origin = detail::read_origin(j);
    auto b_edges = detail::read_edges(j, "b_edges");
    auto c_edges = detail::read_edges(j, "c_edges");
    return make_conductance_pair(std::move(vertices), b_edges, c_edges, origin);
}

inline ConductancePair read_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    return read_pair(in);
}

inline void write_pair(std::ostream& out, const ConductancePair& pair) {
    detail::write_header(out, *pair.c);
    detail::write_edge_array(out, *pair.b, "b_edges");
    out << ",\n";
    detail::write_edge_array(out, *pair.c, "c_edges");
    out << "\n}\n";
}

inline void write_pair_file(const std::string& path, const ConductancePair& pair) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
    write_pair(out, pair);
}

}  // namespace rnet::io
