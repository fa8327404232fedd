#include "onlinecol/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace onlinecol::io {

using nlohmann::json;

void write_dimacs(const GraphData& g, std::ostream& os) {
    os << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (int v = 0; v < g.num_vertices(); ++v)
        for (VertexId u : g.neighbors(v))
            if (u > v) os << "e " << v + 1 << ' ' << u + 1 << '\n';
}

GraphData read_dimacs(std::istream& is) {
    std::string line;
    GraphData g;
    long long n = -1, m = -1, edges_seen = 0;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            if (n != -1) throw std::runtime_error("dimacs: second p line at line " + std::to_string(lineno));
            if (!(ss >> fmt >> n >> m) || (fmt != "edge" && fmt != "col") || n < 0 || m < 0)
                throw std::runtime_error("dimacs: malformed p line at line " + std::to_string(lineno));
            g = GraphData(static_cast<int>(n));
        } else if (tag == "e") {
            long long u, v;
            if (n == -1) throw std::runtime_error("dimacs: e line before p line");
            if (!(ss >> u >> v) || u < 1 || v < 1 || u > n || v > n || u == v)
                throw std::runtime_error("dimacs: bad edge at line " + std::to_string(lineno));
            ++edges_seen;
            if (!g.has_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1)))
                g.add_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
        } else {
            throw std::runtime_error("dimacs: unknown line tag '" + tag + "' at line " +
                                     std::to_string(lineno));
        }
    }
    if (n == -1) throw std::runtime_error("dimacs: missing p line");
    if (edges_seen < m) throw std::runtime_error("dimacs: fewer e lines than declared");
    return g;
}

GraphData read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_dimacs(in);
}

void write_dimacs_file(const GraphData& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_dimacs(g, out);
}

std::string instance_to_json(const OnlineInstance& inst, const Transcript* t) {
    json j;
    j["arrivals"] = json::array();
    for (const Arrival& a : inst.arrivals())
        j["arrivals"].push_back({{"v", a.vertex}, {"back", a.back_edges}});
    if (!inst.phase_ends().empty()) j["phases"] = inst.phase_ends();
    if (t && t->num_colored() > 0) {
        json steps = json::array();
        for (const auto& s : t->steps()) steps.push_back({s.vertex, s.color});
        j["steps"] = std::move(steps);
    }
    return j.dump();
}

ParsedInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("arrivals") || !j["arrivals"].is_array())
        throw std::runtime_error("instance json: missing arrivals array");
    ParsedInstance out;
    for (const auto& a : j["arrivals"]) {
        if (!a.is_object() || !a.contains("v"))
            throw std::runtime_error("instance json: malformed arrival");
        Arrival arr;
        arr.vertex = a["v"].get<VertexId>();
        if (a.contains("back")) arr.back_edges = a["back"].get<std::vector<VertexId>>();
        out.instance.push_arrival(std::move(arr));
    }
    if (j.contains("phases")) out.instance.set_phase_ends(j["phases"].get<std::vector<int>>());
    if (j.contains("steps")) {
        for (const auto& s : j["steps"]) {
            if (!s.is_array() || s.size() != 2)
                throw std::runtime_error("instance json: malformed step");
            out.transcript.record(s[0].get<VertexId>(), s[1].get<ColorId>());
        }
        out.has_transcript = true;
    }
    return out;
}

ParsedInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

void write_instance_file(const OnlineInstance& inst, const std::string& path, const Transcript* t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst, t) << '\n';
}

} // namespace onlinecol::io
