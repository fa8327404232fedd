#include "onlinecol/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace onlinecol {

VertexId GraphData::add_vertex() {
    adj_.emplace_back();
    return static_cast<VertexId>(adj_.size()) - 1;
}

void GraphData::add_edge(VertexId u, VertexId v) {
    const int n = num_vertices();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("add_edge: endpoint out of range");
    if (u == v) throw std::invalid_argument("add_edge: self loop");
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) throw std::invalid_argument("add_edge: duplicate edge");
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++num_edges_;
}

bool GraphData::has_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    const auto& au = adj_[u];
    const auto& av = adj_[v];
    const auto& shorter = au.size() <= av.size() ? au : av;
    VertexId target = au.size() <= av.size() ? v : u;
    return std::binary_search(shorter.begin(), shorter.end(), target);
}

std::optional<std::string> GraphData::validate() const {
    const int n = num_vertices();
    std::size_t total = 0;
    for (int v = 0; v < n; ++v) {
        const auto& a = adj_[v];
        for (std::size_t i = 0; i < a.size(); ++i) {
            VertexId u = a[i];
            if (u < 0 || u >= n) return "neighbor id out of range at vertex " + std::to_string(v);
            if (u == v) return "self loop at vertex " + std::to_string(v);
            if (i > 0 && a[i - 1] >= u)
                return "adjacency of vertex " + std::to_string(v) + " not strictly sorted";
            if (!std::binary_search(adj_[u].begin(), adj_[u].end(), v))
                return "asymmetric edge {" + std::to_string(v) + "," + std::to_string(u) + "}";
        }
        total += a.size();
    }
    if (total != 2 * num_edges_) return "edge count out of sync with adjacency";
    return std::nullopt;
}

GraphData OnlineInstance::to_graph() const {
    GraphData g(num_steps());
    for (const Arrival& a : arrivals_)
        for (VertexId u : a.back_edges) g.add_edge(a.vertex, u);
    return g;
}

std::optional<std::string> validate_instance(const OnlineInstance& inst, const GraphData& g) {
    const int n = g.num_vertices();
    if (inst.num_steps() != n)
        return "arrival count " + std::to_string(inst.num_steps()) +
               " != vertex count " + std::to_string(n);
    std::vector<int> seen_at(n, -1);
    for (int t = 0; t < n; ++t) {
        VertexId v = inst.arrival(t).vertex;
        if (v < 0 || v >= n) return "arrival " + std::to_string(t) + " out of range";
        if (seen_at[v] >= 0) return "vertex " + std::to_string(v) + " presented twice";
        seen_at[v] = t;
    }
    std::size_t edges = 0;
    for (int t = 0; t < n; ++t) {
        const Arrival& a = inst.arrival(t);
        std::set<VertexId> uniq;
        for (VertexId u : a.back_edges) {
            if (u < 0 || u >= n) return "back edge out of range at step " + std::to_string(t);
            if (seen_at[u] >= t)
                return "forward edge {" + std::to_string(a.vertex) + "," + std::to_string(u) +
                       "} at step " + std::to_string(t);
            if (!uniq.insert(u).second)
                return "duplicate back edge at step " + std::to_string(t);
            if (!g.has_edge(a.vertex, u))
                return "edge {" + std::to_string(a.vertex) + "," + std::to_string(u) +
                       "} not in graph";
            ++edges;
        }
    }
    if (edges != g.num_edges())
        return "presentation covers " + std::to_string(edges) + " of " +
               std::to_string(g.num_edges()) + " edges";
    const auto& ends = inst.phase_ends();
    for (std::size_t j = 0; j < ends.size(); ++j) {
        int lo = j == 0 ? 0 : ends[j - 1];
        if (ends[j] < lo || ends[j] > n) return "phase boundary " + std::to_string(j) + " out of order";
    }
    if (!ends.empty() && ends.back() != n) return "phases do not cover all arrivals";
    return std::nullopt;
}

void Transcript::record(VertexId v, ColorId c) {
    if (v < 0) throw std::invalid_argument("record: negative vertex");
    if (c <= 0) throw std::invalid_argument("record: colors are positive");
    if (static_cast<std::size_t>(v) >= color_of_.size()) color_of_.resize(v + 1, 0);
    if (color_of_[v] != 0) throw std::invalid_argument("record: vertex already colored");
    color_of_[v] = c;
    steps_.push_back({v, c});
}

bool Transcript::is_colored(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < color_of_.size() && color_of_[v] != 0;
}

ColorId Transcript::color_of(VertexId v) const {
    return is_colored(v) ? color_of_[v] : 0;
}

std::set<ColorId> Transcript::colors_used(std::span<const VertexId> subset) const {
    std::set<ColorId> out;
    for (VertexId v : subset) {
        if (!is_colored(v))
            throw std::invalid_argument("colors_used: vertex " + std::to_string(v) + " uncolored");
        out.insert(color_of_[v]);
    }
    return out;
}

std::vector<VertexId> Transcript::colored_subset(std::span<const VertexId> subset) const {
    std::vector<VertexId> out;
    for (VertexId v : subset)
        if (is_colored(v)) out.push_back(v);
    return out;
}

int Transcript::num_colors_total() const {
    std::set<ColorId> distinct;
    for (const Step& s : steps_) distinct.insert(s.color);
    return static_cast<int>(distinct.size());
}

ColorId Transcript::max_color() const {
    ColorId m = 0;
    for (const Step& s : steps_) m = std::max(m, s.color);
    return m;
}

std::optional<std::string> validate_transcript(const Transcript& t, const GraphData& g) {
    const int n = g.num_vertices();
    if (t.num_colored() != n)
        return "colored " + std::to_string(t.num_colored()) + " of " + std::to_string(n) +
               " vertices";
    for (const auto& s : t.steps())
        if (s.vertex < 0 || s.vertex >= n)
            return "colored vertex " + std::to_string(s.vertex) + " not in graph";
    for (int v = 0; v < n; ++v)
        for (VertexId u : g.neighbors(v))
            if (u > v && t.color_of(u) == t.color_of(v))
                return "monochromatic edge {" + std::to_string(v) + "," + std::to_string(u) +
                       "} color " + std::to_string(t.color_of(v));
    return std::nullopt;
}

int CliqueForest::add_node(std::vector<VertexId> members) {
    nodes_.push_back(std::move(members));
    parent_.push_back(-1);
    return static_cast<int>(nodes_.size()) - 1;
}

void CliqueForest::set_parent(int node, int parent) {
    if (parent_[node] != -1) throw std::invalid_argument("set_parent: node already linked");
    if (node == parent) throw std::invalid_argument("set_parent: self link");
    parent_[node] = parent;
}

std::vector<std::pair<int, int>> CliqueForest::tree_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < num_nodes(); ++v)
        if (parent_[v] != -1) out.emplace_back(parent_[v], v);
    return out;
}

std::vector<VertexId> CliqueForest::root_vertices(std::span<const int> root_nodes) const {
    std::vector<VertexId> out;
    for (int node : root_nodes)
        out.insert(out.end(), nodes_[node].begin(), nodes_[node].end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> CliqueForest::audit(const GraphData& g, int half, bool allow_extended,
                                               std::span<const int> nodes) const {
    std::vector<int> scope(nodes.begin(), nodes.end());
    if (scope.empty()) {
        scope.resize(num_nodes());
        for (int i = 0; i < num_nodes(); ++i) scope[i] = i;
    }
    auto is_clique = [&](const std::vector<VertexId>& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (!g.has_edge(vs[i], vs[j])) return false;
        return true;
    };
    std::vector<char> in_scope(num_nodes(), 0);
    for (int node : scope) in_scope[node] = 1;
    std::vector<char> seen(g.num_vertices(), 0);
    for (int node : scope) {
        const auto& vs = nodes_[node];
        int sz = static_cast<int>(vs.size());
        if (sz != half && !(allow_extended && sz == half + 1))
            return "node " + std::to_string(node) + " has size " + std::to_string(sz);
        if (!is_clique(vs)) return "node " + std::to_string(node) + " is not a clique";
        for (VertexId v : vs) {
            if (v < 0 || v >= g.num_vertices())
                return "node " + std::to_string(node) + " references unknown vertex";
            if (seen[v]) return "vertex " + std::to_string(v) + " in two nodes";
            seen[v] = 1;
        }
    }
    // parent links acyclic within scope, and each forest edge induces a clique
    for (int node : scope) {
        int p = parent_[node];
        if (p == -1) continue;
        if (p < 0 || p >= num_nodes()) return "dangling parent of node " + std::to_string(node);
        if (in_scope[node] && in_scope[p]) {
            std::vector<VertexId> joint(nodes_[node]);
            joint.insert(joint.end(), nodes_[p].begin(), nodes_[p].end());
            if (!is_clique(joint))
                return "union of node " + std::to_string(node) + " and parent " +
                       std::to_string(p) + " is not a clique";
        }
        int slow = node, fast = node;
        do {
            slow = parent_[slow];
            fast = parent_[fast];
            if (fast != -1) fast = parent_[fast];
            if (fast != -1 && slow == fast) return "cycle in parent links";
        } while (fast != -1);
    }
    return std::nullopt;
}

} // namespace onlinecol
