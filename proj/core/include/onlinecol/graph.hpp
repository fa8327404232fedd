#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace onlinecol {

using VertexId = int;
using ColorId = int; // proper colors are 1-based; 0 means "not colored yet"

// Simple undirected graph, adjacency lists kept sorted. Vertices are dense
// 0-based ids in insertion order.
class GraphData {
public:
    GraphData() = default;
    explicit GraphData(int n) : adj_(n) {}

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const { return num_edges_; }

    VertexId add_vertex();
    // Throws std::invalid_argument on self loops, duplicate edges and
    // out-of-range endpoints.
    void add_edge(VertexId u, VertexId v);
    bool has_edge(VertexId u, VertexId v) const;

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_[v].data(), adj_[v].size()};
    }
    int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }

    // nullopt when consistent; otherwise a description of the first
    // violated structural constraint.
    std::optional<std::string> validate() const;

private:
    std::vector<std::vector<VertexId>> adj_;
    std::size_t num_edges_ = 0;
};

// One step of an online presentation: vertex `vertex` arrives together
// with its edges to previously presented vertices.
struct Arrival {
    VertexId vertex = 0;
    std::vector<VertexId> back_edges;

    bool operator==(const Arrival&) const = default;
};

// An online presentation of a graph. Arrival order is the vector order;
// `phase_ends` optionally partitions the arrival sequence into phases,
// entry j being the index one past the last arrival of phase j.
class OnlineInstance {
public:
    OnlineInstance() = default;
    explicit OnlineInstance(std::vector<Arrival> arrivals,
                            std::vector<int> phase_ends = {})
        : arrivals_(std::move(arrivals)), phase_ends_(std::move(phase_ends)) {}

    int num_steps() const { return static_cast<int>(arrivals_.size()); }
    const Arrival& arrival(int t) const { return arrivals_[t]; }
    std::span<const Arrival> arrivals() const { return {arrivals_.data(), arrivals_.size()}; }
    const std::vector<int>& phase_ends() const { return phase_ends_; }

    void push_arrival(Arrival a) { arrivals_.push_back(std::move(a)); }
    void close_phase() { phase_ends_.push_back(num_steps()); }
    void set_phase_ends(std::vector<int> ends) { phase_ends_ = std::move(ends); }

    GraphData to_graph() const;

    bool operator==(const OnlineInstance&) const = default;

private:
    std::vector<Arrival> arrivals_;
    std::vector<int> phase_ends_;
};

// nullopt when `inst` is a valid presentation of `g`: arrivals form a
// permutation of V(g), every back edge points to an earlier vertex, and the
// union of back edges equals E(g).
std::optional<std::string> validate_instance(const OnlineInstance& inst, const GraphData& g);

// Record of the colors an algorithm committed, in commitment order. For
// immediate algorithms commitment order equals arrival order; buffered runs
// interleave differently and additionally record how many commitments had
// been made by the end of each arrival step.
class Transcript {
public:
    struct Step {
        VertexId vertex = 0;
        ColorId color = 0;
        bool operator==(const Step&) const = default;
    };

    void record(VertexId v, ColorId c);
    void record_step_watermark() { committed_by_step_.push_back(static_cast<int>(steps_.size())); }

    int num_colored() const { return static_cast<int>(steps_.size()); }
    std::span<const Step> steps() const { return {steps_.data(), steps_.size()}; }
    const std::vector<int>& committed_by_step() const { return committed_by_step_; }

    bool is_colored(VertexId v) const;
    // 0 when v has no color yet.
    ColorId color_of(VertexId v) const;

    // Distinct colors over `subset`; throws std::invalid_argument if any
    // vertex in the subset is still uncolored.
    std::set<ColorId> colors_used(std::span<const VertexId> subset) const;
    // The subset filtered down to vertices that already have a color.
    std::vector<VertexId> colored_subset(std::span<const VertexId> subset) const;

    int num_colors_total() const;
    ColorId max_color() const;

    bool operator==(const Transcript&) const = default;

private:
    std::vector<Step> steps_;
    std::vector<int> committed_by_step_;
    std::vector<ColorId> color_of_; // indexed by vertex, 0 = uncolored
};

// nullopt when every vertex of g is colored exactly once and no edge is
// monochromatic.
std::optional<std::string> validate_transcript(const Transcript& t, const GraphData& g);

// Vertex-disjoint cliques ("nodes") arranged as a forest; the union of the
// two endpoints of every forest edge is again a clique. The adversarial
// constructions maintain one distinguished root node per tree, whose
// vertices carry the color lower bound.
class CliqueForest {
public:
    int add_node(std::vector<VertexId> members);
    void set_parent(int node, int parent);
    void add_member(int node, VertexId v) { nodes_[node].push_back(v); }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    std::span<const VertexId> node_members(int node) const {
        return {nodes_[node].data(), nodes_[node].size()};
    }
    int parent(int node) const { return parent_[node]; }
    std::vector<std::pair<int, int>> tree_edges() const; // (parent, child)

    // Root vertices of the trees containing `tree_roots` (node indices).
    std::vector<VertexId> root_vertices(std::span<const int> root_nodes) const;

    // Checks nodes are cliques of size `half` or `half`+1 (the latter only
    // when `allow_extended`), pairwise disjoint, parent links are acyclic,
    // and each forest edge's union induces a clique. Restricted to `nodes`
    // when non-empty. nullopt on success.
    std::optional<std::string> audit(const GraphData& g, int half, bool allow_extended,
                                     std::span<const int> nodes = {}) const;

private:
    std::vector<std::vector<VertexId>> nodes_;
    std::vector<int> parent_; // -1 for roots
};

} // namespace onlinecol
