#pragma once

#include <optional>
#include <vector>

#include "onlinecol/algorithms.hpp"
#include "onlinecol/graph.hpp"

namespace onlinecol::adversary {

struct DetOptions {
    int d = 2;
    int k = 1;
    bool audit = true;     // re-check forest invariants at every recursion level
    bool connector = false;
    long long pad_to = 0;  // pad with degree-1 vertices up to this size (0 = off)
};

// Output of an adaptive construction round. The graph, the presentation
// that produced it, the colors the algorithm answered, and the clique
// forest skeleton with one distinguished root node per tree.
struct DetResult {
    GraphData graph;
    OnlineInstance instance;
    Transcript transcript;
    CliqueForest forest;
    std::vector<int> top_components; // root node index of every tree
    std::vector<VertexId> root_vertices;
    int d = 0;
    int k = 0;
    int d_even = 0;        // even parameter the recursion ran with (d or d-1)
    int core_size = 0;     // vertices before extensions/connector/padding
    int structure_size = 0;
    int base_copies = 0;
    int root_color_count = 0;
    std::optional<VertexId> connector_vertex;
};

// Adaptive lower-bound construction: presents a chordal graph with clique
// number d against `alg` and forces at least d_even*k/4 distinct colors on
// the root vertices. Throws std::logic_error if any internal invariant
// fails (they hold for every algorithm that plays by the rules).
DetResult build_gk_det(algorithms::OnlineAlgorithm& alg, const DetOptions& opt);

// Same construction sized for an n-vertex budget: picks the largest k with
// d * 2^k <= n and pads to exactly n. Requires n >= 2*d*d. Forces at least
// d * log2(n) / 32 colors on the roots.
DetResult build_sized_det(algorithms::OnlineAlgorithm& alg, int d, long long n,
                            bool audit = true);

} // namespace onlinecol::adversary
