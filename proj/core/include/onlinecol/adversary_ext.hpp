#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/algorithms.hpp"
#include "onlinecol/graph.hpp"
#include "onlinecol/rng.hpp"

namespace onlinecol::adversary {

// Level-ordered presentation of a sampled construction: phase 1 carries all
// base cliques, phase j >= 2 the joining cliques introduced at level j. Each
// phase ends with exactly `l` isolated filler vertices, so an algorithm with
// lookahead l never sees into the next phase while coloring the current one.
struct LookaheadResult {
    GraphData graph;
    OnlineInstance instance; // phase_ends: one per phase (+1 for padding)
    CliqueForest forest;
    std::vector<int> top_components;
    std::vector<VertexId> root_vertices;
    int d = 0;
    int k = 0;
    int d_even = 0;
    long long l = 0;
    long long padded_to = 0;          // 0 when structure-level
    int structure_size = 0;           // adversarial vertices only
    std::vector<int> real_phase_ends; // index after phase j's adversarial block

    bool meets_root_bound(const Transcript& t) const;
    int root_colors(const Transcript& t) const;
};

LookaheadResult build_lookahead_phased(SplitRng rng, int d, int k, long long l);

// Sized variant: k = floor(2/(3c) * log12(n/d)), padded to exactly n.
// Requires n >= max(12 d^2, d * 12^(2c)) and l <= c*n / log12(n/d).
LookaheadResult build_lookahead_instance(SplitRng rng, int d, double c, long long n,
                                         long long l);

// nullopt when every phase of `inst` ends with exactly l degree-0 fillers
// ahead of the next phase's first adversarial vertex (so a window of l
// arrivals never crosses a phase boundary into adversarial content).
std::optional<std::string> verify_phase_isolation(const OnlineInstance& inst,
                                                  const GraphData& g, long long l,
                                                  const std::vector<int>& real_phase_ends);

struct BufferPhaseReport {
    int level = 0;
    int considered = 0;  // subgraphs of this level formed from selected pairs
    int progressed = 0;  // colored at least half of their roots
    int good = 0;        // progressed and color bound d*j/8 met
    int required_good = 0;
    int case2_cliques = 0;
};

struct BufferResult {
    GraphData graph;
    OnlineInstance instance;
    Transcript transcript;
    CliqueForest forest;
    int d = 0;
    int d_even = 0;
    double eps = 0.0;
    long long n = 0;
    long long b = 0;
    int k = 0;
    int k_prime = 0;
    long long structure_size = 0;
    std::vector<BufferPhaseReport> phases;
    std::vector<VertexId> root_vertices; // roots of the best final subgraph
    int root_color_count = 0;
    int total_colors = 0;
};

// Adaptive construction against an algorithm that may defer up to b
// vertices. Decisions use only end-of-phase color snapshots. Forces at
// least d_even * k'/8 colors where k' = floor((k - log2(4 n^(1-eps) /
// d_even)) / 2). Requires b <= n^(1-eps) and n large enough for k' >= 1.
BufferResult build_buffer_adversary(algorithms::BufferedAlgorithm& alg, int d, double eps,
                                    long long n, long long b, bool audit = true);

} // namespace onlinecol::adversary
