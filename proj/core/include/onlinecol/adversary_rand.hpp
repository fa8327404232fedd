#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "onlinecol/algorithms.hpp"
#include "onlinecol/graph.hpp"
#include "onlinecol/rng.hpp"

namespace onlinecol::adversary {

// Recursive description of one draw from the level-k distribution. A node
// above level 1 has 12 children grouped into 6 (left, right) pairs; for
// each pair with bits[i] set, a fresh d/2-clique is joined to every root of
// the left child. Vertex ids are filled in during emission.
struct RandNode {
    int level = 1;
    std::array<std::uint8_t, 6> bits{};
    std::vector<RandNode> children; // pair order: l0, r0, l1, r1, ...
    std::vector<VertexId> base_vertices;                  // level 1 only
    std::array<std::vector<VertexId>, 6> joined_cliques;  // where bits[i] = 1
    std::vector<VertexId> component_roots;                // sorted
    std::vector<int> component_root_nodes;                // forest node ids
};

struct RandResult {
    GraphData graph;
    OnlineInstance instance;
    CliqueForest forest;
    RandNode structure;
    std::vector<int> top_components;
    std::vector<VertexId> root_vertices;
    int d = 0;
    int k = 0;
    int d_even = 0;
    int structure_size = 0; // before padding
    long long padded_to = 0;

    // Exact success test: at least d_even * k / 4 distinct colors on the
    // root vertices.
    bool meets_root_bound(const Transcript& t) const;
    int root_colors(const Transcript& t) const;
};

// Draws the structure only (bits); children are derived from split streams
// so the draw is independent of traversal order.
RandNode sample_structure(SplitRng rng, int k);

// One sample, materialized: the presentation interleaves each pair as
// left, right, then the joining clique. Oblivious: independent of any
// algorithm. audit re-checks the forest invariants level by level.
RandResult sample_gk(SplitRng rng, int d, int k, bool audit = false);

// All 64 equally likely outcomes at k = 2 (or the single one at k = 1),
// indexed by the six pair bits of the top node.
std::vector<RandResult> enumerate_gk_tiny(int d, int k);

// Builds a fresh algorithm for a given trial id; deterministic algorithms
// ignore the id, randomized ones derive their seed from it.
using TrialFactory = std::function<std::unique_ptr<algorithms::OnlineAlgorithm>(std::uint64_t)>;
TrialFactory make_trial_factory(const std::string& spec, SplitRng stream);

struct ProbabilityEstimate {
    long long trials = 0;
    long long successes = 0;
    double p_hat = 0.0;
    double wilson_lower_99 = 0.0;
    double mean_root_colors = 0.0;
};

// Observer invoked per trial (possibly from several threads at once).
using TrialObserver =
    std::function<void(std::uint64_t trial, const RandResult&, const Transcript&)>;

// Samples `trials` instances, runs a fresh algorithm on each, and reports
// how often the root color bound was met. Reproducible for a fixed seed
// regardless of thread count.
ProbabilityEstimate estimate_root_color_probability(const TrialFactory& factory, int d, int k,
                                                    long long trials, SplitRng rng,
                                                    int threads = 1,
                                                    const TrialObserver& observer = {});

// Largest k with d * 12^k <= n, padded with degree-1 vertices to exactly n.
// Requires n >= 12 * d * d.
RandResult build_sized_rand(int d, long long n, SplitRng rng, bool audit = false);

} // namespace onlinecol::adversary
