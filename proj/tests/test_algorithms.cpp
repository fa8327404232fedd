#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>

#include "onlinecol/algorithms.hpp"
#include "onlinecol/oracles.hpp"

using namespace onlinecol;
using namespace onlinecol::algorithms;

namespace {

OnlineInstance presented_by_id(const GraphData& g) {
    OnlineInstance inst;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        std::vector<VertexId> back;
        for (VertexId u : g.neighbors(v))
            if (u < v) back.push_back(u);
        inst.push_arrival({v, std::move(back)});
    }
    return inst;
}

// Bipartite graph with parts {0,1,2} and {3,4,5}, vertex i adjacent to
// 3+j exactly when i != j, presented alternating between the parts. First
// fit needs 3 colors on it; the optimum is 2.
OnlineInstance crown_instance() {
    OnlineInstance inst;
    inst.push_arrival({0, {}});
    inst.push_arrival({3, {}});
    inst.push_arrival({1, {3}});
    inst.push_arrival({4, {0}});
    inst.push_arrival({2, {3, 4}});
    inst.push_arrival({5, {0, 1}});
    return inst;
}

// Renames vertex ids so arrival t has id t, as the buffered runner requires.
OnlineInstance relabeled_by_arrival(const OnlineInstance& inst) {
    std::vector<VertexId> new_id(static_cast<size_t>(inst.num_steps()), -1);
    for (int t = 0; t < inst.num_steps(); ++t)
        new_id[static_cast<size_t>(inst.arrival(t).vertex)] = t;
    OnlineInstance out;
    for (int t = 0; t < inst.num_steps(); ++t) {
        Arrival a;
        a.vertex = t;
        for (VertexId u : inst.arrival(t).back_edges)
            a.back_edges.push_back(new_id[static_cast<size_t>(u)]);
        std::sort(a.back_edges.begin(), a.back_edges.end());
        out.push_arrival(std::move(a));
    }
    return out;
}

// Exact graph coloring by backtracking; small n only. Returns a proper
// coloring using the minimum number of colors.
std::vector<ColorId> optimal_coloring(const GraphData& g) {
    int n = g.num_vertices();
    std::vector<ColorId> colors(static_cast<size_t>(n), 0);
    for (int k = (n > 0 ? 1 : 0); k <= n; ++k) {
        std::function<bool(int)> go = [&](int v) -> bool {
            if (v == n) return true;
            for (ColorId c = 1; c <= k; ++c) {
                bool ok = true;
                for (VertexId u : g.neighbors(v))
                    if (u < v && colors[static_cast<size_t>(u)] == c) ok = false;
                if (!ok) continue;
                colors[static_cast<size_t>(v)] = c;
                if (go(v + 1)) return true;
                colors[static_cast<size_t>(v)] = 0;
            }
            return false;
        };
        if (go(0)) return colors;
    }
    return colors;
}

// Sees the whole remainder through the lookahead window on the first
// arrival and answers from a precomputed optimal coloring.
class FullWindowOptimal final : public OnlineAlgorithm {
public:
    std::string name() const override { return "test-full-window-optimal"; }
    ColorId choose_color(const Arrival& a, const ColoringView&,
                         std::span<const Arrival> window) override {
        if (colors_.empty()) {
            VertexId n = 0;
            for (const Arrival& w : window) n = std::max(n, w.vertex + 1);
            GraphData g(n);
            for (const Arrival& w : window)
                for (VertexId u : w.back_edges) g.add_edge(w.vertex, u);
            colors_ = optimal_coloring(g);
        }
        return colors_[static_cast<size_t>(a.vertex)];
    }

private:
    std::vector<ColorId> colors_;
};

// Defers everything, then colors optimally at the end; needs b >= n.
class DeferredOptimal final : public BufferedAlgorithm {
public:
    std::string name() const override { return "test-deferred-optimal"; }
    std::vector<Transcript::Step> on_arrival(const BufferContext&) override { return {}; }
    std::vector<Transcript::Step> on_finish(const BufferContext& ctx) override {
        std::vector<ColorId> colors = optimal_coloring(ctx.revealed);
        std::vector<Transcript::Step> out;
        for (VertexId v : ctx.pending) out.push_back({v, colors[static_cast<size_t>(v)]});
        return out;
    }
};

class AlwaysColorOne final : public OnlineAlgorithm {
public:
    std::string name() const override { return "test-always-one"; }
    ColorId choose_color(const Arrival&, const ColoringView&,
                         std::span<const Arrival>) override {
        return 1;
    }
};

class NeverColors final : public BufferedAlgorithm {
public:
    std::string name() const override { return "test-never-colors"; }
    std::vector<Transcript::Step> on_arrival(const BufferContext&) override { return {}; }
    std::vector<Transcript::Step> on_finish(const BufferContext&) override { return {}; }
};

} // namespace

TEST_CASE("first fit picks the lowest feasible color") {
    GraphData tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    FirstFit ff;
    Transcript t = run_online(ff, presented_by_id(tri));
    CHECK(t.color_of(0) == 1);
    CHECK(t.color_of(1) == 2);
    CHECK(t.color_of(2) == 3);

    GraphData k4(4);
    for (VertexId u = 0; u < 4; ++u)
        for (VertexId v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    Transcript t4 = run_online(ff, presented_by_id(k4));
    CHECK(t4.color_of(0) == 1);
    CHECK(t4.color_of(1) == 2);
    CHECK(t4.num_colors_total() == 4);
}

TEST_CASE("first fit beats the optimum count on an adversarial bipartite order") {
    FirstFit ff;
    Transcript t = run_online(ff, crown_instance());
    CHECK(t.num_colors_total() == 3);
    CHECK_FALSE(validate_transcript(t, crown_instance().to_graph()).has_value());
}

TEST_CASE("always-new-color and highest-feasible behave as named") {
    GraphData p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    AlwaysNewColor anc;
    Transcript ta = run_online(anc, presented_by_id(p3));
    CHECK(ta.color_of(2) == 3);

    HighestFeasible hf;
    Transcript th = run_online(hf, presented_by_id(p3));
    CHECK(th.color_of(0) == 1);
    CHECK(th.color_of(1) == 2);
    CHECK(th.color_of(2) == 1); // color 2 is blocked; 1 is the highest open feasible
}

TEST_CASE("zero lookahead equals the plain runner") {
    OnlineInstance inst = crown_instance();
    for (const std::string& spec : algorithm_zoo()) {
        auto a1 = make_algorithm(spec);
        auto a2 = make_algorithm(spec);
        CHECK(run_online(*a1, inst) == run_online_lookahead(*a2, inst, 0));
    }
}

TEST_CASE("first fit ignores the lookahead window") {
    OnlineInstance inst = crown_instance();
    FirstFit a, b;
    CHECK(run_online(a, inst) == run_online_lookahead(b, inst, 5));
}

TEST_CASE("full lookahead admits an optimal answer") {
    OnlineInstance inst = crown_instance();
    FullWindowOptimal opt;
    Transcript t = run_online_lookahead(opt, inst, inst.num_steps());
    CHECK_FALSE(validate_transcript(t, inst.to_graph()).has_value());
    CHECK(t.num_colors_total() == 2);
}

TEST_CASE("buffered with b = 0 equals the immediate runner") {
    OnlineInstance inst = relabeled_by_arrival(crown_instance());
    FirstFit inner;
    ImmediateBuffered wrapped(inner);
    Transcript buffered = run_online_buffered(wrapped, inst, 0);
    FirstFit plain;
    Transcript direct = run_online(plain, inst);
    for (VertexId v = 0; v < inst.num_steps(); ++v)
        CHECK(buffered.color_of(v) == direct.color_of(v));
    // With b = 0 every arrival is colored within its own step.
    REQUIRE(buffered.committed_by_step().size() == 6);
    for (int s = 0; s < 6; ++s) CHECK(buffered.committed_by_step()[static_cast<size_t>(s)] == s + 1);
}

TEST_CASE("a full buffer admits an optimal answer") {
    OnlineInstance inst = relabeled_by_arrival(crown_instance());
    DeferredOptimal opt;
    Transcript t = run_online_buffered(opt, inst, inst.num_steps());
    CHECK_FALSE(validate_transcript(t, inst.to_graph()).has_value());
    CHECK(t.num_colors_total() == 2);
}

TEST_CASE("stalling first fit defers exactly to the deficit") {
    GraphData p5(5);
    for (VertexId v = 0; v + 1 < 5; ++v) p5.add_edge(v, v + 1);
    OnlineInstance inst = presented_by_id(p5);
    StallingFirstFit sff;
    Transcript t = run_online_buffered(sff, inst, 2);
    CHECK_FALSE(validate_transcript(t, p5).has_value());
    REQUIRE(t.committed_by_step().size() == 5);
    for (int s = 0; s < 5; ++s)
        CHECK(t.committed_by_step()[static_cast<size_t>(s)] == std::max(0, (s + 1) - 2));
}

TEST_CASE("protocol violations are detected") {
    GraphData tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    AlwaysColorOne bad;
    CHECK_THROWS_AS(run_online(bad, presented_by_id(tri)), ProtocolViolation);

    // A buffered algorithm that never colors violates the b constraint.
    NeverColors lazy;
    GraphData p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK_THROWS_AS(run_online_buffered(lazy, presented_by_id(p3), 1), BufferOverflow);

    // ... and with an ample buffer it still must finish the job.
    NeverColors lazy2;
    CHECK_THROWS_AS(run_online_buffered(lazy2, presented_by_id(p3), 99), ProtocolViolation);
}

TEST_CASE("buffered runner requires arrival-order vertex ids") {
    OnlineInstance shuffled;
    shuffled.push_arrival({1, {}});
    shuffled.push_arrival({0, {1}});
    StallingFirstFit sff;
    CHECK_THROWS_AS(run_online_buffered(sff, shuffled, 1), std::invalid_argument);
}

TEST_CASE("random feasible is reproducible per seed and always proper") {
    GraphData g(8);
    for (VertexId u = 0; u < 8; ++u)
        for (VertexId v = u + 1; v < 8; ++v)
            if ((u + v) % 3 != 0) g.add_edge(u, v);
    OnlineInstance inst = presented_by_id(g);

    auto a1 = make_algorithm("random-feasible:seed=5");
    auto a2 = make_algorithm("random-feasible:seed=5");
    Transcript t1 = run_online(*a1, inst);
    Transcript t2 = run_online(*a2, inst);
    CHECK(t1 == t2);
    CHECK_FALSE(validate_transcript(t1, g).has_value());

    auto b1 = make_algorithm("random-feasible:seed=6");
    Transcript t3 = run_online(*b1, inst); // proper as well, whatever it picked
    CHECK_FALSE(validate_transcript(t3, g).has_value());
}

TEST_CASE("algorithm spec parsing") {
    CHECK(make_algorithm("first-fit")->name() == "first-fit");
    CHECK(make_algorithm("always-new-color")->name() == "always-new-color");
    CHECK(make_algorithm("always-new")->name() == "always-new-color");
    CHECK(make_algorithm("highest-feasible")->name() == "highest-feasible");
    CHECK(make_algorithm("random-feasible:seed=17")->name() == "random-feasible:seed=17");
    CHECK_THROWS_AS(make_algorithm("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm("random-feasible:seed=abc"), std::invalid_argument);
    CHECK(algorithm_zoo().size() == 4);
    for (const std::string& spec : algorithm_zoo()) CHECK(make_algorithm(spec) != nullptr);
}
