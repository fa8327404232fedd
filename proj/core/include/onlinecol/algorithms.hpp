#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "onlinecol/graph.hpp"
#include "onlinecol/rng.hpp"

namespace onlinecol::algorithms {

class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BufferOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Read-only view of the colors committed so far. Owned by runners and
// sessions; algorithms only ever see it const.
class ColoringView {
public:
    ColorId color_of(VertexId v) const {
        return v >= 0 && static_cast<std::size_t>(v) < colors_.size() ? colors_[v] : 0;
    }
    ColorId max_color_used() const { return max_color_; }
    int num_colored() const { return num_colored_; }

    // Smallest positive color unused among the given vertices' colors.
    ColorId lowest_feasible(std::span<const VertexId> colored_neighbors) const;

    void assign(VertexId v, ColorId c);

private:
    std::vector<ColorId> colors_;
    ColorId max_color_ = 0;
    int num_colored_ = 0;
};

// An online coloring algorithm: must pick a feasible color for the arriving
// vertex knowing only the graph revealed so far. `window` holds the current
// arrival followed by up to l future arrivals when running with lookahead;
// without lookahead it contains just the current arrival.
class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;
    virtual std::string name() const = 0;
    virtual ColorId choose_color(const Arrival& arrival, const ColoringView& colors,
                                 std::span<const Arrival> window) = 0;
};

class FirstFit final : public OnlineAlgorithm {
public:
    std::string name() const override { return "first-fit"; }
    ColorId choose_color(const Arrival& a, const ColoringView& colors,
                         std::span<const Arrival>) override {
        return colors.lowest_feasible(a.back_edges);
    }
};

// Opens a fresh color for every vertex.
class AlwaysNewColor final : public OnlineAlgorithm {
public:
    std::string name() const override { return "always-new-color"; }
    ColorId choose_color(const Arrival&, const ColoringView& colors,
                         std::span<const Arrival>) override {
        return colors.max_color_used() + 1;
    }
};

// Largest feasible color among those already open, else a fresh one.
class HighestFeasible final : public OnlineAlgorithm {
public:
    std::string name() const override { return "highest-feasible"; }
    ColorId choose_color(const Arrival& a, const ColoringView& colors,
                         std::span<const Arrival>) override;
};

// Uniform choice among the feasible colors in {1, ..., max_used + 1}.
class RandomFeasible final : public OnlineAlgorithm {
public:
    explicit RandomFeasible(std::uint64_t seed) : rng_(seed), seed_(seed) {}
    std::string name() const override {
        return "random-feasible:seed=" + std::to_string(seed_);
    }
    ColorId choose_color(const Arrival& a, const ColoringView& colors,
                         std::span<const Arrival>) override;

private:
    SplitRng rng_;
    std::uint64_t seed_;
};

// Parses "first-fit", "always-new-color", "highest-feasible",
// "random-feasible:seed=S". Throws std::invalid_argument on anything else.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec);

// Factory so randomized trials can get a fresh, identically-configured
// algorithm per trial.
using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>()>;
AlgorithmFactory make_algorithm_factory(const std::string& spec);
// Same family, but derives each instance's seed from `stream` so replicas
// differ across trials yet stay reproducible.
AlgorithmFactory make_seeded_factory(const std::string& spec, SplitRng stream);

std::vector<std::string> algorithm_zoo(); // canonical names, fixed order

// Runs `alg` over a fixed presentation; throws ProtocolViolation if the
// algorithm ever answers with an infeasible color.
Transcript run_online(OnlineAlgorithm& alg, const OnlineInstance& inst);

// Same, except at step t the algorithm sees arrivals t..t+l. l = 0 is
// exactly run_online.
Transcript run_online_lookahead(OnlineAlgorithm& alg, const OnlineInstance& inst, int lookahead);

// Buffered model: after arrival t the algorithm may keep at most b vertices
// uncolored; all must be colored once the presentation ends.
struct BufferContext {
    const GraphData& revealed;         // graph on the presented vertices
    const ColoringView& colors;
    const Arrival& arrival;            // most recent arrival (on_finish: last one)
    std::span<const VertexId> pending; // presented but uncolored, arrival order
    int step = 0;                      // arrivals so far (1-based)
    int buffer_size = 0;
    int required_colored = 0;          // max(0, step - buffer_size)
};

class BufferedAlgorithm {
public:
    virtual ~BufferedAlgorithm() = default;
    virtual std::string name() const = 0;
    virtual std::vector<Transcript::Step> on_arrival(const BufferContext& ctx) = 0;
    virtual std::vector<Transcript::Step> on_finish(const BufferContext& ctx) = 0;
};

// Wraps an immediate algorithm: colors each vertex on arrival.
class ImmediateBuffered final : public BufferedAlgorithm {
public:
    explicit ImmediateBuffered(OnlineAlgorithm& inner) : inner_(inner) {}
    std::string name() const override { return inner_.name(); }
    std::vector<Transcript::Step> on_arrival(const BufferContext& ctx) override;
    std::vector<Transcript::Step> on_finish(const BufferContext& ctx) override;

private:
    OnlineAlgorithm& inner_;
};

// Defers every decision as long as the buffer constraint allows, then
// colors the oldest pending vertices first fit.
class StallingFirstFit final : public BufferedAlgorithm {
public:
    std::string name() const override { return "stalling-first-fit"; }
    std::vector<Transcript::Step> on_arrival(const BufferContext& ctx) override;
    std::vector<Transcript::Step> on_finish(const BufferContext& ctx) override;
};

Transcript run_online_buffered(BufferedAlgorithm& alg, const OnlineInstance& inst,
                               int buffer_size);

// Adaptive presentation against an immediate algorithm: the adversary calls
// present() one vertex at a time and observes the color before deciding the
// next arrival. Vertex ids are assigned in presentation order.
class ImmediateSession {
public:
    explicit ImmediateSession(OnlineAlgorithm& alg) : alg_(alg) {}

    ColorId present(std::vector<VertexId> back_edges);

    int num_presented() const { return graph_.num_vertices(); }
    const GraphData& graph() const { return graph_; }
    const OnlineInstance& instance() const { return instance_; }
    const Transcript& transcript() const { return transcript_; }
    ColorId color_of(VertexId v) const { return view_.color_of(v); }
    std::set<ColorId> colors_on(std::span<const VertexId> vs) const {
        return transcript_.colors_used(vs);
    }

private:
    OnlineAlgorithm& alg_;
    GraphData graph_;
    OnlineInstance instance_;
    Transcript transcript_;
    ColoringView view_;
};

// Adaptive presentation against a buffered algorithm.
class BufferedSession {
public:
    BufferedSession(BufferedAlgorithm& alg, int buffer_size)
        : alg_(alg), buffer_size_(buffer_size) {
        if (buffer_size < 0) throw std::invalid_argument("buffer size must be >= 0");
    }

    void present(std::vector<VertexId> back_edges);
    void finish(); // flushes; afterwards every vertex is colored

    int num_presented() const { return graph_.num_vertices(); }
    const GraphData& graph() const { return graph_; }
    const OnlineInstance& instance() const { return instance_; }
    const Transcript& transcript() const { return transcript_; }
    ColorId color_of(VertexId v) const { return view_.color_of(v); } // 0 = uncolored
    bool finished() const { return finished_; }

private:
    void apply(std::span<const Transcript::Step> commits);

    BufferedAlgorithm& alg_;
    int buffer_size_ = 0;
    bool finished_ = false;
    GraphData graph_;
    OnlineInstance instance_;
    Transcript transcript_;
    ColoringView view_;
    std::vector<VertexId> pending_;
};

} // namespace onlinecol::algorithms
