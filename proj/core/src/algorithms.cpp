#include "onlinecol/algorithms.hpp"

#include <algorithm>

namespace onlinecol::algorithms {

ColorId ColoringView::lowest_feasible(std::span<const VertexId> colored_neighbors) const {
    std::vector<char> taken(colored_neighbors.size() + 2, 0);
    for (VertexId u : colored_neighbors) {
        ColorId c = color_of(u);
        if (c > 0 && static_cast<std::size_t>(c) < taken.size()) taken[c] = 1;
    }
    ColorId c = 1;
    while (taken[c]) ++c;
    return c;
}

void ColoringView::assign(VertexId v, ColorId c) {
    if (static_cast<std::size_t>(v) >= colors_.size()) colors_.resize(v + 1, 0);
    colors_[v] = c;
    max_color_ = std::max(max_color_, c);
    ++num_colored_;
}

ColorId HighestFeasible::choose_color(const Arrival& a, const ColoringView& colors,
                                      std::span<const Arrival>) {
    std::vector<char> taken(colors.max_color_used() + 1, 0);
    for (VertexId u : a.back_edges) {
        ColorId c = colors.color_of(u);
        if (c > 0) taken[c] = 1;
    }
    for (ColorId c = colors.max_color_used(); c >= 1; --c)
        if (!taken[c]) return c;
    return colors.max_color_used() + 1;
}

ColorId RandomFeasible::choose_color(const Arrival& a, const ColoringView& colors,
                                     std::span<const Arrival>) {
    std::vector<char> taken(colors.max_color_used() + 2, 0);
    for (VertexId u : a.back_edges) {
        ColorId c = colors.color_of(u);
        if (c > 0) taken[c] = 1;
    }
    std::vector<ColorId> feasible;
    for (ColorId c = 1; c <= colors.max_color_used() + 1; ++c)
        if (!taken[c]) feasible.push_back(c);
    return feasible[rng_.next_below(static_cast<std::uint32_t>(feasible.size()))];
}

namespace {

std::uint64_t parse_seed(const std::string& spec, std::size_t colon) {
    const std::string params = spec.substr(colon + 1);
    const std::string key = "seed=";
    if (params.rfind(key, 0) != 0)
        throw std::invalid_argument("unknown algorithm parameters: " + params);
    std::size_t used = 0;
    std::uint64_t seed = std::stoull(params.substr(key.size()), &used);
    if (used != params.size() - key.size())
        throw std::invalid_argument("bad seed in: " + spec);
    return seed;
}

} // namespace

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec) {
    std::size_t colon = spec.find(':');
    std::string base = spec.substr(0, colon);
    if (base == "first-fit") return std::make_unique<FirstFit>();
    if (base == "always-new-color" || base == "always-new")
        return std::make_unique<AlwaysNewColor>();
    if (base == "highest-feasible") return std::make_unique<HighestFeasible>();
    if (base == "random-feasible") {
        std::uint64_t seed = colon == std::string::npos ? 1 : parse_seed(spec, colon);
        return std::make_unique<RandomFeasible>(seed);
    }
    throw std::invalid_argument("unknown algorithm: " + spec);
}

AlgorithmFactory make_algorithm_factory(const std::string& spec) {
    make_algorithm(spec); // validate eagerly
    return [spec] { return make_algorithm(spec); };
}

AlgorithmFactory make_seeded_factory(const std::string& spec, SplitRng stream) {
    make_algorithm(spec);
    std::string base = spec.substr(0, spec.find(':'));
    if (base != "random-feasible") return make_algorithm_factory(spec);
    auto counter = std::make_shared<std::uint64_t>(0);
    return [stream, counter]() -> std::unique_ptr<OnlineAlgorithm> {
        return std::make_unique<RandomFeasible>(stream.split(++*counter).next_u64());
    };
}

std::vector<std::string> algorithm_zoo() {
    return {"first-fit", "always-new-color", "highest-feasible", "random-feasible:seed=1"};
}

namespace {

void check_feasible(const Arrival& a, const ColoringView& colors, ColorId c,
                    const std::string& who, int step) {
    if (c <= 0)
        throw ProtocolViolation(who + " returned nonpositive color at step " +
                                std::to_string(step));
    for (VertexId u : a.back_edges)
        if (colors.color_of(u) == c)
            throw ProtocolViolation(who + " reused color " + std::to_string(c) +
                                    " of neighbor " + std::to_string(u) + " at step " +
                                    std::to_string(step));
}

} // namespace

Transcript run_online(OnlineAlgorithm& alg, const OnlineInstance& inst) {
    return run_online_lookahead(alg, inst, 0);
}

Transcript run_online_lookahead(OnlineAlgorithm& alg, const OnlineInstance& inst,
                                int lookahead) {
    if (lookahead < 0) throw std::invalid_argument("lookahead must be >= 0");
    Transcript t;
    ColoringView view;
    auto arrivals = inst.arrivals();
    const int n = static_cast<int>(arrivals.size());
    for (int i = 0; i < n; ++i) {
        int win = std::min(n - i, lookahead + 1);
        const Arrival& a = arrivals[i];
        ColorId c = alg.choose_color(a, view, arrivals.subspan(i, win));
        check_feasible(a, view, c, alg.name(), i);
        view.assign(a.vertex, c);
        t.record(a.vertex, c);
    }
    return t;
}

std::vector<Transcript::Step> ImmediateBuffered::on_arrival(const BufferContext& ctx) {
    ColorId c = inner_.choose_color(ctx.arrival, ctx.colors, {});
    return {{ctx.arrival.vertex, c}};
}

std::vector<Transcript::Step> ImmediateBuffered::on_finish(const BufferContext&) {
    return {};
}

namespace {

std::vector<Transcript::Step> flush_first_fit(const BufferContext& ctx, std::size_t count) {
    // Oldest-first first fit over the revealed graph; colors assigned in
    // this flush are visible to later vertices of the same flush.
    std::vector<Transcript::Step> out;
    std::vector<ColorId> local(ctx.revealed.num_vertices(), 0);
    auto color_at = [&](VertexId u) {
        return local[u] != 0 ? local[u] : ctx.colors.color_of(u);
    };
    for (std::size_t i = 0; i < count && i < ctx.pending.size(); ++i) {
        VertexId v = ctx.pending[i];
        std::vector<char> taken(ctx.revealed.degree(v) + 2, 0);
        for (VertexId u : ctx.revealed.neighbors(v)) {
            ColorId c = color_at(u);
            if (c > 0 && static_cast<std::size_t>(c) < taken.size()) taken[c] = 1;
        }
        ColorId c = 1;
        while (taken[c]) ++c;
        local[v] = c;
        out.push_back({v, c});
    }
    return out;
}

} // namespace

std::vector<Transcript::Step> StallingFirstFit::on_arrival(const BufferContext& ctx) {
    int deficit = ctx.required_colored - ctx.colors.num_colored();
    if (deficit <= 0) return {};
    return flush_first_fit(ctx, static_cast<std::size_t>(deficit));
}

std::vector<Transcript::Step> StallingFirstFit::on_finish(const BufferContext& ctx) {
    return flush_first_fit(ctx, ctx.pending.size());
}

Transcript run_online_buffered(BufferedAlgorithm& alg, const OnlineInstance& inst,
                               int buffer_size) {
    BufferedSession session(alg, buffer_size);
    // Replays a fixed instance; ids must arrive in presentation order for
    // the session's id assignment to coincide with the instance's.
    for (int t = 0; t < inst.num_steps(); ++t) {
        const Arrival& a = inst.arrival(t);
        if (a.vertex != t)
            throw std::invalid_argument(
                "run_online_buffered requires arrival order ids (vertex " +
                std::to_string(a.vertex) + " at step " + std::to_string(t) + ")");
        session.present(a.back_edges);
    }
    session.finish();
    return session.transcript();
}

ColorId ImmediateSession::present(std::vector<VertexId> back_edges) {
    VertexId v = graph_.add_vertex();
    for (VertexId u : back_edges) graph_.add_edge(v, u);
    Arrival a{v, std::move(back_edges)};
    ColorId c = alg_.choose_color(a, view_, {});
    check_feasible(a, view_, c, alg_.name(), v);
    view_.assign(v, c);
    transcript_.record(v, c);
    instance_.push_arrival(std::move(a));
    return c;
}

void BufferedSession::apply(std::span<const Transcript::Step> commits) {
    for (const auto& s : commits) {
        auto it = std::find(pending_.begin(), pending_.end(), s.vertex);
        if (it == pending_.end())
            throw ProtocolViolation(alg_.name() + " committed vertex " +
                                    std::to_string(s.vertex) + " that is not pending");
        if (s.color <= 0)
            throw ProtocolViolation(alg_.name() + " returned nonpositive color");
        for (VertexId u : graph_.neighbors(s.vertex))
            if (view_.color_of(u) == s.color)
                throw ProtocolViolation(alg_.name() + " reused color " +
                                        std::to_string(s.color) + " on edge {" +
                                        std::to_string(s.vertex) + "," + std::to_string(u) +
                                        "}");
        pending_.erase(it);
        view_.assign(s.vertex, s.color);
        transcript_.record(s.vertex, s.color);
    }
}

void BufferedSession::present(std::vector<VertexId> back_edges) {
    if (finished_) throw std::logic_error("present after finish");
    VertexId v = graph_.add_vertex();
    for (VertexId u : back_edges) graph_.add_edge(v, u);
    Arrival a{v, std::move(back_edges)};
    pending_.push_back(v);
    instance_.push_arrival(a);
    int step = graph_.num_vertices();
    BufferContext ctx{graph_,       view_,
                      a,            {pending_.data(), pending_.size()},
                      step,         buffer_size_,
                      std::max(0, step - buffer_size_)};
    apply(alg_.on_arrival(ctx));
    if (view_.num_colored() < step - buffer_size_)
        throw BufferOverflow(alg_.name() + " exceeded buffer " + std::to_string(buffer_size_) +
                             " at step " + std::to_string(step));
    transcript_.record_step_watermark();
}

void BufferedSession::finish() {
    if (finished_) return;
    finished_ = true;
    static const Arrival none{};
    const Arrival& last = instance_.num_steps() > 0
                              ? instance_.arrival(instance_.num_steps() - 1)
                              : none;
    int step = graph_.num_vertices();
    BufferContext ctx{graph_,       view_,
                      last,         {pending_.data(), pending_.size()},
                      step,         buffer_size_,
                      step};
    apply(alg_.on_finish(ctx));
    if (!pending_.empty())
        throw ProtocolViolation(alg_.name() + " left " + std::to_string(pending_.size()) +
                                " vertices uncolored at finish");
}

} // namespace onlinecol::algorithms
