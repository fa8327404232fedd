#include "onlinecol/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "onlinecol/adversary_det.hpp"
#include "onlinecol/adversary_ext.hpp"
#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/algorithms.hpp"
#include "onlinecol/rng.hpp"

namespace onlinecol::harness {
namespace {

using nlohmann::json;

template <typename T>
std::vector<T> as_list(const json& j, const char* field) {
    std::vector<T> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(e.get<T>());
    } else {
        out.push_back(j.get<T>());
    }
    if (out.empty()) throw std::invalid_argument(std::string("grid spec: empty list for ") + field);
    return out;
}

std::string fmt_fixed(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

// Wraps an algorithm spec as a buffered player; owns whatever it builds.
struct BufferedPlayer {
    std::unique_ptr<algorithms::OnlineAlgorithm> inner;
    std::unique_ptr<algorithms::BufferedAlgorithm> buffered;

    static BufferedPlayer make(const std::string& spec, std::uint64_t trial_seed) {
        BufferedPlayer p;
        if (spec == "stalling-first-fit") {
            p.buffered = std::make_unique<algorithms::StallingFirstFit>();
        } else {
            auto factory = adversary::make_trial_factory(spec, SplitRng(trial_seed));
            p.inner = factory(0);
            p.buffered = std::make_unique<algorithms::ImmediateBuffered>(*p.inner);
        }
        return p;
    }
};

struct RowOutput {
    GridRow row;
    GraphData graph;
    OnlineInstance instance;
    Transcript transcript;
};

class GridRunner {
public:
    explicit GridRunner(const GridSpec& spec)
        : spec_(spec), root_(spec.seed), alg_stream_(root_.split(0x5eedULL)) {
        if (spec.adversary != "det" && spec.adversary != "rand" &&
            spec.adversary != "lookahead" && spec.adversary != "buffer")
            throw std::invalid_argument("grid spec: unknown adversary '" + spec.adversary + "'");
        if (spec.trials < 1) throw std::invalid_argument("grid spec: trials must be >= 1");
        if (spec.adversary == "buffer") {
            if (spec.alg != "stalling-first-fit")
                (void)algorithms::make_algorithm(spec.alg); // validate the spec string early
        } else {
            (void)algorithms::make_algorithm(spec.alg);
        }
    }

    GridResult run(const RowObserver& observer) {
        GridResult out;
        out.spec = spec_;
        const auto& s = spec_;
        if (s.adversary == "det") {
            for (int d : s.d) {
                if (s.n.empty()) {
                    for (int k : require_list(s.k, "k")) run_trials(out, observer, [&](std::uint64_t t) {
                        return det_row(t, d, k);
                    });
                } else {
                    for (long long n : s.n) run_trials(out, observer, [&](std::uint64_t t) {
                        return det_sized_row(t, d, n);
                    });
                }
            }
        } else if (s.adversary == "rand") {
            for (int d : s.d) {
                if (s.n.empty()) {
                    for (int k : require_list(s.k, "k")) run_trials(out, observer, [&](std::uint64_t t) {
                        return rand_row(t, d, k);
                    });
                } else {
                    for (long long n : s.n) run_trials(out, observer, [&](std::uint64_t t) {
                        return rand_sized_row(t, d, n);
                    });
                }
            }
        } else if (s.adversary == "lookahead") {
            for (int d : s.d) {
                for (long long l : require_list(s.l, "l")) {
                    if (s.n.empty()) {
                        for (int k : require_list(s.k, "k"))
                            run_trials(out, observer,
                                       [&](std::uint64_t t) { return lookahead_row(t, d, k, l); });
                    } else {
                        for (long long n : s.n)
                            run_trials(out, observer, [&](std::uint64_t t) {
                                return lookahead_sized_row(t, d, n, l);
                            });
                    }
                }
            }
        } else { // buffer
            for (int d : s.d) {
                for (double eps : require_list(s.eps, "eps")) {
                    for (long long n : require_list(s.n, "n")) {
                        long long b = derive_buffer(n, eps);
                        run_trials(out, observer,
                                   [&](std::uint64_t t) { return buffer_row(t, d, eps, n, b); });
                    }
                }
            }
        }
        finalize(out);
        return out;
    }

private:
    template <typename T>
    static const std::vector<T>& require_list(const std::vector<T>& v, const char* name) {
        if (v.empty())
            throw std::invalid_argument(std::string("grid spec: adversary needs values for ") + name);
        return v;
    }

    long long derive_buffer(long long n, double eps) const {
        if (!spec_.b.empty()) return spec_.b.front();
        return static_cast<long long>(std::floor(std::pow(static_cast<double>(n), 1.0 - eps) + 1e-9));
    }

    template <typename RowFn>
    void run_trials(GridResult& out, const RowObserver& observer, RowFn&& fn) {
        for (long long t = 0; t < spec_.trials; ++t) {
            RowOutput r = fn(static_cast<std::uint64_t>(row_index_));
            r.row.trial = t;
            ++row_index_;
            out.all_bounds_hold = out.all_bounds_hold && r.row.meets_bound;
            if (observer) observer(r.row, r.graph, r.instance, r.transcript);
            out.rows.push_back(r.row);
        }
    }

    std::unique_ptr<algorithms::OnlineAlgorithm> player(std::uint64_t row) {
        auto factory = adversary::make_trial_factory(spec_.alg, alg_stream_);
        return factory(row);
    }

    RowOutput det_row(std::uint64_t row, int d, int k) {
        adversary::DetOptions opt;
        opt.d = d;
        opt.k = k;
        opt.audit = spec_.audit;
        opt.connector = spec_.connector;
        opt.pad_to = spec_.pad_to;
        auto alg = player(row);
        adversary::DetResult res = adversary::build_gk_det(*alg, opt);
        RowOutput o;
        o.row.d = d;
        o.row.k = k;
        o.row.n = res.instance.num_steps();
        o.row.total_colors = res.transcript.num_colors_total();
        o.row.root_colors = res.root_color_count;
        o.row.bound_value = res.d_even * k / 4.0;
        o.row.meets_bound = 4LL * res.root_color_count >= 1LL * res.d_even * k;
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(res.transcript);
        return o;
    }

    RowOutput det_sized_row(std::uint64_t row, int d, long long n) {
        auto alg = player(row);
        adversary::DetResult res = adversary::build_sized_det(*alg, d, n, spec_.audit);
        RowOutput o;
        o.row.d = d;
        o.row.k = res.k;
        o.row.n = res.instance.num_steps();
        o.row.total_colors = res.transcript.num_colors_total();
        o.row.root_colors = res.root_color_count;
        double bound = d * std::log2(static_cast<double>(n)) / 32.0;
        o.row.bound_value = bound;
        o.row.meets_bound = res.root_color_count >= bound - 1e-9;
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(res.transcript);
        return o;
    }

    RowOutput rand_row(std::uint64_t row, int d, int k) {
        adversary::RandResult res =
            adversary::sample_gk(root_.split(row + 1), d, k, spec_.audit);
        auto alg = player(row);
        Transcript t = algorithms::run_online(*alg, res.instance);
        RowOutput o;
        o.row.d = d;
        o.row.k = k;
        o.row.n = res.instance.num_steps();
        o.row.total_colors = t.num_colors_total();
        o.row.root_colors = res.root_colors(t);
        o.row.bound_value = res.d_even * k / 4.0;
        o.row.meets_bound = res.meets_root_bound(t);
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(t);
        return o;
    }

    RowOutput rand_sized_row(std::uint64_t row, int d, long long n) {
        adversary::RandResult res =
            adversary::build_sized_rand(d, n, root_.split(row + 1), spec_.audit);
        auto alg = player(row);
        Transcript t = algorithms::run_online(*alg, res.instance);
        RowOutput o;
        o.row.d = d;
        o.row.k = res.k;
        o.row.n = res.instance.num_steps();
        o.row.total_colors = t.num_colors_total();
        o.row.root_colors = res.root_colors(t);
        o.row.bound_value = res.d_even * res.k / 4.0;
        o.row.meets_bound = res.meets_root_bound(t);
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(t);
        return o;
    }

    RowOutput lookahead_row(std::uint64_t row, int d, int k, long long l) {
        adversary::LookaheadResult res =
            adversary::build_lookahead_phased(root_.split(row + 1), d, k, l);
        return lookahead_finish(row, std::move(res));
    }

    RowOutput lookahead_sized_row(std::uint64_t row, int d, long long n, long long l) {
        adversary::LookaheadResult res =
            adversary::build_lookahead_instance(root_.split(row + 1), d, spec_.c, n, l);
        return lookahead_finish(row, std::move(res));
    }

    RowOutput lookahead_finish(std::uint64_t row, adversary::LookaheadResult res) {
        auto alg = player(row);
        if (res.l > std::numeric_limits<int>::max())
            throw std::invalid_argument("lookahead window too large");
        Transcript t =
            algorithms::run_online_lookahead(*alg, res.instance, static_cast<int>(res.l));
        RowOutput o;
        o.row.d = res.d;
        o.row.k = res.k;
        o.row.n = res.instance.num_steps();
        o.row.l = res.l;
        o.row.total_colors = t.num_colors_total();
        o.row.root_colors = res.root_colors(t);
        o.row.bound_value = res.d_even * res.k / 4.0;
        o.row.meets_bound = res.meets_root_bound(t);
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(t);
        return o;
    }

    RowOutput buffer_row(std::uint64_t row, int d, double eps, long long n, long long b) {
        std::uint64_t trial_seed = alg_stream_.split(row).next_u64();
        BufferedPlayer p = BufferedPlayer::make(spec_.alg, trial_seed);
        adversary::BufferResult res =
            adversary::build_buffer_adversary(*p.buffered, d, eps, n, b, spec_.audit);
        RowOutput o;
        o.row.d = d;
        o.row.k = res.k_prime;
        o.row.n = res.instance.num_steps();
        o.row.b = b;
        o.row.total_colors = res.total_colors;
        o.row.root_colors = res.root_color_count;
        o.row.bound_value = res.d_even * res.k_prime / 8.0;
        o.row.meets_bound = 8LL * res.root_color_count >= 1LL * res.d_even * res.k_prime;
        o.graph = std::move(res.graph);
        o.instance = std::move(res.instance);
        o.transcript = std::move(res.transcript);
        return o;
    }

    GridSpec spec_;
    SplitRng root_;
    SplitRng alg_stream_;
    long long row_index_ = 0;

    void finalize(GridResult& out) const {
        std::ostringstream os;
        os << "# adversary=" << spec_.adversary << " alg=" << spec_.alg
           << " seed=" << spec_.seed << " trials=" << spec_.trials << '\n';
        os << "trial,d,k,n,l,b,total_colors,root_colors,bound_value,meets_bound\n";
        long long held = 0;
        long long rc_sum = 0;
        long long rc_min = 0;
        bool have_min = false;
        for (const GridRow& r : out.rows) {
            os << r.trial << ',' << r.d << ',' << r.k << ',' << r.n << ',';
            if (r.l >= 0) os << r.l;
            os << ',';
            if (r.b >= 0) os << r.b;
            os << ',' << r.total_colors << ',' << r.root_colors << ','
               << fmt_fixed(r.bound_value, 4) << ',' << (r.meets_bound ? 1 : 0) << '\n';
            held += r.meets_bound ? 1 : 0;
            rc_sum += r.root_colors;
            if (!have_min || r.root_colors < rc_min) rc_min = r.root_colors;
            have_min = true;
        }
        long long total = static_cast<long long>(out.rows.size());
        os << "# rows=" << total << " bounds_held=" << held << '\n';
        if (total > 0) {
            os << "# p_hat=" << fmt_fixed(static_cast<double>(held) / total, 6)
               << " mean_root_colors="
               << fmt_fixed(static_cast<double>(rc_sum) / static_cast<double>(total), 6)
               << " min_root_colors=" << rc_min << '\n';
        }
        out.csv = os.str();
    }
};

} // namespace

GridSpec grid_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("grid spec: bad json: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("grid spec: expected an object");
    GridSpec s;
    try {
        if (j.contains("adversary")) s.adversary = j["adversary"].get<std::string>();
        if (j.contains("alg")) s.alg = j["alg"].get<std::string>();
        if (j.contains("d")) s.d = as_list<int>(j["d"], "d");
        if (j.contains("k")) s.k = as_list<int>(j["k"], "k");
        if (j.contains("n")) s.n = as_list<long long>(j["n"], "n");
        if (j.contains("l")) s.l = as_list<long long>(j["l"], "l");
        if (j.contains("eps")) s.eps = as_list<double>(j["eps"], "eps");
        if (j.contains("b")) s.b = as_list<long long>(j["b"], "b");
        if (j.contains("c")) s.c = j["c"].get<double>();
        if (j.contains("trials")) s.trials = j["trials"].get<long long>();
        if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("threads")) s.threads = j["threads"].get<int>();
        if (j.contains("connector")) s.connector = j["connector"].get<bool>();
        if (j.contains("pad_to")) s.pad_to = j["pad_to"].get<long long>();
        if (j.contains("audit")) s.audit = j["audit"].get<bool>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("grid spec: bad field: ") + e.what());
    }
    return s;
}

std::string grid_spec_to_json(const GridSpec& s) {
    json j;
    j["adversary"] = s.adversary;
    j["alg"] = s.alg;
    j["d"] = s.d;
    if (!s.k.empty()) j["k"] = s.k;
    if (!s.n.empty()) j["n"] = s.n;
    if (!s.l.empty()) j["l"] = s.l;
    if (!s.eps.empty()) j["eps"] = s.eps;
    if (!s.b.empty()) j["b"] = s.b;
    j["c"] = s.c;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["threads"] = s.threads;
    j["connector"] = s.connector;
    j["pad_to"] = s.pad_to;
    j["audit"] = s.audit;
    return j.dump(2) + "\n";
}

GridResult run_grid(const GridSpec& spec, const RowObserver& observer) {
    GridRunner runner(spec);
    return runner.run(observer);
}

std::optional<stats::SlopeFit> root_color_slope(const GridResult& result) {
    std::map<long long, std::pair<long long, long long>> by_n; // n -> (sum, count)
    for (const GridRow& r : result.rows) {
        auto& acc = by_n[r.n];
        acc.first += r.root_colors;
        acc.second += 1;
    }
    if (by_n.size() < 3) return std::nullopt;
    std::vector<std::pair<long long, double>> points;
    points.reserve(by_n.size());
    for (const auto& [n, acc] : by_n)
        points.emplace_back(n, static_cast<double>(acc.first) / static_cast<double>(acc.second));
    return stats::fit_log_slope(points);
}

} // namespace onlinecol::harness
