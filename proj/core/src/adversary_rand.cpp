#include "onlinecol/adversary_rand.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "onlinecol/stats.hpp"

namespace onlinecol::adversary {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("sampler invariant failed: " + what);
}

long long pow12(int k) {
    long long p = 1;
    while (k-- > 0) p *= 12;
    return p;
}

// Emits a structure depth first, assigning vertex ids in presentation
// order and recording the clique forest.
class RandEmitter {
public:
    RandEmitter(int d, bool audit) : d_(d), d2_(d % 2 == 0 ? d : d - 1), audit_(audit) {}

    void emit(RandNode& node) {
        const int node_mark = forest_.num_nodes();
        if (node.level == 1) {
            emit_base(node);
        } else {
            node.component_root_nodes.clear();
            for (int i = 0; i < 6; ++i) {
                RandNode& left = node.children[2 * i];
                RandNode& right = node.children[2 * i + 1];
                emit(left);
                emit(right);
                if (node.bits[i]) {
                    auto& clique = node.joined_cliques[i];
                    clique.clear();
                    const int start = next_id();
                    std::vector<VertexId> back = left.component_roots;
                    for (int j = 0; j < d2_ / 2; ++j) {
                        push(back);
                        back.push_back(start + j);
                        clique.push_back(start + j);
                    }
                    int rnode = forest_.add_node(clique);
                    for (int c : left.component_root_nodes) forest_.set_parent(c, rnode);
                    node.component_root_nodes.push_back(rnode);
                } else {
                    node.component_root_nodes.insert(node.component_root_nodes.end(),
                                                     left.component_root_nodes.begin(),
                                                     left.component_root_nodes.end());
                }
                node.component_root_nodes.insert(node.component_root_nodes.end(),
                                                 right.component_root_nodes.begin(),
                                                 right.component_root_nodes.end());
            }
        }
        node.component_roots = forest_.root_vertices(node.component_root_nodes);
        if (audit_) {
            std::vector<int> scope;
            for (int i = node_mark; i < forest_.num_nodes(); ++i) scope.push_back(i);
            if (auto err = forest_.audit(graph_, d2_ / 2, d_ != d2_, scope))
                throw std::logic_error("forest audit failed: " + *err);
        }
    }

    OnlineInstance take_instance() { return std::move(instance_); }
    CliqueForest take_forest() { return std::move(forest_); }
    GraphData take_graph() { return std::move(graph_); }

private:
    int next_id() const { return instance_.num_steps(); }

    void push(std::vector<VertexId> back) {
        std::sort(back.begin(), back.end());
        VertexId v = graph_.add_vertex();
        for (VertexId u : back) graph_.add_edge(v, u);
        instance_.push_arrival({v, std::move(back)});
    }

    void emit_base(RandNode& node) {
        const int start = next_id();
        node.base_vertices.clear();
        std::vector<VertexId> back;
        for (int i = 0; i < d2_; ++i) {
            push(back);
            back.push_back(start + i);
            node.base_vertices.push_back(start + i);
        }
        std::vector<VertexId> a(back.begin(), back.begin() + d2_ / 2);
        std::vector<VertexId> b(back.begin() + d2_ / 2, back.end());
        int na = forest_.add_node(std::move(a));
        int nb = forest_.add_node(std::move(b));
        forest_.set_parent(nb, na);
        if (d_ != d2_) {
            // odd d: the extending vertex arrives with its copy
            push(back);
            node.base_vertices.push_back(next_id() - 1);
            forest_.add_member(nb, next_id() - 1);
        }
        node.component_root_nodes = {na};
    }

    int d_;
    int d2_;
    bool audit_;
    OnlineInstance instance_;
    GraphData graph_;
    CliqueForest forest_;
};

RandResult materialize(RandNode structure, int d, int k, bool audit) {
    RandEmitter emitter(d, audit);
    emitter.emit(structure);
    RandResult out;
    out.instance = emitter.take_instance();
    out.forest = emitter.take_forest();
    out.graph = emitter.take_graph();
    out.top_components = structure.component_root_nodes;
    out.root_vertices = structure.component_roots;
    out.structure = std::move(structure);
    out.d = d;
    out.k = k;
    out.d_even = d % 2 == 0 ? d : d - 1;
    out.structure_size = out.graph.num_vertices();
    require(out.structure_size <= static_cast<long long>(d) * (pow12(k) - 1),
            "size bound d*(12^k - 1)");
    return out;
}

} // namespace

bool RandResult::meets_root_bound(const Transcript& t) const {
    return 4LL * root_colors(t) >= static_cast<long long>(d_even) * k;
}

int RandResult::root_colors(const Transcript& t) const {
    return static_cast<int>(t.colors_used({root_vertices.data(), root_vertices.size()}).size());
}

RandNode sample_structure(SplitRng rng, int k) {
    RandNode node;
    node.level = k;
    if (k == 1) return node;
    for (int i = 0; i < 6; ++i) node.bits[i] = rng.next_bit() ? 1 : 0;
    node.children.reserve(12);
    for (int c = 0; c < 12; ++c)
        node.children.push_back(sample_structure(rng.split(c + 1), k - 1));
    return node;
}

RandResult sample_gk(SplitRng rng, int d, int k, bool audit) {
    if (d < 2) throw std::invalid_argument("sample_gk: d must be >= 2");
    if (k < 1) throw std::invalid_argument("sample_gk: k must be >= 1");
    return materialize(sample_structure(rng, k), d, k, audit);
}

std::vector<RandResult> enumerate_gk_tiny(int d, int k) {
    if (k < 1 || k > 2)
        throw std::invalid_argument("enumerate_gk_tiny: only k <= 2 is enumerable");
    std::vector<RandResult> out;
    if (k == 1) {
        RandNode node;
        node.level = 1;
        out.push_back(materialize(std::move(node), d, k, true));
        return out;
    }
    for (int bitset = 0; bitset < 64; ++bitset) {
        RandNode node;
        node.level = 2;
        for (int i = 0; i < 6; ++i) node.bits[i] = (bitset >> i) & 1;
        node.children.assign(12, RandNode{});
        out.push_back(materialize(std::move(node), d, k, true));
    }
    return out;
}

TrialFactory make_trial_factory(const std::string& spec, SplitRng stream) {
    algorithms::make_algorithm(spec); // validate eagerly
    std::string base = spec.substr(0, spec.find(':'));
    if (base == "random-feasible") {
        return [stream](std::uint64_t trial) -> std::unique_ptr<algorithms::OnlineAlgorithm> {
            return std::make_unique<algorithms::RandomFeasible>(stream.split(trial).next_u64());
        };
    }
    return [spec](std::uint64_t) { return algorithms::make_algorithm(spec); };
}

ProbabilityEstimate estimate_root_color_probability(const TrialFactory& factory, int d, int k,
                                                    long long trials, SplitRng rng, int threads,
                                                    const TrialObserver& observer) {
    if (trials <= 0) throw std::invalid_argument("estimate: trials must be positive");
    threads = std::max(1, threads);
    std::atomic<long long> successes{0};
    std::atomic<long long> color_sum{0};
    auto worker = [&](int tid) {
        long long my_success = 0, my_colors = 0;
        for (long long t = tid; t < trials; t += threads) {
            RandResult sample = sample_gk(rng.split(static_cast<std::uint64_t>(t)), d, k, false);
            auto alg = factory(static_cast<std::uint64_t>(t));
            Transcript run = algorithms::run_online(*alg, sample.instance);
            int rc = sample.root_colors(run);
            my_colors += rc;
            if (sample.meets_root_bound(run)) ++my_success;
            if (observer) observer(static_cast<std::uint64_t>(t), sample, run);
        }
        successes += my_success;
        color_sum += my_colors;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    ProbabilityEstimate est;
    est.trials = trials;
    est.successes = successes.load();
    est.p_hat = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.wilson_lower_99 = stats::wilson_lower_bound(est.successes, trials);
    est.mean_root_colors = static_cast<double>(color_sum.load()) / static_cast<double>(trials);
    return est;
}

RandResult build_sized_rand(int d, long long n, SplitRng rng, bool audit) {
    if (d < 2) throw std::invalid_argument("build_sized_rand: d must be >= 2");
    if (n < 12LL * d * d)
        throw std::invalid_argument("build_sized_rand: requires n >= 12*d^2");
    int k = 0;
    while (static_cast<long long>(d) * pow12(k + 1) <= n) ++k;
    RandResult out = sample_gk(rng, d, k, audit);
    require(out.structure_size <= n, "structure exceeds n");
    while (out.instance.num_steps() < n)
        out.instance.push_arrival({out.instance.num_steps(), {0}});
    out.graph = out.instance.to_graph();
    out.padded_to = n;
    return out;
}

} // namespace onlinecol::adversary
