#include "onlinecol/adversary_ext.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onlinecol::adversary {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("adversary invariant failed: " + what);
}

long long pow12(int k) {
    long long p = 1;
    while (k-- > 0) p *= 12;
    return p;
}

// Presents a sampled structure level by level instead of depth first.
class PhasedEmitter {
public:
    PhasedEmitter(int d, long long l) : d_(d), d2_(d % 2 == 0 ? d : d - 1), l_(l) {}

    LookaheadResult run(RandNode structure, int k) {
        by_level_.assign(k + 1, {});
        collect(structure);

        LookaheadResult out;
        for (RandNode* node : by_level_[1]) emit_base(*node);
        out.real_phase_ends.push_back(instance_.num_steps());
        emit_fillers();
        instance_.close_phase();
        for (int j = 2; j <= k; ++j) {
            for (RandNode* node : by_level_[j - 1]) finalize_roots(*node);
            for (RandNode* node : by_level_[j]) emit_joined_cliques(*node);
            out.real_phase_ends.push_back(instance_.num_steps());
            emit_fillers();
            instance_.close_phase();
        }
        finalize_roots(structure);

        out.graph = graph_;
        out.forest = std::move(forest_);
        out.top_components = structure.component_root_nodes;
        out.root_vertices = structure.component_roots;
        out.d = d_;
        out.k = k;
        out.d_even = d2_;
        out.l = l_;
        out.structure_size = structure_size_;
        require(structure_size_ <= static_cast<long long>(d_) * (pow12(k) - 1),
                "size bound d*(12^k - 1)");
        out.instance = std::move(instance_);
        if (auto err = verify_phase_isolation(out.instance, out.graph, l_, out.real_phase_ends))
            throw std::logic_error("phase isolation violated: " + *err);
        return out;
    }

    void pad_to(LookaheadResult& out, long long n) {
        bool grew = out.instance.num_steps() < n;
        while (out.instance.num_steps() < n) {
            VertexId v = out.graph.add_vertex();
            out.graph.add_edge(v, 0);
            out.instance.push_arrival({v, {0}});
        }
        if (grew) out.instance.close_phase();
        out.padded_to = n;
    }

private:
    void collect(RandNode& node) {
        for (auto& child : node.children) collect(child);
        by_level_[node.level].push_back(&node);
    }

    VertexId push(std::vector<VertexId> back) {
        std::sort(back.begin(), back.end());
        VertexId v = graph_.add_vertex();
        for (VertexId u : back) graph_.add_edge(v, u);
        instance_.push_arrival({v, std::move(back)});
        ++structure_size_;
        return v;
    }

    void emit_fillers() {
        for (long long i = 0; i < l_; ++i) {
            VertexId v = graph_.add_vertex();
            instance_.push_arrival({v, {}});
        }
    }

    void emit_base(RandNode& node) {
        std::vector<VertexId> back;
        node.base_vertices.clear();
        for (int i = 0; i < d2_; ++i) {
            back.push_back(push(back));
            node.base_vertices.push_back(back.back());
        }
        std::vector<VertexId> a(back.begin(), back.begin() + d2_ / 2);
        std::vector<VertexId> b(back.begin() + d2_ / 2, back.end());
        int na = forest_.add_node(std::move(a));
        int nb = forest_.add_node(std::move(b));
        forest_.set_parent(nb, na);
        if (d_ != d2_) {
            VertexId ext = push(back);
            node.base_vertices.push_back(ext);
            forest_.add_member(nb, ext);
        }
        node.component_root_nodes = {na};
        node.component_roots = forest_.root_vertices(node.component_root_nodes);
    }

    void emit_joined_cliques(RandNode& node) {
        for (int i = 0; i < 6; ++i) {
            if (!node.bits[i]) continue;
            RandNode& left = node.children[2 * i];
            auto& clique = node.joined_cliques[i];
            clique.clear();
            std::vector<VertexId> back = left.component_roots;
            for (int j = 0; j < d2_ / 2; ++j) {
                VertexId v = push(back);
                back.push_back(v);
                clique.push_back(v);
            }
            int rnode = forest_.add_node(clique);
            for (int c : left.component_root_nodes) forest_.set_parent(c, rnode);
        }
    }

    // component roots once all of the node's own cliques exist
    void finalize_roots(RandNode& node) {
        if (node.level == 1) return;
        node.component_root_nodes.clear();
        for (int i = 0; i < 6; ++i) {
            RandNode& left = node.children[2 * i];
            RandNode& right = node.children[2 * i + 1];
            if (node.bits[i]) {
                int rnode = forest_parent_of(left.component_root_nodes.front());
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
        node.component_roots = forest_.root_vertices(node.component_root_nodes);
    }

    int forest_parent_of(int node) const {
        int p = forest_.parent(node);
        if (p < 0) throw std::logic_error("joined clique missing for a taken pair");
        return p;
    }

    int d_;
    int d2_;
    long long l_;
    long long structure_size_ = 0;
    std::vector<std::vector<RandNode*>> by_level_;
    GraphData graph_;
    OnlineInstance instance_;
    CliqueForest forest_;
};

} // namespace

bool LookaheadResult::meets_root_bound(const Transcript& t) const {
    return 4LL * root_colors(t) >= static_cast<long long>(d_even) * k;
}

int LookaheadResult::root_colors(const Transcript& t) const {
    return static_cast<int>(t.colors_used({root_vertices.data(), root_vertices.size()}).size());
}

LookaheadResult build_lookahead_phased(SplitRng rng, int d, int k, long long l) {
    if (d < 2) throw std::invalid_argument("build_lookahead_phased: d must be >= 2");
    if (k < 1) throw std::invalid_argument("build_lookahead_phased: k must be >= 1");
    if (l < 0) throw std::invalid_argument("build_lookahead_phased: l must be >= 0");
    PhasedEmitter emitter(d, l);
    return emitter.run(sample_structure(rng, k), k);
}

LookaheadResult build_lookahead_instance(SplitRng rng, int d, double c, long long n,
                                         long long l) {
    if (d < 2) throw std::invalid_argument("build_lookahead_instance: d must be >= 2");
    if (c <= 0) throw std::invalid_argument("build_lookahead_instance: c must be positive");
    double min_n = std::max(12.0 * d * d, d * std::pow(12.0, 2.0 * c));
    if (static_cast<double>(n) < min_n - 1e-9)
        throw std::invalid_argument("build_lookahead_instance: n below max(12d^2, d*12^(2c))");
    double log12 = std::log2(static_cast<double>(n) / d) / std::log2(12.0);
    if (l < 0 || static_cast<double>(l) > c * static_cast<double>(n) / log12 + 1e-9)
        throw std::invalid_argument("build_lookahead_instance: l exceeds c*n/log12(n/d)");
    int k = static_cast<int>(std::floor(2.0 / (3.0 * c) * log12 + 1e-9));
    require(k >= 1, "computed k >= 1");
    require(static_cast<double>(d) * static_cast<double>(pow12(k)) +
                    static_cast<double>(k) * static_cast<double>(l) <=
                static_cast<double>(n) + 1e-9,
            "construction exceeds n");

    PhasedEmitter emitter(d, l);
    LookaheadResult out = emitter.run(sample_structure(rng, k), k);
    emitter.pad_to(out, n);
    return out;
}

std::optional<std::string> verify_phase_isolation(const OnlineInstance& inst,
                                                  const GraphData& g, long long l,
                                                  const std::vector<int>& real_phase_ends) {
    const auto& ends = inst.phase_ends();
    if (real_phase_ends.size() > ends.size()) return "more real blocks than phases";
    int prev = 0;
    for (std::size_t j = 0; j < real_phase_ends.size(); ++j) {
        int real_end = real_phase_ends[j];
        int phase_end = ends[j];
        if (real_end < prev || real_end > phase_end)
            return "real block of phase " + std::to_string(j + 1) + " out of bounds";
        if (phase_end - real_end != l)
            return "phase " + std::to_string(j + 1) + " has " +
                   std::to_string(phase_end - real_end) + " fillers, expected " +
                   std::to_string(l);
        for (int t = real_end; t < phase_end; ++t) {
            const Arrival& a = inst.arrival(t);
            if (!a.back_edges.empty() || g.degree(a.vertex) != 0)
                return "filler at step " + std::to_string(t) + " is not isolated";
        }
        prev = phase_end;
    }
    return std::nullopt;
}

namespace {

struct LiveSubgraph {
    int level = 1;
    std::vector<int> comp_nodes;
    std::vector<VertexId> roots; // sorted
};

struct Snapshot {
    std::vector<ColorId> colors; // by vertex, 0 = uncolored

    int colored_among(const std::vector<VertexId>& vs) const {
        int c = 0;
        for (VertexId v : vs)
            if (colors[v] != 0) ++c;
        return c;
    }
    int distinct_colors(const std::vector<VertexId>& vs) const {
        std::set<ColorId> s;
        for (VertexId v : vs)
            if (colors[v] != 0) s.insert(colors[v]);
        return static_cast<int>(s.size());
    }
};

} // namespace

BufferResult build_buffer_adversary(algorithms::BufferedAlgorithm& alg, int d, double eps,
                                    long long n, long long b, bool audit) {
    if (d < 2) throw std::invalid_argument("build_buffer_adversary: d must be >= 2");
    if (eps <= 0.0 || eps > 1.0)
        throw std::invalid_argument("build_buffer_adversary: eps must be in (0,1]");
    const int d2 = d % 2 == 0 ? d : d - 1;
    const double capacity = std::pow(static_cast<double>(n), 1.0 - eps);
    if (b < 0 || static_cast<double>(b) > capacity + 1e-9)
        throw std::invalid_argument("build_buffer_adversary: requires b <= n^(1-eps)");
    if (4.0 * capacity < static_cast<double>(d2))
        throw std::invalid_argument("build_buffer_adversary: requires d <= 4*n^(1-eps)");
    int k = 0;
    while (static_cast<long long>(d) << (k + 1) <= n) ++k;
    int k_prime = static_cast<int>(
        std::floor((k - std::log2(4.0 * capacity / d2)) / 2.0 + 1e-9));
    if (k_prime < 1)
        throw std::invalid_argument("build_buffer_adversary: n too small for k' >= 1 "
                                    "(needs roughly n >= 2^(7/eps))");
    if (k < 1 || (1 << (k - 1)) < 1)
        throw std::invalid_argument("build_buffer_adversary: n too small");

    algorithms::BufferedSession session(alg, static_cast<int>(b));
    CliqueForest forest;
    std::vector<LiveSubgraph> pool;

    // phase 1: 2^(k-1) base cliques, presented copy by copy
    const long long copies = 1LL << (k - 1);
    for (long long i = 0; i < copies; ++i) {
        const int start = session.num_presented();
        std::vector<VertexId> back;
        for (int j = 0; j < d2; ++j) {
            session.present(back);
            back.push_back(start + j);
        }
        std::vector<VertexId> a(back.begin(), back.begin() + d2 / 2);
        std::vector<VertexId> bnode(back.begin() + d2 / 2, back.end());
        int na = forest.add_node(a);
        int nb = forest.add_node(bnode);
        forest.set_parent(nb, na);
        if (d != d2) {
            session.present(back);
            forest.add_member(nb, session.num_presented() - 1);
        }
        pool.push_back({1, {na}, std::move(a)});
    }

    BufferResult out;
    out.d = d;
    out.d_even = d2;
    out.eps = eps;
    out.n = n;
    out.b = b;
    out.k = k;
    out.k_prime = k_prime;

    auto take_snapshot = [&] {
        Snapshot snap;
        snap.colors.resize(session.num_presented());
        for (int v = 0; v < session.num_presented(); ++v) snap.colors[v] = session.color_of(v);
        return snap;
    };
    auto eval_phase = [&](int level, const std::vector<int>& considered, const Snapshot& snap,
                          int case2) {
        BufferPhaseReport rep;
        rep.level = level;
        rep.considered = static_cast<int>(considered.size());
        rep.case2_cliques = case2;
        rep.required_good = static_cast<int>(1LL << (k - 2 * level));
        std::vector<int> good;
        for (int idx : considered) {
            const LiveSubgraph& s = pool[idx];
            bool progressed =
                2LL * snap.colored_among(s.roots) >= static_cast<long long>(s.roots.size());
            if (progressed) ++rep.progressed;
            if (progressed &&
                8LL * snap.distinct_colors(s.roots) >= static_cast<long long>(d2) * level)
                good.push_back(idx);
        }
        rep.good = static_cast<int>(good.size());
        require(static_cast<double>(d2) * std::exp2(k - 2 * level) / 4.0 >= capacity - 1e-9,
                "buffer capacity inequality");
        require(rep.good >= rep.required_good,
                "good subgraphs below 2^(k-2j) at phase " + std::to_string(level));
        out.phases.push_back(rep);
        return good;
    };

    std::vector<int> considered(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) considered[i] = static_cast<int>(i);
    Snapshot snap = take_snapshot();
    std::vector<int> good = eval_phase(1, considered, snap, 0);

    for (int j = 2; j <= k_prime; ++j) {
        // select the first 2^(k-2(j-1)) good subgraphs by id and pair them
        const int need = static_cast<int>(1LL << (k - 2 * (j - 1)));
        std::vector<int> selected(good.begin(), good.begin() + need);
        int case2 = 0;
        std::vector<int> next;
        for (std::size_t p = 0; p + 1 < selected.size(); p += 2) {
            LiveSubgraph& lhs = pool[selected[p]];
            LiveSubgraph& rhs = pool[selected[p + 1]];
            std::vector<VertexId> both = lhs.roots;
            both.insert(both.end(), rhs.roots.begin(), rhs.roots.end());
            LiveSubgraph merged;
            merged.level = j;
            if (8LL * snap.distinct_colors(both) >= static_cast<long long>(d2) * j) {
                merged.comp_nodes = lhs.comp_nodes;
                merged.comp_nodes.insert(merged.comp_nodes.end(), rhs.comp_nodes.begin(),
                                         rhs.comp_nodes.end());
                std::sort(both.begin(), both.end());
                merged.roots = std::move(both);
            } else {
                ++case2;
                const int start = session.num_presented();
                std::vector<VertexId> back = lhs.roots;
                std::vector<VertexId> members;
                for (int v = 0; v < d2 / 2; ++v) {
                    session.present(back);
                    back.push_back(start + v);
                    members.push_back(start + v);
                }
                int rnode = forest.add_node(members);
                for (int c : lhs.comp_nodes) forest.set_parent(c, rnode);
                merged.comp_nodes = {rnode};
                merged.comp_nodes.insert(merged.comp_nodes.end(), rhs.comp_nodes.begin(),
                                         rhs.comp_nodes.end());
                merged.roots = members;
                merged.roots.insert(merged.roots.end(), rhs.roots.begin(), rhs.roots.end());
                std::sort(merged.roots.begin(), merged.roots.end());
            }
            next.push_back(static_cast<int>(pool.size()));
            pool.push_back(std::move(merged));
        }
        snap = take_snapshot();
        good = eval_phase(j, next, snap, case2);
    }

    out.structure_size = session.num_presented();
    require(out.structure_size <= n, "structure exceeds n");
    while (session.num_presented() < n) session.present({0});
    session.finish();

    out.root_color_count = 0;
    for (int idx : good) {
        int colors = static_cast<int>(
            session.transcript().colors_used({pool[idx].roots.data(), pool[idx].roots.size()})
                .size());
        if (colors > out.root_color_count) {
            out.root_color_count = colors;
            out.root_vertices = pool[idx].roots;
        }
    }
    out.total_colors = session.transcript().num_colors_total();
    require(8LL * out.root_color_count >= static_cast<long long>(d2) * k_prime,
            "root colors below d*k'/8");
    require(out.total_colors >= out.root_color_count, "total colors below root colors");

    if (audit) {
        if (auto err = forest.audit(session.graph(), d2 / 2, d != d2))
            throw std::logic_error("forest audit failed: " + *err);
    }
    out.graph = session.graph();
    out.instance = session.instance();
    out.transcript = session.transcript();
    out.forest = std::move(forest);
    return out;
}

} // namespace onlinecol::adversary
