#include "onlinecol/adversary_det.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace onlinecol::adversary {

using algorithms::ImmediateSession;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("adversary invariant failed: " + what);
}

std::vector<VertexId> concat_sorted(std::vector<VertexId> a, const std::vector<VertexId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

class DetBuilder {
public:
    DetBuilder(ImmediateSession& session, int d_even, bool audit)
        : session_(session), d2_(d_even), audit_(audit) {}

    // Presents one level-k construction; returns the root node index of
    // each of its trees.
    std::vector<int> build(int level) {
        const int node_mark = forest_.num_nodes();
        const int vertex_mark = session_.num_presented();
        std::vector<int> comps;
        if (level == 1) {
            comps = {present_base_copy()};
        } else {
            std::vector<int> left = build(level - 1);
            std::vector<int> right = build(level - 1);
            auto lroots = forest_.root_vertices(left);
            auto rroots = forest_.root_vertices(right);
            auto union_colors = session_.colors_on(concat_sorted(lroots, rroots));
            if (4LL * static_cast<long long>(union_colors.size()) >=
                static_cast<long long>(d2_) * level) {
                comps = std::move(left);
                comps.insert(comps.end(), right.begin(), right.end());
            } else {
                int before = static_cast<int>(session_.colors_on(rroots).size());
                int rnode = present_joined_clique(lroots);
                for (int c : left) forest_.set_parent(c, rnode);
                comps = {rnode};
                comps.insert(comps.end(), right.begin(), right.end());
                // Each of the d2/2 fresh clique vertices had every root of
                // the left part as a colored neighbor, so few of its colors
                // can already occur on the right part's roots.
                int after = static_cast<int>(
                    session_.colors_on(forest_.root_vertices(comps)).size());
                require(4LL * (after - before) >= d2_,
                        "case-2 gain below d/4 at level " + std::to_string(level));
            }
        }
        auto roots = forest_.root_vertices(comps);
        root_colors_ = static_cast<int>(session_.colors_on(roots).size());
        require(4LL * root_colors_ >= static_cast<long long>(d2_) * level,
                "root colors below d*k/4 at level " + std::to_string(level));
        long long size = session_.num_presented() - vertex_mark;
        require(size <= static_cast<long long>(d2_) / 2 * ((2LL << level) - 1),
                "size bound exceeded at level " + std::to_string(level));
        if (audit_) {
            std::vector<int> scope(forest_.num_nodes() - node_mark);
            for (std::size_t i = 0; i < scope.size(); ++i) scope[i] = node_mark + static_cast<int>(i);
            if (auto err = forest_.audit(session_.graph(), d2_ / 2, false, scope))
                throw std::logic_error("forest audit failed: " + *err);
        }
        return comps;
    }

    // One clique presented vertex by vertex; first half becomes the root
    // node, second half its child.
    int present_base_copy() {
        const int start = session_.num_presented();
        std::vector<VertexId> back;
        for (int i = 0; i < d2_; ++i) {
            session_.present(back);
            back.push_back(start + i);
        }
        std::vector<VertexId> a(back.begin(), back.begin() + d2_ / 2);
        std::vector<VertexId> b(back.begin() + d2_ / 2, back.end());
        int na = forest_.add_node(std::move(a));
        int nb = forest_.add_node(std::move(b));
        forest_.set_parent(nb, na);
        base_copies_.emplace_back(na, nb);
        return na;
    }

    // A d2/2-clique whose every vertex is joined to all of `targets`.
    int present_joined_clique(const std::vector<VertexId>& targets) {
        const int start = session_.num_presented();
        std::vector<VertexId> back = targets;
        std::vector<VertexId> members;
        for (int i = 0; i < d2_ / 2; ++i) {
            session_.present(back);
            back.push_back(start + i);
            members.push_back(start + i);
        }
        return forest_.add_node(std::move(members));
    }

    // Odd d: one extra vertex per base copy, adjacent to the whole copy;
    // it joins the copy's non-root node, growing it to d2/2 + 1.
    void extend_base_copies() {
        for (auto [na, nb] : base_copies_) {
            std::vector<VertexId> back(forest_.node_members(na).begin(),
                                       forest_.node_members(na).end());
            back.insert(back.end(), forest_.node_members(nb).begin(),
                        forest_.node_members(nb).end());
            std::sort(back.begin(), back.end());
            require(back.size() == static_cast<std::size_t>(d2_), "extension target size");
            session_.present(back);
            forest_.add_member(nb, session_.num_presented() - 1);
        }
    }

    CliqueForest take_forest() { return std::move(forest_); }
    int root_colors() const { return root_colors_; }
    int num_base_copies() const { return static_cast<int>(base_copies_.size()); }

private:
    ImmediateSession& session_;
    CliqueForest forest_;
    std::vector<std::pair<int, int>> base_copies_;
    int d2_;
    bool audit_;
    int root_colors_ = 0;
};

} // namespace

DetResult build_gk_det(algorithms::OnlineAlgorithm& alg, const DetOptions& opt) {
    if (opt.d < 2) throw std::invalid_argument("build_gk_det: d must be >= 2");
    if (opt.k < 1) throw std::invalid_argument("build_gk_det: k must be >= 1");
    const int d2 = opt.d % 2 == 0 ? opt.d : opt.d - 1;

    ImmediateSession session(alg);
    DetBuilder builder(session, d2, opt.audit);
    std::vector<int> comps = builder.build(opt.k);
    const int core = session.num_presented();
    require(builder.num_base_copies() == 1 << (opt.k - 1), "base copy count");

    if (opt.d % 2 != 0) builder.extend_base_copies();

    DetResult out;
    out.d = opt.d;
    out.k = opt.k;
    out.d_even = d2;
    out.core_size = core;
    out.base_copies = builder.num_base_copies();
    out.forest = builder.take_forest();
    out.top_components = std::move(comps);
    out.root_vertices = out.forest.root_vertices(out.top_components);
    out.root_color_count = static_cast<int>(session.colors_on(out.root_vertices).size());
    require(4LL * out.root_color_count >= static_cast<long long>(d2) * opt.k,
            "final root colors below d*k/4");

    if (opt.connector) {
        std::vector<VertexId> touch;
        for (int node : out.top_components)
            touch.push_back(*std::min_element(out.forest.node_members(node).begin(),
                                              out.forest.node_members(node).end()));
        std::sort(touch.begin(), touch.end());
        session.present(touch);
        out.connector_vertex = session.num_presented() - 1;
    }
    out.structure_size = session.num_presented();
    require(out.structure_size <= static_cast<long long>(opt.d) << opt.k,
            "structure exceeds d * 2^k");

    if (opt.pad_to > 0) {
        if (opt.pad_to < out.structure_size)
            throw std::invalid_argument("build_gk_det: pad_to smaller than the construction");
        while (session.num_presented() < opt.pad_to) session.present({0});
    }

    if (opt.audit) {
        bool odd = opt.d % 2 != 0;
        if (auto err = out.forest.audit(session.graph(), d2 / 2, odd))
            throw std::logic_error("final forest audit failed: " + *err);
    }

    out.graph = session.graph();
    out.instance = session.instance();
    out.transcript = session.transcript();
    return out;
}

DetResult build_sized_det(algorithms::OnlineAlgorithm& alg, int d, long long n, bool audit) {
    if (d < 2) throw std::invalid_argument("build_sized_det: d must be >= 2");
    if (n < 2LL * d * d)
        throw std::invalid_argument("build_sized_det: requires n >= 2*d^2");
    int k = 0;
    while (static_cast<long long>(d) << (k + 1) <= n) ++k;

    DetOptions opt;
    opt.d = d;
    opt.k = k;
    opt.audit = audit;
    opt.pad_to = n;
    DetResult out = build_gk_det(alg, opt);
    require(32.0 * out.root_color_count >= d * std::log2(static_cast<double>(n)) - 1e-9,
            "root colors below d*log2(n)/32");
    return out;
}

} // namespace onlinecol::adversary
