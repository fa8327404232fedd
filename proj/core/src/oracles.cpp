#include "onlinecol/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace onlinecol::oracles {

namespace {

// Positions of each vertex in an order.
std::vector<int> positions_of(const std::vector<VertexId>& order, int n) {
    std::vector<int> pos(n, -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
    return pos;
}

// Maximum cardinality search: repeatedly select an unselected vertex with
// the most selected neighbors. Returns the selection order.
std::vector<VertexId> mcs_order(const GraphData& g) {
    const int n = g.num_vertices();
    std::vector<int> weight(n, 0);
    std::vector<char> selected(n, 0);
    std::vector<std::vector<VertexId>> bucket(n + 1);
    for (int v = 0; v < n; ++v) bucket[0].push_back(v);
    int top = 0;
    std::vector<VertexId> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        while (top > 0 && bucket[top].empty()) --top;
        while (!bucket[top].empty()) {
            VertexId v = bucket[top].back();
            if (!selected[v] && weight[v] == top) break;
            bucket[top].pop_back(); // stale entry
            while (top > 0 && bucket[top].empty()) --top;
        }
        VertexId v = bucket[top].back();
        bucket[top].pop_back();
        selected[v] = 1;
        order.push_back(v);
        for (VertexId u : g.neighbors(v)) {
            if (selected[u]) continue;
            ++weight[u];
            bucket[weight[u]].push_back(u);
            top = std::max(top, weight[u]);
        }
    }
    return order;
}

// First vertex (by PEO position) whose later neighborhood is not a clique,
// together with a non-adjacent pair inside it. first = -1 when none.
struct PeoDefect {
    VertexId v = -1, u = -1, w = -1;
};

PeoDefect find_peo_defect(const GraphData& g, const std::vector<VertexId>& peo) {
    const int n = g.num_vertices();
    std::vector<int> pos = positions_of(peo, n);
    for (int i = 0; i < n; ++i) {
        VertexId v = peo[i];
        std::vector<VertexId> later;
        for (VertexId u : g.neighbors(v))
            if (pos[u] > i) later.push_back(u);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!g.has_edge(later[a], later[b])) return {v, later[a], later[b]};
    }
    return {};
}

// Shortest u-w path avoiding N[v] (except at the endpoints); empty if none.
std::vector<VertexId> path_outside_closed_neighborhood(const GraphData& g, VertexId v,
                                                       VertexId u, VertexId w) {
    const int n = g.num_vertices();
    std::vector<char> blocked(n, 0);
    blocked[v] = 1;
    for (VertexId x : g.neighbors(v)) blocked[x] = 1;
    blocked[u] = 0;
    blocked[w] = 0;
    std::vector<VertexId> prev(n, -1);
    std::deque<VertexId> q{u};
    std::vector<char> seen(n, 0);
    seen[u] = 1;
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop_front();
        if (x == w) break;
        for (VertexId y : g.neighbors(x)) {
            if (blocked[y] || seen[y]) continue;
            if (x == u && y == w) continue; // u-w edge would make a triangle, not a hole
            seen[y] = 1;
            prev[y] = x;
            q.push_back(y);
        }
    }
    if (!seen[w]) return {};
    std::vector<VertexId> path;
    for (VertexId x = w; x != -1; x = prev[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

bool cycle_is_induced(const GraphData& g, const std::vector<VertexId>& cyc) {
    const int len = static_cast<int>(cyc.size());
    if (len < 4) return false;
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == len - 1);
            if (g.has_edge(cyc[i], cyc[j]) != consecutive) return false;
        }
    return true;
}

// A hole through v, built from a non-adjacent pair u,w in N(v) joined
// outside N[v]. Empty if this particular triple yields none.
std::vector<VertexId> hole_from_triple(const GraphData& g, VertexId v, VertexId u, VertexId w) {
    auto path = path_outside_closed_neighborhood(g, v, u, w);
    if (path.empty()) return {};
    std::vector<VertexId> cyc{v};
    cyc.insert(cyc.end(), path.begin(), path.end());
    if (!cycle_is_induced(g, cyc))
        throw std::logic_error("hole extraction produced a non-induced cycle");
    return cyc;
}

std::vector<VertexId> find_hole(const GraphData& g, const PeoDefect& hint) {
    if (hint.v != -1) {
        auto cyc = hole_from_triple(g, hint.v, hint.u, hint.w);
        if (!cyc.empty()) return cyc;
    }
    // Exhaustive fallback; succeeds on every non-chordal graph because the
    // triple made of a hole vertex and its two cycle neighbors qualifies.
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (g.has_edge(nb[a], nb[b])) continue;
                auto cyc = hole_from_triple(g, v, nb[a], nb[b]);
                if (!cyc.empty()) return cyc;
            }
    }
    return {};
}

} // namespace

ChordalityResult check_chordal(const GraphData& g) {
    const int n = g.num_vertices();
    std::vector<VertexId> selection = mcs_order(g);
    std::vector<VertexId> peo(selection.rbegin(), selection.rend());
    PeoDefect defect = find_peo_defect(g, peo);
    if (defect.v == -1) {
        PeoCertificate cert;
        cert.order = std::move(peo);
        std::vector<int> pos = positions_of(cert.order, n);
        int omega = n > 0 ? 1 : 0;
        for (int i = 0; i < n; ++i) {
            int later = 0;
            for (VertexId u : g.neighbors(cert.order[i]))
                if (pos[u] > i) ++later;
            omega = std::max(omega, later + 1);
        }
        cert.omega = omega;
        return {std::move(cert), {}};
    }
    auto witness = find_hole(g, defect);
    if (witness.empty())
        throw std::logic_error("MCS rejected the graph but no hole was found");
    return {std::nullopt, std::move(witness)};
}

bool verify_peo(const GraphData& g, const PeoCertificate& cert) {
    const int n = g.num_vertices();
    if (static_cast<int>(cert.order.size()) != n) return false;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        VertexId v = cert.order[i];
        if (v < 0 || v >= n || pos[v] != -1) return false;
        pos[v] = i;
    }
    if (find_peo_defect(g, cert.order).v != -1) return false;
    int omega = n > 0 ? 1 : 0;
    for (int i = 0; i < n; ++i) {
        int later = 0;
        for (VertexId u : g.neighbors(cert.order[i]))
            if (pos[u] > i) ++later;
        omega = std::max(omega, later + 1);
    }
    return omega == cert.omega;
}

int clique_number_chordal(const GraphData& g, const PeoCertificate& cert) {
    if (!verify_peo(g, cert))
        throw std::invalid_argument("clique_number_chordal: invalid elimination order");
    return cert.omega;
}

namespace {

struct BruteGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;
};

BruteGraph to_masks(const GraphData& g, int max_n, const char* who) {
    const int n = g.num_vertices();
    if (n > max_n || n > 64)
        throw std::invalid_argument(std::string(who) + ": graph too large (n=" +
                                    std::to_string(n) + ", limit " + std::to_string(max_n) + ")");
    BruteGraph b;
    b.n = n;
    b.adj.assign(n, 0);
    for (int v = 0; v < n; ++v)
        for (VertexId u : g.neighbors(v)) b.adj[v] |= std::uint64_t{1} << u;
    return b;
}

bool k_colorable(const BruteGraph& b, const std::vector<VertexId>& order, int k) {
    std::vector<std::uint64_t> cls(k, 0);
    auto rec = [&](auto&& self, int i, int used) -> bool {
        if (i == b.n) return true;
        VertexId v = order[i];
        int limit = std::min(k, used + 1);
        for (int c = 0; c < limit; ++c) {
            if (cls[c] & b.adj[v]) continue;
            cls[c] |= std::uint64_t{1} << v;
            if (self(self, i + 1, std::max(used, c + 1))) return true;
            cls[c] &= ~(std::uint64_t{1} << v);
        }
        return false;
    };
    return rec(rec, 0, 0);
}

} // namespace

int chromatic_number_bruteforce(const GraphData& g, int max_n) {
    BruteGraph b = to_masks(g, max_n, "chromatic_number_bruteforce");
    if (b.n == 0) return 0;
    DegeneracyResult deg = degeneracy(g);
    std::vector<VertexId> order(deg.order.rbegin(), deg.order.rend());
    // greedy upper bound along the branching order
    int ub = 1;
    {
        std::vector<int> col(b.n, -1);
        for (VertexId v : order) {
            std::uint64_t taken = 0;
            for (int u = 0; u < b.n; ++u)
                if (col[u] >= 0 && (b.adj[v] >> u & 1)) taken |= std::uint64_t{1} << col[u];
            int c = std::countr_one(taken);
            col[v] = c;
            ub = std::max(ub, c + 1);
        }
    }
    // greedy clique lower bound seeded from every vertex
    int lb = 1;
    for (int s = 0; s < b.n; ++s) {
        std::uint64_t cand = b.adj[s];
        int size = 1;
        while (cand) {
            int v = std::countr_zero(cand);
            ++size;
            cand &= b.adj[v];
        }
        lb = std::max(lb, size);
    }
    for (int k = lb; k < ub; ++k)
        if (k_colorable(b, order, k)) return k;
    return ub;
}

DegeneracyResult degeneracy(const GraphData& g) {
    const int n = g.num_vertices();
    std::vector<int> deg(n);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        maxdeg = std::max(maxdeg, deg[v]);
    }
    std::vector<std::vector<VertexId>> bucket(maxdeg + 1);
    for (int v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
    std::vector<char> removed(n, 0);
    DegeneracyResult out;
    out.order.reserve(n);
    int floor = 0;
    for (int step = 0; step < n; ++step) {
        while (floor <= maxdeg && bucket[floor].empty()) ++floor;
        int d = floor;
        VertexId v = -1;
        for (; d <= maxdeg; ++d) {
            auto& bk = bucket[d];
            while (!bk.empty()) {
                VertexId cand = bk.back();
                if (!removed[cand] && deg[cand] == d) {
                    v = cand;
                    break;
                }
                bk.pop_back();
            }
            if (v != -1) break;
        }
        bucket[d].pop_back();
        removed[v] = 1;
        out.order.push_back(v);
        out.degeneracy = std::max(out.degeneracy, d);
        floor = std::max(0, d - 1);
        for (VertexId u : g.neighbors(v)) {
            if (removed[u]) continue;
            bucket[--deg[u]].push_back(u);
        }
    }
    return out;
}

namespace {

// Enumerates simple cycles once each: smallest vertex first, orientation
// fixed by second < last. Calls sink(cycle); sink returns false to stop.
template <typename Sink>
void enumerate_cycles(const GraphData& g, long long budget, Sink&& sink) {
    const int n = g.num_vertices();
    std::vector<VertexId> path;
    std::vector<char> on_path(n, 0);
    long long steps = 0;
    bool stop = false;
    auto dfs = [&](auto&& self, VertexId s, VertexId v) -> void {
        if (stop) return;
        if (++steps > budget)
            throw std::runtime_error("cycle enumeration budget exceeded");
        for (VertexId u : g.neighbors(v)) {
            if (stop) return;
            if (u == s && path.size() >= 3) {
                if (path[1] < path.back() && !sink(path)) stop = true;
                continue;
            }
            if (u <= s || on_path[u]) continue;
            on_path[u] = 1;
            path.push_back(u);
            self(self, s, u);
            path.pop_back();
            on_path[u] = 0;
        }
    };
    for (VertexId s = 0; s < n && !stop; ++s) {
        path.assign(1, s);
        std::fill(on_path.begin(), on_path.end(), 0);
        on_path[s] = 1;
        dfs(dfs, s, s);
    }
}

} // namespace

StrongChordalityResult check_strongly_chordal_bruteforce(const GraphData& g, int max_n) {
    if (g.num_vertices() > max_n)
        throw std::invalid_argument("check_strongly_chordal_bruteforce: graph too large");
    if (!check_chordal(g).chordal())
        throw std::invalid_argument("check_strongly_chordal_bruteforce: input not chordal");
    StrongChordalityResult out;
    out.strongly_chordal = true;
    // In a cycle of even length the two arc distances between any pair have
    // the same parity, so "odd chord" is well defined by position parity.
    enumerate_cycles(g, 20'000'000, [&](const std::vector<VertexId>& cyc) {
        const int len = static_cast<int>(cyc.size());
        if (len < 6 || len % 2 != 0) return true;
        for (int i = 0; i < len; ++i)
            for (int j = i + 3; j < len; j += 2) {
                if (i == 0 && j == len - 1) continue;
                if (g.has_edge(cyc[i], cyc[j])) return true; // odd chord found
            }
        out.strongly_chordal = false;
        out.witness_cycle = cyc;
        return false;
    });
    return out;
}

std::vector<VertexId> find_chordless_cycle_bruteforce(const GraphData& g, int max_n) {
    BruteGraph b = to_masks(g, std::min(max_n, 22), "find_chordless_cycle_bruteforce");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b.n); ++mask) {
        if (std::popcount(mask) < 4) continue;
        bool two_regular = true;
        for (std::uint64_t m = mask; m && two_regular; m &= m - 1) {
            int v = std::countr_zero(m);
            if (std::popcount(b.adj[v] & mask) != 2) two_regular = false;
        }
        if (!two_regular) continue;
        // walk the cycle; connectivity holds iff the walk covers the subset
        int start = std::countr_zero(mask);
        std::vector<VertexId> cyc{start};
        std::uint64_t visited = std::uint64_t{1} << start;
        VertexId cur = start;
        for (;;) {
            std::uint64_t nxt = b.adj[cur] & mask & ~visited;
            if (!nxt) break;
            cur = std::countr_zero(nxt);
            visited |= std::uint64_t{1} << cur;
            cyc.push_back(cur);
        }
        if (visited == mask) return cyc;
    }
    return {};
}

namespace {

int count_components(const GraphData& g) {
    const int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    int comps = 0;
    std::vector<VertexId> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++comps;
        stack.assign(1, s);
        seen[s] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
    }
    return comps;
}

} // namespace

bool is_forest(const GraphData& g) {
    return g.num_edges() + count_components(g) == static_cast<std::size_t>(g.num_vertices());
}

bool is_tree(const GraphData& g) {
    return g.num_vertices() > 0 && is_forest(g) && count_components(g) == 1;
}

bool is_bipartite(const GraphData& g) {
    const int n = g.num_vertices();
    std::vector<int> side(n, -1);
    std::vector<VertexId> stack;
    for (int s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        stack.assign(1, s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v)) {
                if (side[u] == -1) {
                    side[u] = side[v] ^ 1;
                    stack.push_back(u);
                } else if (side[u] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_connected(const GraphData& g) {
    return g.num_vertices() <= 1 || count_components(g) == 1;
}

} // namespace onlinecol::oracles
