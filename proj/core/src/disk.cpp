#include "onlinecol/disk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "onlinecol/oracles.hpp"

namespace onlinecol::disk {
namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error("disk embedding: " + msg);
}

double pow12(int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= 12.0;
    return v;
}

// Builds the layout by walking the sampled tree. Strips are open-ended
// vertical bands; a node's disks stay within half its strip width of the
// strip center, so sibling strips never interact.
class Layout {
public:
    Layout(const adversary::RandResult& s, double rho) : s_(s), rho_(rho), k_(s.k) {
        double base = pow12(k_ - 1);
        if (k_ >= 2) {
            eps_ = 11.0 * (rho - base) / (24.0 * (base - 1.0));
        } else {
            eps_ = 1.0; // unused by a single-level layout
        }
        require(eps_ > 0.0, "strip inset must be positive (rho too small)");
    }

    double strip_width(int level) const {
        double p = pow12(level - 1);
        return 2.0 * (p + eps_ * (p - 1.0) * 12.0 / 11.0);
    }

    int add_disk(double cx, double cy, double r, VertexId v) {
        disks_.push_back(Disk{cx, cy, r, v});
        return static_cast<int>(disks_.size()) - 1;
    }

    // Places `child_v` tangent below disk `parent` at horizontal position x.
    int place_tangent(int parent, double x, double r, VertexId child_v) {
        const Disk& p = disks_[static_cast<size_t>(parent)];
        double dx = x - p.cx;
        double rr = p.r + r;
        require(rr * rr > dx * dx, "tangent child out of horizontal reach");
        double y = p.cy - std::sqrt(rr * rr - dx * dx);
        int idx = add_disk(x, y, r, child_v);
        tangent_.insert(pair_key(parent, idx));
        return idx;
    }

    void place_node(const adversary::RandNode& node, double cx, int parent) {
        if (node.level == 1) {
            require(node.base_vertices.size() == 2, "level-1 copies must have two vertices");
            int root = place_tangent(parent, cx, 1.0, node.base_vertices[0]);
            place_tangent(root, cx, 1.0, node.base_vertices[1]);
            return;
        }
        double sw = strip_width(node.level) / 12.0;
        double child_w = strip_width(node.level - 1);
        require(child_w > 0.0 && child_w <= sw - 2.0 * eps_ + 1e-9,
                "child strip must fit inside its substrip with inset eps");
        for (int i = 0; i < 6; ++i) {
            const adversary::RandNode& left = node.children[static_cast<size_t>(2 * i)];
            const adversary::RandNode& right = node.children[static_cast<size_t>(2 * i + 1)];
            double lx = cx + (2.0 * i - 5.5) * sw;
            double rx = cx + (2.0 * i + 1.0 - 5.5) * sw;
            if (node.bits[static_cast<size_t>(i)]) {
                require(node.joined_cliques[static_cast<size_t>(i)].size() == 1,
                        "a joined clique holds exactly one vertex when d = 2");
                VertexId jv = node.joined_cliques[static_cast<size_t>(i)][0];
                int di = place_tangent(parent, lx, child_w / 2.0, jv);
                place_node(left, lx, di);
            } else {
                place_node(left, lx, parent);
            }
            place_node(right, rx, parent);
        }
    }

    std::vector<Disk> take_disks() { return std::move(disks_); }
    bool is_tangent(int a, int b) const { return tangent_.count(pair_key(a, b)) > 0; }
    double eps() const { return eps_; }

private:
    static uint64_t pair_key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
               static_cast<uint32_t>(b);
    }

    const adversary::RandResult& s_;
    double rho_;
    int k_;
    double eps_ = 0.0;
    std::vector<Disk> disks_;
    std::unordered_set<uint64_t> tangent_;
};

} // namespace

double DiskArrangement::min_radius() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Disk& d : disks) m = std::min(m, d.r);
    return m;
}

double DiskArrangement::max_radius() const {
    double m = 0.0;
    for (const Disk& d : disks) m = std::max(m, d.r);
    return m;
}

DiskArrangement embed_disks(const adversary::RandResult& structure, double rho) {
    if (structure.d != 2 || structure.d_even != 2)
        throw std::invalid_argument("disk embedding requires d = 2");
    if (structure.padded_to != 0)
        throw std::invalid_argument("embed the raw structure, not a padded instance");
    int k = structure.k;
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(rho > pow12(k - 1)))
        throw std::invalid_argument("rho must exceed 12^(k-1)");

    DiskArrangement arr;
    arr.rho = rho;
    arr.k = k;

    Layout layout(structure, rho);
    arr.eps = layout.eps();
    require(2.0 * rho > layout.strip_width(k),
            "apex must be wider than the top strip");

    VertexId n_struct = structure.graph.num_vertices();
    arr.apex_vertex = n_struct;
    arr.apex_index = layout.add_disk(0.0, 0.0, rho, arr.apex_vertex);
    layout.place_node(structure.structure, 0.0, arr.apex_index);
    std::vector<Disk> disks = layout.take_disks();

    require(static_cast<long long>(disks.size()) == n_struct + 1,
            "every structure vertex must receive exactly one disk");
    require(static_cast<double>(disks.size()) <= 2.0 * pow12(k),
            "disk count exceeds 2 * 12^k");

    // Expected adjacency: the structure plus the apex joined to every root.
    GraphData expected = structure.graph;
    expected.add_vertex();
    for (VertexId r : structure.root_vertices) expected.add_edge(arr.apex_vertex, r);

    // Every tangent pair must be an expected edge and vice versa. The layout
    // records tangencies as it builds, so only the counts need reconciling.
    long long tangent_count = 0;
    const int m = static_cast<int>(disks.size());
    double delta = std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            double dx = disks[static_cast<size_t>(a)].cx - disks[static_cast<size_t>(b)].cx;
            double dy = disks[static_cast<size_t>(a)].cy - disks[static_cast<size_t>(b)].cy;
            double sum = disks[static_cast<size_t>(a)].r + disks[static_cast<size_t>(b)].r;
            double gap = std::sqrt(dx * dx + dy * dy) - sum;
            if (layout.is_tangent(a, b)) {
                ++tangent_count;
                require(std::abs(gap) <= 1e-9 * (sum + 1.0), "tangent pair out of tolerance");
                require(expected.has_edge(disks[static_cast<size_t>(a)].vertex,
                                          disks[static_cast<size_t>(b)].vertex),
                        "tangent pair is not an expected edge");
            } else {
                require(gap > 0.0, "non-adjacent disks must keep a positive gap");
                delta = std::min(delta, gap);
            }
        }
    }
    require(tangent_count == static_cast<long long>(expected.num_edges()),
            "tangency count must match the edge count");

    // Inflation: apex grows by delta/2, everything else by delta/(2 rho).
    // Intended contacts become proper overlaps, non-contacts keep a gap of
    // at least delta (1/2 - 1/(2 rho)), and max/min radius stays exactly rho.
    require(delta > 0.0 && std::isfinite(delta), "gap floor must be positive");
    arr.delta = delta;
    for (Disk& d : disks) d.r += (d.vertex == arr.apex_vertex) ? delta / 2.0 : delta / (2.0 * rho);
    arr.disks = std::move(disks);

    arr.instance = structure.instance;
    std::vector<VertexId> apex_back = structure.root_vertices;
    std::sort(apex_back.begin(), apex_back.end());
    arr.instance.push_arrival(Arrival{arr.apex_vertex, std::move(apex_back)});
    arr.expected = std::move(expected);
    arr.root_vertices = structure.root_vertices;
    arr.padded_to = n_struct + 1;
    return arr;
}

GraphData intersection_graph(const std::vector<Disk>& disks, double ambiguity) {
    VertexId n = 0;
    for (const Disk& d : disks) n = std::max(n, d.vertex + 1);
    GraphData g(n);
    const int m = static_cast<int>(disks.size());
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            double dx = disks[static_cast<size_t>(a)].cx - disks[static_cast<size_t>(b)].cx;
            double dy = disks[static_cast<size_t>(a)].cy - disks[static_cast<size_t>(b)].cy;
            double sum = disks[static_cast<size_t>(a)].r + disks[static_cast<size_t>(b)].r;
            double diff = std::sqrt(dx * dx + dy * dy) - sum;
            double band = ambiguity * (sum + 1.0);
            if (std::abs(diff) <= band) {
                std::ostringstream os;
                os << "disks " << a << " and " << b << " are within " << band
                   << " of exact tangency";
                throw AmbiguousTangency(a, b, os.str());
            }
            if (diff < 0.0)
                g.add_edge(disks[static_cast<size_t>(a)].vertex, disks[static_cast<size_t>(b)].vertex);
        }
    }
    return g;
}

EmbeddingReport verify_embedding(const DiskArrangement& arr) {
    EmbeddingReport rep;
    auto fail = [&rep](const std::string& why) {
        rep.ok = false;
        rep.detail = why;
        return rep;
    };

    GraphData got;
    try {
        got = intersection_graph(arr.disks);
    } catch (const AmbiguousTangency& e) {
        return fail(e.what());
    }
    if (got.num_vertices() != arr.expected.num_vertices()) {
        std::ostringstream os;
        os << "vertex count mismatch: got " << got.num_vertices() << ", expected "
           << arr.expected.num_vertices();
        return fail(os.str());
    }
    for (VertexId u = 0; u < got.num_vertices(); ++u) {
        for (VertexId v = u + 1; v < got.num_vertices(); ++v) {
            bool a = got.has_edge(u, v);
            bool b = arr.expected.has_edge(u, v);
            if (a != b) {
                std::ostringstream os;
                os << "edge mismatch on vertices (" << u << ", " << v << "): intersection "
                   << (a ? "has" : "lacks") << " it, expectation " << (b ? "has" : "lacks")
                   << " it";
                return fail(os.str());
            }
        }
    }

    // Apex adjacency must be exactly the component roots.
    std::vector<VertexId> roots = arr.root_vertices;
    std::sort(roots.begin(), roots.end());
    auto nb = got.neighbors(arr.apex_vertex);
    if (!std::equal(nb.begin(), nb.end(), roots.begin(), roots.end()))
        return fail("apex adjacency differs from the component roots");

    double ratio = arr.max_radius() / arr.min_radius();
    if (!(std::abs(ratio - arr.rho) <= 1e-9 * arr.rho)) {
        std::ostringstream os;
        os << "radius ratio " << ratio << " deviates from rho " << arr.rho;
        return fail(os.str());
    }

    // Disk budget covers the construction; padding disks are on top of it.
    double core = static_cast<double>(arr.expected.num_vertices() -
                                      (arr.padded_to > arr.apex_vertex + 1
                                           ? arr.padded_to - (arr.apex_vertex + 1)
                                           : 0));
    if (!(core <= 2.0 * pow12(arr.k))) return fail("disk count exceeds 2 * 12^k");

    if (!oracles::is_bipartite(got)) return fail("intersection graph is not 2-colorable");
    return rep;
}

DiskArrangement build_sized_disk(long long n, double rho, SplitRng rng) {
    double floor_param = std::min(static_cast<double>(n), rho);
    if (!(floor_param >= 25.0))
        throw std::invalid_argument("need min(n, rho) >= 25");
    int k = 0;
    while (2.0 * pow12(k + 1) <= floor_param) ++k;
    if (k < 1) k = 1; // floor_param >= 25 >= 2 * 12 guarantees k >= 1 anyway

    adversary::RandResult structure = adversary::sample_gk(rng.split(1), 2, k, true);
    DiskArrangement arr = embed_disks(structure, rho);

    long long core = static_cast<long long>(arr.disks.size());
    if (core > n) throw std::logic_error("disk embedding: core exceeds requested size");

    // Far-away padding disks: geometric-mean radius keeps the ratio at rho.
    double pad_r = std::sqrt(arr.min_radius() * arr.max_radius());
    double x = 3.0 * rho;
    for (long long i = core; i < n; ++i) {
        VertexId v = static_cast<VertexId>(i);
        x += 2.0 * pad_r + 1.0 + rho;
        arr.disks.push_back(Disk{x, 0.0, pad_r, v});
        arr.expected.add_vertex();
        arr.instance.push_arrival(Arrival{v, {}});
    }
    arr.padded_to = n;
    return arr;
}

std::string to_svg(const DiskArrangement& arr) {
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const Disk& d : arr.disks) {
        lo_x = std::min(lo_x, d.cx - d.r);
        hi_x = std::max(hi_x, d.cx + d.r);
        lo_y = std::min(lo_y, d.cy - d.r);
        hi_y = std::max(hi_y, d.cy + d.r);
    }
    double margin = 0.02 * std::max(hi_x - lo_x, hi_y - lo_y) + 1.0;
    std::ostringstream os;
    os.precision(12);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (lo_x - margin) << ' '
       << (-hi_y - margin) << ' ' << (hi_x - lo_x + 2 * margin) << ' '
       << (hi_y - lo_y + 2 * margin) << "\">\n";
    double stroke = std::max((hi_x - lo_x) / 1200.0, 1e-3);
    for (size_t i = 0; i < arr.disks.size(); ++i) {
        const Disk& d = arr.disks[i];
        const char* color = (static_cast<int>(i) == arr.apex_index) ? "#c0392b" : "#2c3e50";
        os << "  <circle cx=\"" << d.cx << "\" cy=\"" << -d.cy << "\" r=\"" << d.r
           << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke
           << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string disks_to_json(const DiskArrangement& arr) {
    nlohmann::json out = nlohmann::json::array();
    for (const Disk& d : arr.disks)
        out.push_back({{"cx", d.cx}, {"cy", d.cy}, {"r", d.r}, {"v", d.vertex}});
    return out.dump(2) + "\n";
}

std::vector<Disk> disks_from_json(const std::string& text) {
    nlohmann::json in = nlohmann::json::parse(text);
    if (!in.is_array()) throw std::runtime_error("disk json: expected a top-level array");
    std::vector<Disk> out;
    out.reserve(in.size());
    for (const auto& e : in) {
        Disk d;
        d.cx = e.at("cx").get<double>();
        d.cy = e.at("cy").get<double>();
        d.r = e.at("r").get<double>();
        d.vertex = e.at("v").get<VertexId>();
        out.push_back(d);
    }
    return out;
}

} // namespace onlinecol::disk
