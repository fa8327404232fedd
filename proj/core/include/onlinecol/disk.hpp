#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/graph.hpp"

namespace onlinecol::disk {

struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double r = 1.0;
    VertexId vertex = 0;
};

// A disk arrangement realizing a sampled 2-chromatic construction plus one
// big apex disk touching every component root. After inflation the intended
// edges overlap properly and everything else keeps a positive gap, while
// the max/min radius ratio stays exactly rho.
struct DiskArrangement {
    std::vector<Disk> disks; // apex first, structure disks, then padding
    double rho = 0.0;
    double eps = 0.0;   // strip inset used by the layout
    double delta = 0.0; // smallest pre-inflation gap between non-touching disks
    int k = 0;
    int apex_index = 0;
    VertexId apex_vertex = 0;
    long long padded_to = 0;
    GraphData expected; // structure edges + apex-root edges (+ isolated pads)
    OnlineInstance instance;
    std::vector<VertexId> root_vertices;

    double min_radius() const;
    double max_radius() const;
};

// Thrown when a pair of disks is too close to tangency to classify.
class AmbiguousTangency : public std::runtime_error {
public:
    AmbiguousTangency(int disk_a, int disk_b, const std::string& msg)
        : std::runtime_error(msg), a(disk_a), b(disk_b) {}
    int a, b;
};

// Lays out `structure` (which must come from d = 2) under an apex disk of
// radius rho > 12^(k-1). Throws std::invalid_argument on bad parameters and
// std::logic_error if a layout invariant fails.
DiskArrangement embed_disks(const adversary::RandResult& structure, double rho);

// Edge iff the disks properly overlap; pairs within `ambiguity` (relative
// to the radius sum) of exact tangency raise AmbiguousTangency.
GraphData intersection_graph(const std::vector<Disk>& disks, double ambiguity = 1e-9);

struct EmbeddingReport {
    bool ok = true;
    std::string detail; // names the offending pair or quantity when !ok
};

// Recomputes the intersection graph and compares against the expectation:
// edge set, apex adjacency, radius ratio, disk budget, bipartiteness.
EmbeddingReport verify_embedding(const DiskArrangement& arr);

// k = floor(log12(min(n, rho) / 2)); embeds a sample and pads with far-away
// disks (radii between the extremes) to exactly n disks. Requires
// min(n, rho) >= 25.
DiskArrangement build_sized_disk(long long n, double rho, SplitRng rng);

std::string to_svg(const DiskArrangement& arr);
std::string disks_to_json(const DiskArrangement& arr);
std::vector<Disk> disks_from_json(const std::string& text);

} // namespace onlinecol::disk
