#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onlinecol/graph.hpp"

namespace onlinecol::oracles {

struct PeoCertificate {
    std::vector<VertexId> order; // perfect elimination order, first eliminated first
    int omega = 0;               // size of the largest clique witnessed by the order
};

struct ChordalityResult {
    std::optional<PeoCertificate> certificate; // present iff chordal
    std::vector<VertexId> witness_cycle;       // induced cycle of length >= 4 otherwise
    bool chordal() const { return certificate.has_value(); }
};

// Maximum cardinality search. The reverse selection order is a perfect
// elimination order iff the graph is chordal; on failure an induced cycle
// of length >= 4 is extracted as the witness.
ChordalityResult check_chordal(const GraphData& g);

// Re-checks that cert.order really is a PEO of g and that cert.omega
// matches the largest bag it induces.
bool verify_peo(const GraphData& g, const PeoCertificate& cert);

// omega(g) = chi(g) for chordal graphs, read off the PEO. Throws
// std::invalid_argument if the certificate does not verify.
int clique_number_chordal(const GraphData& g, const PeoCertificate& cert);

// treewidth of a chordal graph is omega - 1.
inline int treewidth_chordal(const PeoCertificate& cert) { return cert.omega - 1; }

// Exact chromatic number by branch and bound over color classes. Guarded
// by max_n; throws std::invalid_argument beyond it.
int chromatic_number_bruteforce(const GraphData& g, int max_n = 24);

struct DegeneracyResult {
    int degeneracy = 0;
    std::vector<VertexId> order; // min-degree elimination order
};
DegeneracyResult degeneracy(const GraphData& g);

struct StrongChordalityResult {
    bool strongly_chordal = false;
    std::vector<VertexId> witness_cycle; // even cycle >= 6 without an odd chord
};

// Checks every simple even cycle on >= 6 vertices for an odd chord, by
// exhaustive cycle enumeration. Requires a chordal input (throws
// std::invalid_argument otherwise, or when g exceeds max_n).
StrongChordalityResult check_strongly_chordal_bruteforce(const GraphData& g, int max_n = 20);

// Smallest-guard brute force used to cross-validate check_chordal: returns
// an induced cycle of length >= 4, or empty when none exists. n <= max_n.
std::vector<VertexId> find_chordless_cycle_bruteforce(const GraphData& g, int max_n = 14);

bool is_forest(const GraphData& g);
bool is_tree(const GraphData& g);
bool is_bipartite(const GraphData& g);
bool is_connected(const GraphData& g);

} // namespace onlinecol::oracles
