#pragma once

#include <iosfwd>
#include <string>

#include "onlinecol/graph.hpp"

namespace onlinecol::io {

// DIMACS coloring format: a "p edge n m" line followed by m "e u v" lines,
// vertices 1-based. Comment lines start with 'c'. The reader tolerates
// duplicate edge lines; the writer never emits them.
void write_dimacs(const GraphData& g, std::ostream& os);
GraphData read_dimacs(std::istream& is); // throws std::runtime_error on malformed input
GraphData read_dimacs_file(const std::string& path);
void write_dimacs_file(const GraphData& g, const std::string& path);

// Instance JSON:
//   {"arrivals":[{"v":0,"back":[]},...],"phases":[...],"steps":[[v,c],...]}
// "phases" and "steps" are omitted when empty. Colors in "steps" follow
// commitment order, matching Transcript.
std::string instance_to_json(const OnlineInstance& inst, const Transcript* t = nullptr);
struct ParsedInstance {
    OnlineInstance instance;
    Transcript transcript; // empty if the file had no "steps"
    bool has_transcript = false;
};
ParsedInstance instance_from_json(const std::string& text); // throws std::runtime_error
ParsedInstance read_instance_file(const std::string& path);
void write_instance_file(const OnlineInstance& inst, const std::string& path,
                         const Transcript* t = nullptr);

} // namespace onlinecol::io
