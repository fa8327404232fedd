#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "onlinecol/graph.hpp"
#include "onlinecol/stats.hpp"

namespace onlinecol::harness {

// Parameter grid for a batch of adversary runs. Scalar JSON fields are
// accepted wherever an array is expected.
//
//   adversary: "det" | "rand" | "lookahead" | "buffer"
//   alg:       algorithm spec ("first-fit", "random-feasible:seed=7",
//              "stalling-first-fit" for buffer runs, ...)
//   d, k, n, l, eps, b: swept values; which ones apply depends on the
//              adversary (n switches det/rand/lookahead to their sized
//              variants; b defaults to floor(n^(1-eps)) for buffer runs)
struct GridSpec {
    std::string adversary = "det";
    std::string alg = "first-fit";
    std::vector<int> d = {2};
    std::vector<int> k;
    std::vector<long long> n;
    std::vector<long long> l;
    std::vector<double> eps;
    std::vector<long long> b;
    double c = 1.0; // lookahead sizing constant
    long long trials = 1;
    std::uint64_t seed = 1;
    int threads = 1; // parsed and reported; rows always run in grid order
    bool connector = false;
    long long pad_to = 0;
    bool audit = true;
};

GridSpec grid_spec_from_json(const std::string& text);
std::string grid_spec_to_json(const GridSpec& spec);

struct GridRow {
    long long trial = 0;
    int d = 0;
    int k = 0;              // buffer rows report k' here
    long long n = 0;        // actual presented instance size
    long long l = -1;       // -1 = not applicable (blank CSV cell)
    long long b = -1;
    long long total_colors = 0;
    long long root_colors = 0;
    double bound_value = 0.0; // colors the construction is entitled to
    bool meets_bound = false;
};

struct GridResult {
    GridSpec spec;
    std::vector<GridRow> rows;
    std::string csv; // byte-deterministic for a fixed spec
    bool all_bounds_hold = true;
};

// Called after each row with the instance that produced it; used to audit
// every generated instance without retaining them all.
using RowObserver =
    std::function<void(const GridRow&, const GraphData&, const OnlineInstance&, const Transcript&)>;

// Runs the whole grid sequentially in a fixed order; rerunning the same
// spec reproduces the CSV byte for byte. Throws std::invalid_argument on
// unusable specs. Timing is the caller's concern; none enters the CSV.
GridResult run_grid(const GridSpec& spec, const RowObserver& observer = {});

// Least-squares slope of mean root colors against log2(n) across the
// grid's distinct instance sizes; nullopt with fewer than 3 sizes.
std::optional<stats::SlopeFit> root_color_slope(const GridResult& result);

} // namespace onlinecol::harness
