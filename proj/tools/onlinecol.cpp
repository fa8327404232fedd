// Command-line front end: verify graph properties, run the adversarial
// constructions against a chosen algorithm, embed the 2-chromatic variant
// as tangent disks, and sweep parameter grids to CSV.
//
// Exit codes: 0 success (and every guaranteed bound held), 1 usage or I/O
// error, 2 a verdict or guaranteed bound failed.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "onlinecol/adversary_det.hpp"
#include "onlinecol/adversary_ext.hpp"
#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/algorithms.hpp"
#include "onlinecol/disk.hpp"
#include "onlinecol/harness.hpp"
#include "onlinecol/io.hpp"
#include "onlinecol/oracles.hpp"
#include "onlinecol/stats.hpp"

namespace {

using namespace onlinecol;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

GraphData load_graph(const std::string& path) {
    if (ends_with(path, ".json")) {
        io::ParsedInstance p = io::read_instance_file(path);
        return p.instance.to_graph();
    }
    return io::read_dimacs_file(path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

// ---- verify ----------------------------------------------------------

struct VerifyOpts {
    std::string file;
    bool chordal = false;
    bool strongly_chordal = false;
    bool degeneracy = false;
    bool chi_brute = false;
};

int cmd_verify(const VerifyOpts& o) {
    GraphData g = load_graph(o.file);
    bool any = o.chordal || o.strongly_chordal || o.degeneracy || o.chi_brute;
    bool want_chordal = o.chordal || !any;

    json out;
    out["file"] = o.file;
    out["n"] = g.num_vertices();
    out["m"] = g.num_edges();
    bool ok = true;

    oracles::ChordalityResult ch;
    if (want_chordal || o.strongly_chordal) ch = oracles::check_chordal(g);
    if (want_chordal) {
        out["chordal"] = ch.chordal();
        if (ch.chordal()) {
            out["omega"] = ch.certificate->omega;
            out["treewidth"] = oracles::treewidth_chordal(*ch.certificate);
        } else {
            out["witness_cycle"] = ch.witness_cycle;
            ok = false;
        }
    }
    if (o.strongly_chordal) {
        if (!ch.chordal()) {
            out["strongly_chordal"] = false;
            ok = false;
        } else {
            auto sc = oracles::check_strongly_chordal_bruteforce(g);
            out["strongly_chordal"] = sc.strongly_chordal;
            if (!sc.strongly_chordal) {
                out["trampled_cycle"] = sc.witness_cycle;
                ok = false;
            }
        }
    }
    if (o.degeneracy) out["degeneracy"] = oracles::degeneracy(g).degeneracy;
    if (o.chi_brute) out["chi"] = oracles::chromatic_number_bruteforce(g, 32);

    std::cout << out.dump(2) << '\n';
    return ok ? kExitOk : kExitVerdict;
}

// ---- adversary det ---------------------------------------------------

struct DetOpts {
    int d = 2;
    int k = 1;
    std::string alg = "first-fit";
    bool connector = false;
    long long pad_to = 0;
    bool no_audit = false;
    std::string emit;
    std::string emit_dimacs;
};

int cmd_det(const DetOpts& o) {
    adversary::DetOptions opt;
    opt.d = o.d;
    opt.k = o.k;
    opt.audit = !o.no_audit;
    opt.connector = o.connector;
    opt.pad_to = o.pad_to;
    auto alg = algorithms::make_algorithm(o.alg);
    adversary::DetResult res = adversary::build_gk_det(*alg, opt);

    bool meets = 4LL * res.root_color_count >= 1LL * res.d_even * res.k;
    json out;
    out["adversary"] = "det";
    out["alg"] = alg->name();
    out["d"] = res.d;
    out["k"] = res.k;
    out["n"] = res.instance.num_steps();
    out["structure_size"] = res.structure_size;
    out["base_copies"] = res.base_copies;
    out["root_colors"] = res.root_color_count;
    out["total_colors"] = res.transcript.num_colors_total();
    out["bound_value"] = res.d_even * res.k / 4.0;
    out["meets_bound"] = meets;
    if (res.connector_vertex) out["connector_vertex"] = *res.connector_vertex;

    if (!o.emit.empty()) io::write_instance_file(res.instance, o.emit, &res.transcript);
    if (!o.emit_dimacs.empty()) io::write_dimacs_file(res.graph, o.emit_dimacs);
    std::cout << out.dump(2) << '\n';
    return meets ? kExitOk : kExitVerdict;
}

// ---- adversary rand / lookahead --------------------------------------

struct RandOpts {
    int d = 2;
    int k = 1;
    std::string alg = "first-fit";
    long long trials = 100;
    std::uint64_t seed = 1;
    std::string emit_summary;
    std::string emit;
};

int cmd_rand(const RandOpts& o) {
    SplitRng root(o.seed);
    auto factory = adversary::make_trial_factory(o.alg, root.split(0x5eedULL));

    std::ostringstream csv;
    csv << "trial,n,root_colors,total_colors,meets_bound\n";
    long long successes = 0;
    long long root_sum = 0;
    for (long long t = 0; t < o.trials; ++t) {
        adversary::RandResult res =
            adversary::sample_gk(root.split(static_cast<std::uint64_t>(t) + 1), o.d, o.k, false);
        auto alg = factory(static_cast<std::uint64_t>(t));
        Transcript tr = algorithms::run_online(*alg, res.instance);
        bool meets = res.meets_root_bound(tr);
        successes += meets ? 1 : 0;
        root_sum += res.root_colors(tr);
        csv << t << ',' << res.instance.num_steps() << ',' << res.root_colors(tr) << ','
            << tr.num_colors_total() << ',' << (meets ? 1 : 0) << '\n';
        if (t == 0 && !o.emit.empty()) io::write_instance_file(res.instance, o.emit, &tr);
    }
    if (!o.emit_summary.empty()) write_text_file(o.emit_summary, csv.str());

    json out;
    out["adversary"] = "rand";
    out["alg"] = o.alg;
    out["d"] = o.d;
    out["k"] = o.k;
    out["trials"] = o.trials;
    out["successes"] = successes;
    out["p_hat"] = static_cast<double>(successes) / static_cast<double>(o.trials);
    out["wilson_lower_99"] = stats::wilson_lower_bound(successes, o.trials);
    out["mean_root_colors"] = static_cast<double>(root_sum) / static_cast<double>(o.trials);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

struct LookaheadOpts {
    int d = 2;
    int k = 0;          // structure-level when set
    double c = 1.0;
    long long n = 0;    // sized when set
    long long l = 0;
    std::string alg = "first-fit";
    long long trials = 1;
    std::uint64_t seed = 1;
    std::string emit;
};

int cmd_lookahead(const LookaheadOpts& o) {
    if ((o.n == 0) == (o.k == 0)) {
        std::cerr << "lookahead: give exactly one of --n (sized) or --k (structure-level)\n";
        return kExitUsage;
    }
    SplitRng root(o.seed);
    auto factory = adversary::make_trial_factory(o.alg, root.split(0x5eedULL));
    long long successes = 0;
    long long root_sum = 0;
    int k_used = 0;
    for (long long t = 0; t < o.trials; ++t) {
        SplitRng rng = root.split(static_cast<std::uint64_t>(t) + 1);
        adversary::LookaheadResult res =
            o.n > 0 ? adversary::build_lookahead_instance(rng, o.d, o.c, o.n, o.l)
                    : adversary::build_lookahead_phased(rng, o.d, o.k, o.l);
        k_used = res.k;
        auto alg = factory(static_cast<std::uint64_t>(t));
        Transcript tr = algorithms::run_online_lookahead(*alg, res.instance, static_cast<int>(res.l));
        successes += res.meets_root_bound(tr) ? 1 : 0;
        root_sum += res.root_colors(tr);
        if (t == 0 && !o.emit.empty()) io::write_instance_file(res.instance, o.emit, &tr);
    }
    json out;
    out["adversary"] = "lookahead";
    out["alg"] = o.alg;
    out["d"] = o.d;
    out["k"] = k_used;
    out["l"] = o.l;
    if (o.n > 0) out["n"] = o.n;
    out["trials"] = o.trials;
    out["successes"] = successes;
    out["p_hat"] = static_cast<double>(successes) / static_cast<double>(o.trials);
    out["mean_root_colors"] = static_cast<double>(root_sum) / static_cast<double>(o.trials);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

struct BufferOpts {
    int d = 2;
    double eps = 1.0;
    long long n = 0;
    long long b = -1;
    std::string alg = "first-fit";
    bool no_audit = false;
    std::string emit;
};

int cmd_buffer(const BufferOpts& o) {
    long long b = o.b >= 0
                      ? o.b
                      : static_cast<long long>(
                            std::floor(std::pow(static_cast<double>(o.n), 1.0 - o.eps) + 1e-9));
    std::unique_ptr<algorithms::OnlineAlgorithm> inner;
    std::unique_ptr<algorithms::BufferedAlgorithm> balg;
    if (o.alg == "stalling-first-fit") {
        balg = std::make_unique<algorithms::StallingFirstFit>();
    } else {
        inner = algorithms::make_algorithm(o.alg);
        balg = std::make_unique<algorithms::ImmediateBuffered>(*inner);
    }
    adversary::BufferResult res =
        adversary::build_buffer_adversary(*balg, o.d, o.eps, o.n, b, !o.no_audit);

    bool meets = 8LL * res.root_color_count >= 1LL * res.d_even * res.k_prime;
    json out;
    out["adversary"] = "buffer";
    out["alg"] = balg->name();
    out["d"] = res.d;
    out["eps"] = res.eps;
    out["n"] = res.n;
    out["b"] = res.b;
    out["k"] = res.k;
    out["k_prime"] = res.k_prime;
    out["root_colors"] = res.root_color_count;
    out["total_colors"] = res.total_colors;
    out["bound_value"] = res.d_even * res.k_prime / 8.0;
    out["meets_bound"] = meets;
    json phases = json::array();
    for (const auto& ph : res.phases)
        phases.push_back({{"level", ph.level},
                          {"considered", ph.considered},
                          {"progressed", ph.progressed},
                          {"good", ph.good},
                          {"required_good", ph.required_good},
                          {"case2_cliques", ph.case2_cliques}});
    out["phases"] = phases;
    if (!o.emit.empty()) io::write_instance_file(res.instance, o.emit, &res.transcript);
    std::cout << out.dump(2) << '\n';
    return meets ? kExitOk : kExitVerdict;
}

// ---- disk embed ------------------------------------------------------

struct DiskOpts {
    int k = 1;
    double rho = 2.0;
    long long n = 0; // sized variant when set
    std::uint64_t seed = 1;
    std::string emit_svg;
    std::string emit_json;
};

int cmd_disk(const DiskOpts& o) {
    SplitRng rng(o.seed);
    disk::DiskArrangement arr;
    if (o.n > 0) {
        arr = disk::build_sized_disk(o.n, o.rho, rng);
    } else {
        adversary::RandResult structure = adversary::sample_gk(rng.split(1), 2, o.k, true);
        arr = disk::embed_disks(structure, o.rho);
    }
    disk::EmbeddingReport rep = disk::verify_embedding(arr);

    json out;
    out["k"] = arr.k;
    out["rho"] = arr.rho;
    out["disks"] = arr.disks.size();
    out["delta"] = arr.delta;
    out["eps"] = arr.eps;
    out["ratio"] = arr.max_radius() / arr.min_radius();
    out["verified"] = rep.ok;
    if (!rep.ok) out["detail"] = rep.detail;
    if (!o.emit_svg.empty()) write_text_file(o.emit_svg, disk::to_svg(arr));
    if (!o.emit_json.empty()) write_text_file(o.emit_json, disk::disks_to_json(arr));
    std::cout << out.dump(2) << '\n';
    return rep.ok ? kExitOk : kExitVerdict;
}

// ---- grid ------------------------------------------------------------

struct GridOpts {
    std::string spec_path;
    std::string out_path;
    int threads = 0;
};

int cmd_grid(const GridOpts& o) {
    std::ifstream is(o.spec_path, std::ios::binary);
    if (!is) {
        std::cerr << "grid: cannot read spec " << o.spec_path << '\n';
        return kExitUsage;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    harness::GridSpec spec = harness::grid_spec_from_json(buf.str());
    if (o.threads > 0) spec.threads = o.threads;

    auto t0 = std::chrono::steady_clock::now();
    harness::GridResult res = harness::run_grid(spec);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "grid: " << res.rows.size() << " rows in " << ms << " ms\n";

    if (!o.out_path.empty())
        write_text_file(o.out_path, res.csv);
    else
        std::cout << res.csv;

    if (auto slope = harness::root_color_slope(res))
        std::cerr << "grid: root colors vs log2(n): slope " << slope->slope << ", intercept "
                  << slope->intercept << '\n';

    bool guaranteed = spec.adversary == "det" || spec.adversary == "buffer";
    return (guaranteed && !res.all_bounds_hold) ? kExitVerdict : kExitOk;
}

// ---- export ----------------------------------------------------------

int cmd_export(const std::string& in_path, const std::string& out_path) {
    bool in_json = ends_with(in_path, ".json");
    bool out_json = ends_with(out_path, ".json");
    if (in_json == out_json) {
        std::cerr << "export: need one .json side and one DIMACS side\n";
        return kExitUsage;
    }
    if (in_json) {
        io::ParsedInstance p = io::read_instance_file(in_path);
        io::write_dimacs_file(p.instance.to_graph(), out_path);
    } else {
        GraphData g = io::read_dimacs_file(in_path);
        // A graph file carries no arrival order; present vertices by id.
        OnlineInstance inst;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            std::vector<VertexId> back;
            for (VertexId u : g.neighbors(v))
                if (u < v) back.push_back(u);
            inst.push_arrival(Arrival{v, std::move(back)});
        }
        io::write_instance_file(inst, out_path);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adversarial lower-bound constructions for online graph coloring"};
    app.require_subcommand(1);

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "check structural properties of a graph file");
    verify->add_option("file", vo.file, "DIMACS .col or instance .json")->required();
    verify->add_flag("--chordal", vo.chordal, "chordality with certificate or witness");
    verify->add_flag("--strongly-chordal", vo.strongly_chordal, "strong chordality (brute force)");
    verify->add_flag("--degeneracy", vo.degeneracy, "degeneracy via min-degree peeling");
    verify->add_flag("--chi-brute", vo.chi_brute, "exact chromatic number (small graphs)");

    auto* adv = app.add_subcommand("adversary", "run a construction against an algorithm");
    adv->require_subcommand(1);

    DetOpts dopt;
    auto* det = adv->add_subcommand("det", "adaptive construction, guaranteed bound");
    det->add_option("--d", dopt.d, "clique number")->required();
    det->add_option("--k", dopt.k, "recursion depth")->required();
    det->add_option("--alg", dopt.alg, "algorithm spec");
    det->add_flag("--connector", dopt.connector, "append one vertex touching every component");
    det->add_option("--pad-to", dopt.pad_to, "pad with degree-1 vertices to this size");
    det->add_flag("--no-audit", dopt.no_audit, "skip per-level invariant audits");
    det->add_option("--emit", dopt.emit, "write instance + transcript json");
    det->add_option("--emit-dimacs", dopt.emit_dimacs, "write the graph in DIMACS format");

    RandOpts ropt;
    auto* rnd = adv->add_subcommand("rand", "oblivious distribution, sampled success rate");
    rnd->add_option("--d", ropt.d, "clique number")->required();
    rnd->add_option("--k", ropt.k, "recursion depth")->required();
    rnd->add_option("--alg", ropt.alg, "algorithm spec");
    rnd->add_option("--trials", ropt.trials, "independent samples");
    rnd->add_option("--seed", ropt.seed, "root seed");
    rnd->add_option("--emit-summary", ropt.emit_summary, "write per-trial csv");
    rnd->add_option("--emit", ropt.emit, "write the first instance + transcript json");

    LookaheadOpts lopt;
    auto* look = adv->add_subcommand("lookahead", "phased presentation that defeats lookahead");
    look->add_option("--d", lopt.d, "clique number");
    look->add_option("--k", lopt.k, "structure-level recursion depth");
    look->add_option("--c", lopt.c, "sizing constant");
    look->add_option("--n", lopt.n, "instance size (sized variant)");
    look->add_option("--l", lopt.l, "lookahead window the algorithm gets")->required();
    look->add_option("--alg", lopt.alg, "algorithm spec");
    look->add_option("--trials", lopt.trials, "independent samples");
    look->add_option("--seed", lopt.seed, "root seed");
    look->add_option("--emit", lopt.emit, "write the first instance + transcript json");

    BufferOpts bopt;
    auto* buf = adv->add_subcommand("buffer", "adaptive construction against reordering buffers");
    buf->add_option("--d", bopt.d, "clique number")->required();
    buf->add_option("--eps", bopt.eps, "buffer exponent: b <= n^(1-eps)")->required();
    buf->add_option("--n", bopt.n, "instance size")->required();
    buf->add_option("--b", bopt.b, "buffer size (default floor(n^(1-eps)))");
    buf->add_option("--alg", bopt.alg, "algorithm spec or stalling-first-fit");
    buf->add_flag("--no-audit", bopt.no_audit, "skip forest audits");
    buf->add_option("--emit", bopt.emit, "write instance + transcript json");

    DiskOpts kopt;
    auto* dsk = app.add_subcommand("disk", "tangent-disk embeddings of the 2-chromatic variant");
    auto* embed = dsk->add_subcommand("embed", "embed one sample and verify it");
    embed->add_option("--k", kopt.k, "recursion depth");
    embed->add_option("--rho", kopt.rho, "apex radius / max-min radius ratio")->required();
    embed->add_option("--n", kopt.n, "total disks (sized variant; k is derived)");
    embed->add_option("--seed", kopt.seed, "sample seed");
    embed->add_option("--emit-svg", kopt.emit_svg, "write an svg rendering");
    embed->add_option("--emit-json", kopt.emit_json, "write disk centers/radii json");
    dsk->require_subcommand(1);

    GridOpts gopt;
    auto* grid = app.add_subcommand("grid", "run a parameter grid from a json spec to csv");
    grid->add_option("--spec", gopt.spec_path, "grid spec json")->required();
    grid->add_option("-o,--out", gopt.out_path, "csv output path (default stdout)");
    grid->add_option("--threads", gopt.threads, "override the spec's thread count");

    std::string exp_in, exp_out;
    auto* exp = app.add_subcommand("export", "convert between instance json and DIMACS");
    exp->add_option("--in", exp_in, "input path")->required();
    exp->add_option("--out", exp_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(vo);
        if (*det) return cmd_det(dopt);
        if (*rnd) return cmd_rand(ropt);
        if (*look) return cmd_lookahead(lopt);
        if (*buf) return cmd_buffer(bopt);
        if (*embed) return cmd_disk(kopt);
        if (*grid) return cmd_grid(gopt);
        if (*exp) return cmd_export(exp_in, exp_out);
    } catch (const std::invalid_argument& e) {
        // Parameter guards throw invalid_argument: an input problem.
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& e) {
        // Construction invariants throw logic_error: a verdict failure.
        std::cerr << "invariant failed: " << e.what() << '\n';
        return kExitVerdict;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
