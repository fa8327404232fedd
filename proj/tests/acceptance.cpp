// Acceptance gate: one line per criterion, PASS or FAIL, all criteria run
// even when an earlier one fails. Exit code 0 only if every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "onlinecol/adversary_det.hpp"
#include "onlinecol/adversary_ext.hpp"
#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/algorithms.hpp"
#include "onlinecol/disk.hpp"
#include "onlinecol/harness.hpp"
#include "onlinecol/oracles.hpp"
#include "onlinecol/stats.hpp"

using namespace onlinecol;
using namespace onlinecol::algorithms;

namespace {

using Fails = std::vector<std::string>;

void expect(Fails& fails, bool cond, const std::string& what) {
    if (!cond && fails.size() < 8) fails.push_back(what);
}

int ceil_log2(long long n) {
    int k = 0;
    while ((1LL << k) < n) ++k;
    return k;
}

// First-fit color ceiling audit, fed with every instance the criteria
// below generate. (degeneracy + 1) * (ceil(log2 n) + 1) bounds first fit
// on any arrival order of these constructions.
struct CeilingAudit {
    long long checked = 0;
    double worst_ratio = 0.0;
    std::string worst_desc;
    std::optional<std::string> violation;

    void note(const GraphData& g, const OnlineInstance& inst) {
        long long n = g.num_vertices();
        if (n == 0) return;
        FirstFit ff;
        Transcript t = run_online(ff, inst);
        int deg = oracles::degeneracy(g).degeneracy;
        long long cap = (deg + 1LL) * (ceil_log2(n) + 1LL);
        long long used = t.num_colors_total();
        ++checked;
        double ratio = static_cast<double>(used) / static_cast<double>(cap);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            std::ostringstream os;
            os << "n=" << n << " degeneracy=" << deg << " colors=" << used << " cap=" << cap;
            worst_desc = os.str();
        }
        if (used > cap && !violation) {
            std::ostringstream os;
            os << "first fit used " << used << " colors, cap " << cap << " (n=" << n
               << ", degeneracy=" << deg << ")";
            violation = os.str();
        }
    }
};

CeilingAudit g_ceiling;

void check_det_output(Fails& fails, const adversary::DetResult& res, const std::string& tag) {
    expect(fails, !res.graph.validate().has_value(), tag + ": graph inconsistent");
    expect(fails, !validate_instance(res.instance, res.graph).has_value(),
           tag + ": instance does not present the graph");
    expect(fails, !validate_transcript(res.transcript, res.graph).has_value(),
           tag + ": transcript is not a proper coloring");
    auto ch = oracles::check_chordal(res.graph);
    expect(fails, ch.chordal(), tag + ": output not chordal");
    if (ch.chordal()) expect(fails, ch.certificate->omega == res.d, tag + ": clique number != d");
    expect(fails, 4LL * res.root_color_count >= 1LL * res.d_even * res.k,
           tag + ": root color bound failed");
    expect(fails,
           static_cast<int>(res.transcript.colors_used(res.root_vertices).size()) ==
               res.root_color_count,
           tag + ": root color accounting mismatch");
    long long core_cap = (res.d_even / 2LL) * ((2LL << res.k) - 1);
    long long ext = (res.d % 2 == 1) ? res.base_copies : 0;
    expect(fails, res.structure_size <= core_cap + ext, tag + ": size cap exceeded");
    g_ceiling.note(res.graph, res.instance);
}

// ---- criterion 1 -------------------------------------------------------

void criterion_1(Fails& fails) {
    for (const std::string& spec : algorithm_zoo())
        for (int d : {2, 3, 4, 6})
            for (int k = 1; k <= 8; ++k) {
                adversary::DetOptions opt;
                opt.d = d;
                opt.k = k;
                auto alg = make_algorithm(spec);
                adversary::DetResult res = adversary::build_gk_det(*alg, opt);
                std::ostringstream tag;
                tag << "alg=" << spec << " d=" << d << " k=" << k;
                check_det_output(fails, res, tag.str());
                if (!fails.empty()) return;
            }
}

// ---- criterion 2 -------------------------------------------------------

void criterion_2(Fails& fails) {
    SplitRng rng(20260816);
    int rand_successes = 0, rand_runs = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SplitRng local = rng.split(static_cast<uint64_t>(trial));
        int d = 2 + static_cast<int>(local.next_below(7)); // 2..8
        std::string spec;
        switch (local.next_below(5)) {
            case 0: spec = "first-fit"; break;
            case 1: spec = "always-new-color"; break;
            case 2: spec = "highest-feasible"; break;
            default:
                spec = "random-feasible:seed=" + std::to_string(local.next_below(1000000));
        }
        std::ostringstream tag;
        tag << "trial=" << trial << " alg=" << spec << " d=" << d;
        if (local.next_bit()) {
            int k = 1 + static_cast<int>(local.next_below(7));
            adversary::DetOptions opt;
            opt.d = d;
            opt.k = k;
            opt.audit = true;
            auto alg = make_algorithm(spec);
            adversary::DetResult res = adversary::build_gk_det(*alg, opt);
            tag << " det k=" << k;
            check_det_output(fails, res, tag.str());
        } else {
            int k = 1 + static_cast<int>(local.next_below(3));
            adversary::RandResult res = adversary::sample_gk(local.split(1), d, k, true);
            auto alg = make_algorithm(spec);
            Transcript t = run_online(*alg, res.instance);
            tag << " rand k=" << k;
            expect(fails, !validate_instance(res.instance, res.graph).has_value(),
                   tag.str() + ": instance invalid");
            expect(fails, !validate_transcript(t, res.graph).has_value(),
                   tag.str() + ": transcript invalid");
            auto ch = oracles::check_chordal(res.graph);
            expect(fails, ch.chordal() && ch.certificate->omega == res.d,
                   tag.str() + ": wrong clique structure");
            ++rand_runs;
            rand_successes += res.meets_root_bound(t) ? 1 : 0;
            g_ceiling.note(res.graph, res.instance);
        }
        if (fails.size() >= 8) return;
    }
    // Sanity only: sampled runs should not be uniformly hopeless.
    expect(fails, rand_runs == 0 || 2 * rand_successes >= rand_runs,
           "sampled runs met the bound in under half the cases");
}

// ---- criterion 3 -------------------------------------------------------

void criterion_3(Fails& fails) {
    int built = 0;
    // Adaptive builds, alternating plain (forest) and connected (tree).
    for (int i = 0; i < 120; ++i) {
        adversary::DetOptions opt;
        opt.d = 2;
        opt.k = 1 + (i % 10);
        opt.connector = (i % 2 == 1);
        auto alg = make_algorithm(algorithm_zoo()[static_cast<size_t>(i) % 4]);
        adversary::DetResult res = adversary::build_gk_det(*alg, opt);
        std::ostringstream tag;
        tag << "adaptive i=" << i << " k=" << opt.k;
        if (opt.connector)
            expect(fails, oracles::is_tree(res.graph), tag.str() + ": expected a tree");
        else
            expect(fails, oracles::is_forest(res.graph), tag.str() + ": expected a forest");
        expect(fails, oracles::degeneracy(res.graph).degeneracy <= 1,
               tag.str() + ": degeneracy above 1");
        auto ch = oracles::check_chordal(res.graph);
        expect(fails, ch.chordal(), tag.str() + ": not chordal");
        if (ch.chordal() && res.graph.num_edges() > 0)
            expect(fails, oracles::treewidth_chordal(*ch.certificate) == 1,
                   tag.str() + ": treewidth != 1");
        if (res.graph.num_vertices() <= 20)
            expect(fails, oracles::check_strongly_chordal_bruteforce(res.graph).strongly_chordal,
                   tag.str() + ": not strongly chordal");
        g_ceiling.note(res.graph, res.instance);
        ++built;
        if (fails.size() >= 8) return;
    }
    // Sampled builds; a connector is appended structurally afterwards.
    for (int i = 0; i < 80; ++i) {
        adversary::RandResult res =
            adversary::sample_gk(SplitRng(900 + static_cast<uint64_t>(i)), 2, 1 + (i % 3), false);
        std::ostringstream tag;
        tag << "sampled i=" << i;
        expect(fails, oracles::is_forest(res.graph), tag.str() + ": expected a forest");

        GraphData connected = res.graph;
        VertexId conn = connected.add_vertex();
        OnlineInstance inst = res.instance;
        std::vector<VertexId> back;
        for (int node : res.top_components)
            back.push_back(res.forest.node_members(node).front());
        std::sort(back.begin(), back.end());
        for (VertexId u : back) connected.add_edge(conn, u);
        inst.push_arrival({conn, back});
        expect(fails, oracles::is_tree(connected), tag.str() + ": connector did not give a tree");
        expect(fails, oracles::degeneracy(connected).degeneracy <= 1,
               tag.str() + ": degeneracy above 1 after connector");
        if (connected.num_vertices() <= 20)
            expect(fails,
                   oracles::check_strongly_chordal_bruteforce(connected).strongly_chordal,
                   tag.str() + ": not strongly chordal");
        g_ceiling.note(connected, inst);
        ++built;
        if (fails.size() >= 8) return;
    }
    expect(fails, built == 200, "expected 200 instances");
}

// ---- criterion 4 -------------------------------------------------------

void criterion_4(Fails& fails) {
    for (int d : {2, 4}) {
        auto outcomes = adversary::enumerate_gk_tiny(d, 2);
        expect(fails, outcomes.size() == 64, "expected 64 equally likely outcomes");
        long long successes = 0;
        for (const adversary::RandResult& res : outcomes) {
            FirstFit ff;
            Transcript t = run_online(ff, res.instance);
            successes += res.meets_root_bound(t) ? 1 : 0;
            g_ceiling.note(res.graph, res.instance);
        }
        std::ostringstream tag;
        tag << "d=" << d << ": " << successes << "/64 outcomes met the bound, need 36";
        expect(fails, 4096 * successes >= 144495, tag.str());
    }
}

// ---- criterion 5 -------------------------------------------------------

void criterion_5(Fails& fails) {
    const long long trials = 2000;
    for (const std::string& spec : {std::string("first-fit"), std::string("always-new-color")})
        for (int k : {3, 4}) {
            auto factory = adversary::make_trial_factory(spec, SplitRng(404));
            adversary::TrialObserver observer = [](std::uint64_t, const adversary::RandResult& res,
                                                   const Transcript&) {
                g_ceiling.note(res.graph, res.instance);
            };
            auto est = adversary::estimate_root_color_probability(factory, 2, k, trials,
                                                                  SplitRng(7000 + k), 1, observer);
            std::ostringstream tag;
            tag << "alg=" << spec << " d=2 k=" << k << ": wilson99=" << est.wilson_lower_99
                << " mean=" << est.mean_root_colors;
            expect(fails, est.wilson_lower_99 >= 0.52, tag.str() + " (needs wilson >= 0.52)");
            expect(fails, est.mean_root_colors >= (2 - 1) * k / 8.0,
                   tag.str() + " (needs mean >= (d-1)k/8)");
        }
}

// ---- criterion 6 -------------------------------------------------------

void criterion_6(Fails& fails) {
    SplitRng rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        SplitRng local = rng.split(static_cast<uint64_t>(trial));
        int n = 4 + static_cast<int>(local.next_below(11)); // 4..14
        double p = 0.1 + 0.8 * local.next_unit();
        GraphData g(n);
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                if (local.next_unit() < p) g.add_edge(u, v);
        auto fast = oracles::check_chordal(g);
        auto brute = oracles::find_chordless_cycle_bruteforce(g);
        std::ostringstream tag;
        tag << "trial=" << trial << " n=" << n;
        expect(fails, fast.chordal() == brute.empty(),
               tag.str() + ": chordality check disagrees with subset brute force");
        if (fast.chordal())
            expect(fails,
                   fast.certificate->omega == oracles::chromatic_number_bruteforce(g),
                   tag.str() + ": omega differs from brute-force chromatic number");
        if (fails.size() >= 8) return;
    }
    // Construction outputs small enough for the brute-force oracles.
    for (int d : {2, 3, 4})
        for (int k : {1, 2}) {
            adversary::DetOptions opt;
            opt.d = d;
            opt.k = k;
            auto alg = make_algorithm("first-fit");
            adversary::DetResult res = adversary::build_gk_det(*alg, opt);
            if (res.graph.num_vertices() > 24) continue;
            std::ostringstream tag;
            tag << "construction d=" << d << " k=" << k;
            expect(fails, oracles::chromatic_number_bruteforce(res.graph) == d,
                   tag.str() + ": chromatic number != d");
        }
}

// ---- criterion 7 -------------------------------------------------------

void criterion_7(Fails& fails) {
    for (int k = 1; k <= 3; ++k) {
        double base = std::pow(12.0, k - 1);
        for (double rho : {1.01 * base, 12.0 * base}) {
            for (int seed = 0; seed < 50; ++seed) {
                adversary::RandResult s =
                    adversary::sample_gk(SplitRng(700 + static_cast<uint64_t>(100 * k + seed)), 2,
                                         k, false);
                disk::DiskArrangement arr = disk::embed_disks(s, rho);
                std::ostringstream tag;
                tag << "k=" << k << " rho=" << rho << " seed=" << seed;

                auto rep = disk::verify_embedding(arr);
                expect(fails, rep.ok, tag.str() + ": " + rep.detail);
                double ratio = arr.max_radius() / arr.min_radius();
                expect(fails, std::abs(ratio - rho) <= 1e-9 * rho,
                       tag.str() + ": radius ratio drifted");
                expect(fails,
                       static_cast<double>(arr.disks.size()) <= 2.0 * std::pow(12.0, k),
                       tag.str() + ": too many disks");

                GraphData g = disk::intersection_graph(arr.disks);
                expect(fails, oracles::is_bipartite(g) && g.num_edges() > 0,
                       tag.str() + ": intersection graph not 2-chromatic");
                if (g.num_vertices() <= 32)
                    expect(fails, oracles::chromatic_number_bruteforce(g, 32) == 2,
                           tag.str() + ": brute-force chromatic number != 2");
                g_ceiling.note(g, arr.instance);
                if (fails.size() >= 8) return;
            }
        }
    }
}

// ---- criterion 8 -------------------------------------------------------

void criterion_8(Fails& fails) {
    // Structure-level: the window never helps first fit across a phase gap.
    for (int k : {3, 4}) {
        const long long trials = 2000;
        long long successes = 0, root_sum = 0;
        for (long long t = 0; t < trials; ++t) {
            adversary::LookaheadResult res = adversary::build_lookahead_phased(
                SplitRng(8000 + static_cast<uint64_t>(k)).split(static_cast<uint64_t>(t)), 2, k,
                8);
            if (t < 25) {
                auto iso = adversary::verify_phase_isolation(res.instance, res.graph, res.l,
                                                             res.real_phase_ends);
                expect(fails, !iso.has_value(), "phase isolation: " + iso.value_or(""));
                g_ceiling.note(res.graph, res.instance);
            }
            FirstFit ff;
            Transcript tr = run_online_lookahead(ff, res.instance, static_cast<int>(res.l));
            successes += res.meets_root_bound(tr) ? 1 : 0;
            root_sum += res.root_colors(tr);
        }
        double wilson = stats::wilson_lower_bound(successes, trials);
        double mean = static_cast<double>(root_sum) / static_cast<double>(trials);
        std::ostringstream tag;
        tag << "structure k=" << k << " l=8: wilson99=" << wilson << " mean=" << mean;
        expect(fails, wilson >= 0.52, tag.str() + " (needs wilson >= 0.52)");
        expect(fails, mean >= (2 - 1) * k / 8.0, tag.str() + " (needs mean >= (d-1)k/8)");
    }

    // Sized spot checks: isolation plus the guarantee at derived depth.
    struct Sized {
        long long n, l;
        double c;
    };
    for (const Sized& sz : {Sized{4000, 10, 1.0}, Sized{4000, 100, 1.0}, Sized{600, 4, 1.0}}) {
        long long successes = 0;
        const long long trials = 100;
        for (long long t = 0; t < trials; ++t) {
            adversary::LookaheadResult res = adversary::build_lookahead_instance(
                SplitRng(8100).split(static_cast<uint64_t>(t)), 2, sz.c, sz.n, sz.l);
            std::ostringstream tag;
            tag << "sized n=" << sz.n << " l=" << sz.l << " trial=" << t;
            expect(fails, res.instance.num_steps() == sz.n, tag.str() + ": wrong padded size");
            if (t < 10) {
                auto iso = adversary::verify_phase_isolation(res.instance, res.graph, res.l,
                                                             res.real_phase_ends);
                expect(fails, !iso.has_value(), tag.str() + ": " + iso.value_or(""));
                g_ceiling.note(res.graph, res.instance);
            }
            FirstFit ff;
            Transcript tr = run_online_lookahead(ff, res.instance, static_cast<int>(res.l));
            successes += res.meets_root_bound(tr) ? 1 : 0;
        }
        std::ostringstream tag;
        tag << "sized n=" << sz.n << " l=" << sz.l << ": " << successes << "/" << trials;
        expect(fails, stats::wilson_lower_bound(successes, trials) >= 0.52,
               tag.str() + " (needs wilson >= 0.52)");
        if (fails.size() >= 8) return;
    }
}

// ---- criterion 9 -------------------------------------------------------

void criterion_9(Fails& fails) {
    for (int d : {2, 4})
        for (double eps : {1.0, 0.5}) {
            long long n = 1LL << static_cast<long long>(std::ceil(7.0 / eps));
            long long b = static_cast<long long>(
                std::floor(std::pow(static_cast<double>(n), 1.0 - eps) + 1e-9));
            for (int which = 0; which < 2; ++which) {
                FirstFit inner;
                ImmediateBuffered immediate(inner);
                StallingFirstFit stalling;
                BufferedAlgorithm& alg =
                    which == 0 ? static_cast<BufferedAlgorithm&>(immediate)
                               : static_cast<BufferedAlgorithm&>(stalling);
                adversary::BufferResult res =
                    adversary::build_buffer_adversary(alg, d, eps, n, b, true);
                std::ostringstream tag;
                tag << "alg=" << alg.name() << " d=" << d << " eps=" << eps << " n=" << n
                    << " b=" << b;
                expect(fails, !validate_instance(res.instance, res.graph).has_value(),
                       tag.str() + ": instance invalid");
                expect(fails, !validate_transcript(res.transcript, res.graph).has_value(),
                       tag.str() + ": transcript invalid");
                for (const auto& ph : res.phases)
                    expect(fails, ph.good >= ph.required_good,
                           tag.str() + ": a phase fell below its quota of good subgraphs");
                expect(fails, 8LL * res.root_color_count >= 1LL * res.d_even * res.k_prime,
                       tag.str() + ": final root color bound failed");
                int k_prime_floor = static_cast<int>(
                    std::ceil(eps * std::log2(static_cast<double>(n)) / 8.0 - 1e-9));
                expect(fails, res.k_prime >= k_prime_floor,
                       tag.str() + ": reduced depth below eps*log2(n)/8");
                g_ceiling.note(res.graph, res.instance);
                if (fails.size() >= 8) return;
            }
        }
}

// ---- criterion 10 ------------------------------------------------------

void criterion_10(Fails& fails) {
    expect(fails, g_ceiling.checked >= 8000,
           "expected the earlier criteria to feed at least 8000 instances");
    expect(fails, !g_ceiling.violation.has_value(), g_ceiling.violation.value_or(""));
}

// ---- criterion 11 ------------------------------------------------------

void criterion_11(Fails& fails) {
    const char* specs[] = {
        R"({"adversary":"det","alg":"highest-feasible","d":[2,4],"k":[2,4,6],"trials":2,"seed":5})",
        R"({"adversary":"rand","alg":"random-feasible:seed=3","d":[3],"k":[1,2],"trials":20,"seed":11})",
        R"({"adversary":"lookahead","alg":"first-fit","d":[2],"k":[2],"l":[4],"trials":10,"seed":2})",
        R"({"adversary":"buffer","alg":"stalling-first-fit","d":[2,4],"eps":[1.0],"n":[128],"seed":3})",
    };
    for (const char* text : specs) {
        harness::GridSpec spec = harness::grid_spec_from_json(text);
        harness::GridResult a = harness::run_grid(spec);
        harness::GridResult b = harness::run_grid(spec);
        std::ostringstream tag;
        tag << "adversary=" << spec.adversary;
        expect(fails, !a.rows.empty(), tag.str() + ": no rows");
        expect(fails, a.csv == b.csv, tag.str() + ": rerun changed the csv bytes");
        if (spec.adversary == "det" || spec.adversary == "buffer")
            expect(fails, a.all_bounds_hold, tag.str() + ": a guaranteed bound failed");
    }
}

struct Criterion {
    int id;
    std::string title;
    std::function<void(Fails&)> run;
    double budget_seconds; // 0 = no budget
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "guaranteed bound and structure for every zoo algorithm (d in {2,3,4,6}, k to 8)",
         criterion_1, 60.0},
        {2, "100 randomized audited runs across adversaries, d, and algorithms", criterion_2, 0},
        {3, "200 two-chromatic instances: forests, trees via connector, degeneracy 1",
         criterion_3, 0},
        {4, "exact depth-2 distribution: at least 36 of 64 outcomes beat first fit",
         criterion_4, 0},
        {5, "sampled success probability and mean root colors at depth 3 and 4", criterion_5,
         300.0},
        {6, "oracle cross-validation on 500 random graphs and small constructions", criterion_6,
         0},
        {7, "disk embeddings verify with exact radius ratio and 2-chromatic contacts",
         criterion_7, 0},
        {8, "lookahead presentations stay isolated and keep the sampled bound", criterion_8,
         300.0},
        {9, "buffer constructions hold their quotas and final bound", criterion_9, 0},
        {10, "first fit stays within (degeneracy+1)(ceil(log2 n)+1) on every instance",
         criterion_10, 0},
        {11, "grid reruns are byte-identical and guaranteed bounds hold", criterion_11, 0},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Fails fails;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(fails);
        } catch (const std::exception& e) {
            fails.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            std::ostringstream os;
            os << "exceeded the " << c.budget_seconds << "s budget (" << secs << "s)";
            fails.push_back(os.str());
        }
        if (fails.empty()) {
            std::printf("PASS criterion %2d: %s (%.1fs)\n", c.id, c.title.c_str(), secs);
        } else {
            ++failed;
            std::printf("FAIL criterion %2d: %s (%.1fs)\n", c.id, c.title.c_str(), secs);
            for (const std::string& f : fails) std::printf("      - %s\n", f.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("ceiling audit: %lld instances, worst ratio %.3f (%s)\n", g_ceiling.checked,
                g_ceiling.worst_ratio, g_ceiling.worst_desc.c_str());
    return failed == 0 ? 0 : 1;
}
