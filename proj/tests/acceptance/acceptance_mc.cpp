// Acceptance criteria 8 and 9: scaled-down Monte Carlo threshold ordering
// and Bob-side ebit-noise replication. Long-running.
#include <cstdio>

#include "doctest.h"
#include "eaqturbo/simulate.hpp"
#include "support/test_util.hpp"

using namespace eaqturbo;
using eaqturbo::testing::load_data_encoder;

namespace {

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
}

std::vector<CellResult> run(const char* outer, const char* inner, size_t frames,
                            std::vector<double> ps, double p_ebit, uint64_t seed,
                            uint64_t max_trials) {
    SimulationConfig cfg;
    cfg.outer_name = outer;
    cfg.inner_name = inner;
    cfg.frames_outer = frames;
    cfg.p_values = std::move(ps);
    cfg.p_ebit = p_ebit;
    cfg.master_seed = seed;
    cfg.min_failures = 100;
    cfg.max_trials = max_trials;
    cfg.workers = 0;
    SimulationRunner runner(load_data_encoder(outer), load_data_encoder(inner), cfg);
    std::vector<CellResult> cells = runner.run_all();
    for (const CellResult& c : cells)
        std::printf("  %s|%s p=%.3g p_ebit=%.1e trials=%llu failures=%llu wer=%.5g (%.0f s)\n",
                    outer, inner, c.p, c.p_ebit, (unsigned long long)c.trials,
                    (unsigned long long)c.failures, c.wer, c.seconds);
    std::fflush(stdout);
    return cells;
}

bool overlaps(const CellResult& a, const CellResult& b) {
    return a.wilson.lo <= b.wilson.hi && b.wilson.lo <= a.wilson.hi;
}

}  // namespace

TEST_CASE("criterion 8: scaled-down threshold ordering") {
    // fully assisted rate-1/9 code, ~100 logical qubits; the p = 0.25 cell
    // sits far below the resolvable failure rate and caps at max_trials
    std::vector<CellResult> assisted;
    assisted.push_back(run("pto1rea.enc", "pto1rea.enc", 100, {0.25}, 0.0, 8801, 400000)[0]);
    assisted.push_back(run("pto1rea.enc", "pto1rea.enc", 100, {0.30}, 0.0, 8801, 500000)[0]);
    assisted.push_back(run("pto1rea.enc", "pto1rea.enc", 100, {0.34}, 0.0, 8801, 50000)[0]);
    bool assisted_ok = assisted[0].wer < assisted[1].wer && assisted[1].wer < assisted[2].wer;
    CHECK_MESSAGE(assisted_ok, "expected WER(0.25) < WER(0.30) < WER(0.34)");

    // unassisted rate-1/9 code around its pseudothreshold
    auto unassisted = run("pto1r.enc", "pto1r.enc", 100, {0.07, 0.10}, 0.0, 8802, 150000);
    bool unassisted_ok = unassisted[0].wer < unassisted[1].wer;
    CHECK_MESSAGE(unassisted_ok, "expected WER(0.07) < WER(0.10)");

    report(8, assisted_ok && unassisted_ok,
           "assisted WER " + std::to_string(assisted[0].wer) + " < " +
               std::to_string(assisted[1].wer) + " < " + std::to_string(assisted[2].wer) +
               "; unassisted WER " + std::to_string(unassisted[0].wer) + " < " +
               std::to_string(unassisted[1].wer));
}

TEST_CASE("criterion 9: ebit-noise replication") {
    struct Combo {
        const char* outer;
        const char* inner;
        double p;
    };
    // (inner, outer) pairs at their fixed channel rates
    const Combo combos[3] = {{"pto3r.enc", "pto3rea.enc", 0.14},
                             {"pto3rea.enc", "pto3r.enc", 0.07},
                             {"pto3rea.enc", "pto3rea.enc", 0.19}};

    CellResult base[3], tiny[3], heavy[3];
    for (int i = 0; i < 3; ++i) {
        base[i] = run(combos[i].outer, combos[i].inner, 100, {combos[i].p}, 0.0,
                      9900 + i, 60000)[0];
        tiny[i] = run(combos[i].outer, combos[i].inner, 100, {combos[i].p}, 1e-5,
                      9910 + i, 60000)[0];
    }
    bool replication = true;
    for (int i = 0; i < 3; ++i) {
        bool ok = overlaps(base[i], tiny[i]);
        CHECK_MESSAGE(ok, "p_ebit=1e-5 interval should overlap the clean run for combo ", i);
        replication = replication && ok;
    }

    // heavier ebit noise hurts the outer-assisted combination more than the
    // inner-assisted one
    heavy[0] = run(combos[0].outer, combos[0].inner, 100, {combos[0].p}, 1e-3, 9920, 60000)[0];
    heavy[1] = run(combos[1].outer, combos[1].inner, 100, {combos[1].p}, 1e-3, 9921, 60000)[0];
    double degrade_inner_assisted = heavy[0].wer - base[0].wer;  // PTO3REA inner / PTO3R outer
    double degrade_outer_assisted = heavy[1].wer - base[1].wer;  // PTO3R inner / PTO3REA outer
    bool ordering = degrade_outer_assisted > degrade_inner_assisted;
    CHECK_MESSAGE(ordering, "outer-assisted combo should degrade more at p_ebit=1e-3");

    report(9, replication && ordering,
           "1e-5 runs overlap baselines: " + std::string(replication ? "yes" : "no") +
               "; degradation outer-assisted " + std::to_string(degrade_outer_assisted) +
               " vs inner-assisted " + std::to_string(degrade_inner_assisted));
}
