#include <sstream>

#include "doctest.h"
#include "eaqturbo/simulate.hpp"
#include "support/test_util.hpp"

using namespace eaqturbo;
using eaqturbo::testing::load_data_encoder;

namespace {

SimulationConfig small_config() {
    SimulationConfig cfg;
    cfg.outer_name = "pto1rea";
    cfg.inner_name = "pto1rea";
    cfg.frames_outer = 3;
    cfg.p_values = {0.3};
    cfg.master_seed = 2024;
    cfg.min_failures = 5;
    cfg.max_trials = 600;
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("wilson interval brackets the point estimate") {
    WilsonInterval iv = wilson95(100, 1000);
    CHECK(iv.lo > 0.081);
    CHECK(iv.lo < 0.083);
    CHECK(iv.hi > 0.118);
    CHECK(iv.hi < 0.121);

    CHECK(wilson95(0, 50).lo == 0.0);
    CHECK(wilson95(50, 50).hi == 1.0);
    WilsonInterval empty = wilson95(0, 0);
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);
}

TEST_CASE("trial outcomes are a pure function of (seed, cell, trial)") {
    SimulationRunner runner(load_data_encoder("pto1rea.enc"), load_data_encoder("pto1rea.enc"),
                            small_config());
    for (uint64_t t = 0; t < 10; ++t) {
        TrialOutcome a = runner.run_trial(0, t);
        TrialOutcome b = runner.run_trial(0, t);
        CHECK(a.failure == b.failure);
        CHECK(a.iterations == b.iterations);
        CHECK(a.converged == b.converged);
    }
}

TEST_CASE("cell results do not depend on the worker count") {
    SimulationConfig cfg = small_config();
    cfg.workers = 1;
    SimulationRunner one(load_data_encoder("pto1rea.enc"), load_data_encoder("pto1rea.enc"), cfg);
    cfg.workers = 3;
    SimulationRunner three(load_data_encoder("pto1rea.enc"), load_data_encoder("pto1rea.enc"),
                           cfg);
    CellResult a = one.run_cell(0);
    CellResult b = three.run_cell(0);
    CHECK(a.trials == b.trials);
    CHECK(a.failures == b.failures);
    CHECK(a.mean_iterations == b.mean_iterations);
    CHECK(a.failures <= a.trials);
    CHECK(a.wer == double(a.failures) / double(a.trials));
}

TEST_CASE("a noiseless cell never fails") {
    SimulationConfig cfg = small_config();
    cfg.p_values = {0.0};
    cfg.max_trials = 64;
    SimulationRunner runner(load_data_encoder("pto1rea.enc"), load_data_encoder("pto1rea.enc"),
                            cfg);
    CellResult cell = runner.run_cell(0);
    CHECK(cell.trials == 64);
    CHECK(cell.failures == 0);
    CHECK(cell.wer == 0.0);
}

TEST_CASE("csv rows are deterministic; timing lives in comments") {
    SimulationConfig cfg = small_config();
    std::vector<CellResult> cells(1);
    cells[0].p = 0.3;
    cells[0].logical_qubits = 3;
    cells[0].trials = 100;
    cells[0].failures = 7;
    cells[0].wer = 0.07;
    cells[0].wilson = wilson95(7, 100);
    cells[0].mean_iterations = 2.5;
    cells[0].seconds = 1.25;

    std::ostringstream out;
    write_simulation_csv(out, cfg, cells);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> data_lines;
    bool timing_comment = false;
    while (std::getline(in, line)) {
        if (line.rfind("# timing", 0) == 0) timing_comment = true;
        if (!line.empty() && line[0] != '#') data_lines.push_back(line);
    }
    REQUIRE(data_lines.size() == 2);
    CHECK(data_lines[0] == "p,p_ebit,logical_qubits,trials,failures,wer,wilson_lo,wilson_hi,mean_iters");
    CHECK(data_lines[1].rfind("0.3,0,3,100,7,0.07,", 0) == 0);
    CHECK(timing_comment);
    CHECK(data_lines[1].find("1.25") == std::string::npos);  // wall time not in the row
}

TEST_CASE("configuration validation rejects bad inputs") {
    SimulationConfig cfg = small_config();
    cfg.p_values = {1.5};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.min_failures = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.frames_outer = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
