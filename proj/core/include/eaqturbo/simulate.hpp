#ifndef EAQTURBO_SIMULATE_HPP
#define EAQTURBO_SIMULATE_HPP

#include <iosfwd>
#include <string>

#include "eaqturbo/decoder.hpp"

namespace eaqturbo {

struct SimulationConfig {
    std::string outer_name;  // recorded in the output header
    std::string inner_name;
    size_t frames_outer = 0;
    std::vector<double> p_values;
    double p_ebit = 0.0;
    uint64_t master_seed = 1;
    uint64_t min_failures = 100;
    uint64_t max_trials = 1000000;
    int workers = 0;  // 0 = hardware concurrency
    int max_iterations = 12;
    /// When set, the decoder folds the Bob-side error rate into the Bell
    /// syndrome likelihood instead of treating the outcomes as exact.
    bool decoder_models_ebit_noise = false;

    void validate() const;
};

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// 95% Wilson score interval for failures/trials.
WilsonInterval wilson95(uint64_t failures, uint64_t trials);

struct TrialOutcome {
    bool failure = false;
    bool decode_failed = false;
    bool converged = false;
    int iterations = 0;
};

struct CellResult {
    double p = 0.0;
    double p_ebit = 0.0;
    size_t logical_qubits = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double wer = 0.0;
    WilsonInterval wilson;
    double mean_iterations = 0.0;
    double seconds = 0.0;  // wall clock, reported outside the deterministic rows
};

/// Monte Carlo word-error-rate campaign. Every trial derives its own random
/// stream from (master seed, cell, trial), draws a fresh interleaver,
/// samples an error, decodes, and judges the hard decision against the true
/// logical label. Trials are scheduled in fixed-size waves so the counted
/// prefix is identical for any worker count.
class SimulationRunner {
   public:
    SimulationRunner(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                     SimulationConfig config);

    const SimulationConfig& config() const { return config_; }
    size_t logical_qubits() const { return config_.frames_outer * outer_.sig().logical; }

    TrialOutcome run_trial(size_t cell, uint64_t trial) const;
    CellResult run_cell(size_t cell) const;
    std::vector<CellResult> run_all() const;

   private:
    ConvolutionalEncoder outer_;
    ConvolutionalEncoder inner_;
    SimulationConfig config_;
    SisoDecoder inner_siso_;
    SisoDecoder outer_siso_;
};

/// Header comment records the full configuration and version; wall-clock
/// timings go into trailing comments so the data rows stay byte-identical
/// across worker counts.
void write_simulation_csv(std::ostream& out, const SimulationConfig& config,
                          std::span<const CellResult> cells);

}  // namespace eaqturbo

#endif
