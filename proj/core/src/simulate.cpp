#include "eaqturbo/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace eaqturbo {

void SimulationConfig::validate() const {
    if (frames_outer == 0) throw std::invalid_argument("frames_outer must be >= 1");
    if (p_values.empty()) throw std::invalid_argument("need at least one p value");
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0, 1]");
    if (!(p_ebit >= 0.0 && p_ebit <= 1.0)) throw std::invalid_argument("p_ebit outside [0, 1]");
    if (min_failures < 1) throw std::invalid_argument("min_failures must be >= 1");
    if (max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

WilsonInterval wilson95(uint64_t failures, uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(failures) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (failures == 0) iv.lo = 0.0;
    if (failures == trials) iv.hi = 1.0;
    return iv;
}

SimulationRunner::SimulationRunner(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                                   SimulationConfig config)
    : outer_(std::move(outer)),
      inner_(std::move(inner)),
      config_(std::move(config)),
      inner_siso_(inner_),
      outer_siso_(outer_) {
    config_.validate();
    // fail early rather than in a worker thread
    build_turbo(outer_, inner_, config_.frames_outer, Interleaver::identity(
        config_.frames_outer * outer_.sig().frame_qubits()));
}

TrialOutcome SimulationRunner::run_trial(size_t cell, uint64_t trial) const {
    Rng rng = Rng::for_trial(config_.master_seed, cell, trial);
    ChannelModel model{config_.p_values[cell], config_.p_ebit};

    TurboCode code = build_turbo(outer_, inner_, config_.frames_outer, rng);
    PauliOperator error = sample_error(model, code.physical_qubits(), rng);
    std::vector<Pauli> inner_bob =
        sample_ebit_error(model, code.frames_inner * code.inner.sig().ebit, rng);
    std::vector<Pauli> outer_bob =
        sample_ebit_error(model, code.frames_outer * code.outer.sig().ebit, rng);

    TurboInversion truth = turbo_invert(code, error, inner_bob, outer_bob);

    TurboDecoder decoder(code, inner_siso_, outer_siso_);
    ChannelModel decoder_model{model.p, config_.decoder_models_ebit_noise ? model.p_ebit : 0.0};
    TurboDecodeResult decoded = decoder.decode(truth.inner_syndromes, truth.outer_syndromes,
                                               decoder_model, config_.max_iterations);

    TrialOutcome outcome;
    outcome.decode_failed = decoded.failed;
    outcome.converged = decoded.converged;
    outcome.iterations = decoded.iterations;
    outcome.failure = !judge(decoded, truth.outer_labels);
    return outcome;
}

CellResult SimulationRunner::run_cell(size_t cell) const {
    auto t0 = std::chrono::steady_clock::now();
    constexpr uint64_t wave = 256;
    unsigned workers = config_.workers > 0 ? static_cast<unsigned>(config_.workers)
                                           : std::max(1u, std::thread::hardware_concurrency());

    CellResult res;
    res.p = config_.p_values[cell];
    res.p_ebit = config_.p_ebit;
    res.logical_qubits = logical_qubits();

    uint64_t iterations_total = 0;
    for (uint64_t base = 0; base < config_.max_trials; base += wave) {
        uint64_t count = std::min(wave, config_.max_trials - base);
        std::vector<TrialOutcome> outcomes(count);
        if (workers <= 1 || count == 1) {
            for (uint64_t i = 0; i < count; ++i) outcomes[i] = run_trial(cell, base + i);
        } else {
            std::atomic<uint64_t> next{0};
            auto work = [&] {
                for (;;) {
                    uint64_t i = next.fetch_add(1);
                    if (i >= count) return;
                    outcomes[i] = run_trial(cell, base + i);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        // count the wave in trial order; stop exactly at the threshold so the
        // totals do not depend on scheduling
        for (uint64_t i = 0; i < count; ++i) {
            ++res.trials;
            iterations_total += outcomes[i].iterations;
            if (outcomes[i].failure) ++res.failures;
            if (res.failures >= config_.min_failures) break;
        }
        if (res.failures >= config_.min_failures) break;
    }

    res.wer = res.trials ? static_cast<double>(res.failures) / static_cast<double>(res.trials)
                         : 0.0;
    res.wilson = wilson95(res.failures, res.trials);
    res.mean_iterations =
        res.trials ? static_cast<double>(iterations_total) / static_cast<double>(res.trials) : 0.0;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CellResult> SimulationRunner::run_all() const {
    std::vector<CellResult> cells;
    cells.reserve(config_.p_values.size());
    for (size_t c = 0; c < config_.p_values.size(); ++c) cells.push_back(run_cell(c));
    return cells;
}

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

}  // namespace

void write_simulation_csv(std::ostream& out, const SimulationConfig& config,
                          std::span<const CellResult> cells) {
    out << "# eaqturbo simulate 1.0.0\n";
    out << "# outer=" << config.outer_name << " inner=" << config.inner_name
        << " frames_outer=" << config.frames_outer << " p_ebit=" << fmt(config.p_ebit)
        << " seed=" << config.master_seed << " min_failures=" << config.min_failures
        << " max_trials=" << config.max_trials << " workers=" << config.workers
        << " max_iterations=" << config.max_iterations
        << " decoder_models_ebit_noise=" << (config.decoder_models_ebit_noise ? 1 : 0) << "\n";
    out << "p,p_ebit,logical_qubits,trials,failures,wer,wilson_lo,wilson_hi,mean_iters\n";
    for (const CellResult& c : cells) {
        out << fmt(c.p) << ',' << fmt(c.p_ebit) << ',' << c.logical_qubits << ',' << c.trials
            << ',' << c.failures << ',' << fmt(c.wer) << ',' << fmt(c.wilson.lo) << ','
            << fmt(c.wilson.hi) << ',' << fmt(c.mean_iterations) << "\n";
    }
    for (const CellResult& c : cells)
        out << "# timing p=" << fmt(c.p) << " seconds=" << fmt(c.seconds) << "\n";
}

}  // namespace eaqturbo
