#include <benchmark/benchmark.h>

#include "eaqturbo/decoder.hpp"
#include "eaqturbo/simulate.hpp"
#include "eaqturbo/spectrum.hpp"

using namespace eaqturbo;

namespace {

ConvolutionalEncoder data_encoder(const char* name) {
    return read_encoder_file(std::string(EAQTURBO_DATA_DIR) + "/" + name);
}

void BM_SampleSymplectic(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_symplectic(state.range(0), rng));
}
BENCHMARK(BM_SampleSymplectic)->Arg(3)->Arg(6)->Arg(12);

void BM_PropertyAnalysis(benchmark::State& state) {
    ConvolutionalEncoder enc = data_encoder("pto3r.enc");
    for (auto _ : state) {
        StateDiagram d(enc);
        benchmark::DoNotOptimize(analyze_properties(d));
    }
}
BENCHMARK(BM_PropertyAnalysis);

void BM_DistanceSpectrum(benchmark::State& state) {
    ConvolutionalEncoder enc = data_encoder("pto1r.enc");
    StateDiagram d(enc);
    for (auto _ : state)
        benchmark::DoNotOptimize(distance_spectrum(d, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DistanceSpectrum)->Arg(8)->Arg(12);

void BM_SisoDecode(benchmark::State& state) {
    ConvolutionalEncoder enc = data_encoder("pto1rea.enc");
    SisoDecoder siso(enc);
    size_t frames = state.range(0);
    int n = enc.sig().frame_qubits();
    Rng rng(4);
    ChannelModel model{0.1, 0.0};
    std::vector<PauliOperator> phys;
    for (size_t t = 0; t < frames; ++t) phys.push_back(sample_error(model, n, rng));
    InvertedStream inv = invert_stream(enc, phys, MemoryPin::Final);
    std::vector<FrameSyndrome> syn;
    for (const auto& legs : inv.frames) syn.push_back(syndrome_of(enc, legs));
    std::vector<QubitPrior> priors(frames * n, channel_prior(0.1));
    for (auto _ : state) benchmark::DoNotOptimize(siso.decode(syn, priors, {}, 0.0));
}
BENCHMARK(BM_SisoDecode)->Arg(30)->Arg(300);

void BM_MonteCarloTrial(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.frames_outer = state.range(0);
    cfg.p_values = {0.25};
    cfg.master_seed = 99;
    SimulationRunner runner(data_encoder("pto1rea.enc"), data_encoder("pto1rea.enc"), cfg);
    uint64_t trial = 0;
    for (auto _ : state) benchmark::DoNotOptimize(runner.run_trial(0, trial++));
}
BENCHMARK(BM_MonteCarloTrial)->Arg(30)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
