#include <cmath>

#include "doctest.h"
#include "eaqturbo/decoder.hpp"
#include "support/bayes_oracle.hpp"
#include "support/test_util.hpp"

using namespace eaqturbo;
using eaqturbo::testing::bayes_oracle;
using eaqturbo::testing::load_data_encoder;
using eaqturbo::testing::pauli;
using eaqturbo::testing::random_pauli;

namespace {

void compare_with_oracle(const ConvolutionalEncoder& enc, size_t frames, uint64_t seed,
                         double p, double p_ebit) {
    SisoDecoder siso(enc);
    Rng rng(seed);
    int n = enc.sig().frame_qubits();

    // sample a stream error and derive its syndromes
    std::vector<PauliOperator> phys;
    for (size_t t = 0; t < frames; ++t) phys.push_back(random_pauli(n, rng));
    InvertedStream inv = invert_stream(enc, phys, MemoryPin::Final);
    std::vector<FrameSyndrome> syn;
    for (const auto& legs : inv.frames) syn.push_back(syndrome_of(enc, legs));
    if (p_ebit > 0) {
        // sprinkle Bob-side flips so the observed bits differ from Alice's
        for (auto& s : syn) {
            if (rng.next_bit()) s.ebit_x ^= 1;
            if (rng.next_bit()) s.ebit_z ^= 1;
        }
    }

    std::vector<QubitPrior> priors(frames * n, channel_prior(p));
    std::vector<std::vector<double>> lp(frames, std::vector<double>(siso.num_labels(), 0.0));
    for (auto& dist : lp) {
        double sum = 0;
        for (double& v : dist) sum += (v = 0.1 + rng.next_double());
        for (double& v : dist) v /= sum;
    }

    SisoDecoder::Result fast = siso.decode(syn, priors, lp, p_ebit);
    REQUIRE_FALSE(fast.failed);
    for (size_t t = 0; t < frames; ++t) {
        double sum = 0;
        for (double v : fast.logical_posterior[t]) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-9);
        for (int q = 0; q < n; ++q) {
            const QubitPrior& d = fast.physical_posterior[t * n + q];
            CHECK(std::abs(d[0] + d[1] + d[2] + d[3] - 1.0) < 1e-9);
        }
    }
    eaqturbo::testing::BayesResult slow = bayes_oracle(enc, syn, priors, lp, p_ebit);

    for (size_t t = 0; t < frames; ++t)
        for (size_t l = 0; l < siso.num_labels(); ++l)
            CHECK(std::abs(fast.logical_posterior[t][l] - slow.logical_posterior[t][l]) < 1e-10);
    for (size_t i = 0; i < frames * n; ++i)
        for (int pcode = 0; pcode < 4; ++pcode)
            CHECK(std::abs(fast.physical_posterior[i][pcode] -
                           slow.physical_posterior[i][pcode]) < 1e-10);
}

}  // namespace

TEST_CASE("noiseless single frame yields a certain identity posterior") {
    ConvolutionalEncoder enc = load_data_encoder("ea01.enc");
    SisoDecoder siso(enc);
    std::vector<FrameSyndrome> syn(3);
    std::vector<QubitPrior> priors(3 * 2, channel_prior(0.0));
    SisoDecoder::Result res = siso.decode(syn, priors, {}, 0.0);
    REQUIRE_FALSE(res.failed);
    for (size_t t = 0; t < 3; ++t) {
        CHECK(res.logical_posterior[t][0] == doctest::Approx(1.0));
        double sum = 0;
        for (double v : res.logical_posterior[t]) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("trellis equals exhaustive Bayes on single frames") {
    for (const char* name : {"ea01.enc", "ea05.enc", "ea06.enc", "ea07.enc", "simple.enc"}) {
        ConvolutionalEncoder enc = load_data_encoder(name);
        for (uint64_t seed : {1u, 2u, 3u}) compare_with_oracle(enc, 1, seed, 0.15, 0.0);
    }
}

TEST_CASE("trellis equals exhaustive Bayes on short streams") {
    compare_with_oracle(load_data_encoder("ea01.enc"), 3, 11, 0.1, 0.0);
    compare_with_oracle(load_data_encoder("ea05.enc"), 2, 12, 0.2, 0.0);
    compare_with_oracle(load_data_encoder("ea06.enc"), 2, 13, 0.12, 0.0);
    compare_with_oracle(load_data_encoder("simple.enc"), 3, 14, 0.25, 0.0);
}

TEST_CASE("trellis equals exhaustive Bayes with Bob-side ebit noise") {
    compare_with_oracle(load_data_encoder("ea01.enc"), 2, 21, 0.1, 1e-2);
    compare_with_oracle(load_data_encoder("simple.enc"), 2, 22, 0.2, 1e-3);
}

TEST_CASE("inconsistent syndromes signal failure instead of crashing") {
    ConvolutionalEncoder enc = load_data_encoder("ea01.enc");
    SisoDecoder siso(enc);
    std::vector<FrameSyndrome> syn(1);
    syn[0].ebit_x = 1;  // impossible under a p = 0 channel
    std::vector<QubitPrior> priors(2, channel_prior(0.0));
    SisoDecoder::Result res = siso.decode(syn, priors, {}, 0.0);
    CHECK(res.failed);
}

TEST_CASE("noiseless turbo decode converges immediately to the identity") {
    Rng rng(77);
    TurboCode code = build_turbo(load_data_encoder("pto1rea.enc"),
                                 load_data_encoder("pto1rea.enc"), 4, rng);
    TurboInversion truth = turbo_invert(code, PauliOperator(code.physical_qubits()));
    TurboDecoder decoder(code);
    TurboDecodeResult res =
        decoder.decode(truth.inner_syndromes, truth.outer_syndromes, ChannelModel{0.0, 0.0});
    CHECK(res.converged);
    CHECK(res.iterations <= 2);
    CHECK(judge(res, truth.outer_labels));
    for (const auto& label : res.estimate) CHECK(label.is_identity());
}

TEST_CASE("every weight-one error on the assisted code is corrected") {
    Rng rng(123);
    TurboCode code = build_turbo(load_data_encoder("pto1rea.enc"),
                                 load_data_encoder("pto1rea.enc"), 3, rng);
    SisoDecoder inner(code.inner), outer(code.outer);
    TurboDecoder decoder(code, inner, outer);
    ChannelModel model{0.01, 0.0};
    size_t n = code.physical_qubits();
    size_t corrected = 0;
    for (size_t q = 0; q < n; ++q) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliOperator error(n);
            error.set_qubit(q, p);
            TurboInversion truth = turbo_invert(code, error);
            TurboDecodeResult res =
                decoder.decode(truth.inner_syndromes, truth.outer_syndromes, model);
            if (judge(res, truth.outer_labels)) ++corrected;
        }
    }
    CHECK(corrected == 3 * n);
}

TEST_CASE("hard decisions are stable under X-Z relabeling") {
    // conjugating everything by a global Hadamard swaps the z and x halves;
    // with Bell syndromes only (no ancillas) the decode outcome must follow
    auto swap_zx = [](const PauliOperator& p) {
        PauliOperator out = p;
        std::swap(out.z, out.x);
        return out;
    };
    ConvolutionalEncoder base = load_data_encoder("pto1rea.enc");
    size_t N = base.seed().num_qubits();
    std::vector<PauliOperator> rows;
    for (size_t i = 0; i < N; ++i) rows.push_back(swap_zx(base.seed().row(N + i)));
    for (size_t i = 0; i < N; ++i) rows.push_back(swap_zx(base.seed().row(i)));
    ConvolutionalEncoder swapped(base.sig(), SymplecticMatrix(N, std::move(rows)));

    Rng perm_rng1(5), perm_rng2(5);
    TurboCode code = build_turbo(base, base, 3, perm_rng1);
    TurboCode code_swapped = build_turbo(swapped, swapped, 3, perm_rng2);
    TurboDecoder dec(code), dec_swapped(code_swapped);
    ChannelModel model{0.12, 0.0};

    Rng rng(999);
    for (int trial = 0; trial < 40; ++trial) {
        PauliOperator error = random_pauli(code.physical_qubits(), rng);
        PauliOperator mirrored = error;
        std::swap(mirrored.z, mirrored.x);

        TurboInversion t1 = turbo_invert(code, error);
        TurboInversion t2 = turbo_invert(code_swapped, mirrored);
        bool ok1 = judge(dec.decode(t1.inner_syndromes, t1.outer_syndromes, model),
                         t1.outer_labels);
        bool ok2 = judge(dec_swapped.decode(t2.inner_syndromes, t2.outer_syndromes, model),
                         t2.outer_labels);
        CHECK(ok1 == ok2);
    }
}

TEST_CASE("convergence at moderate noise almost always happens within six rounds") {
    Rng build_rng(31);
    ConvolutionalEncoder pto1r = load_data_encoder("pto1r.enc");
    SisoDecoder siso(pto1r);
    ChannelModel model{0.1, 0.0};
    int fast_converging = 0;
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(55, 0, trial);
        TurboCode code = build_turbo(pto1r, pto1r, 32, rng);
        PauliOperator error = sample_error(model, code.physical_qubits(), rng);
        TurboInversion truth = turbo_invert(code, error);
        TurboDecoder decoder(code, siso, siso);
        TurboDecodeResult res =
            decoder.decode(truth.inner_syndromes, truth.outer_syndromes, model);
        if (res.converged && res.iterations <= 6) ++fast_converging;
    }
    CHECK(fast_converging >= trials * 8 / 10);
}

TEST_CASE("judge compares label streams exactly") {
    TurboDecodeResult res;
    res.estimate = {LogicalLabel{pauli("X"), 0}, LogicalLabel{pauli("I"), 0}};
    std::vector<LogicalLabel> truth = res.estimate;
    CHECK(judge(res, truth));
    truth[1].logical = pauli("Z");
    CHECK_FALSE(judge(res, truth));
    res.failed = true;
    CHECK_FALSE(judge(res, res.estimate));
}
