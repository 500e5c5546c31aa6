#include "eaqturbo/decoder.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace eaqturbo {

QubitPrior channel_prior(double p) {
    return {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
}

namespace {

uint64_t pack_row_bits(const PauliOperator& row) {
    size_t n = row.num_qubits();
    uint64_t w = 0;
    for (size_t q = 0; q < n; ++q) {
        if (row.z.get(q)) w |= uint64_t{1} << q;
        if (row.x.get(q)) w |= uint64_t{1} << (n + q);
    }
    return w;
}

void normalize_or_flag(std::vector<double>& v, bool& failed) {
    double sum = 0;
    for (double x : v) sum += x;
    if (sum <= 0 || !std::isfinite(sum)) {
        failed = true;
        return;
    }
    for (double& x : v) x /= sum;
}

void normalize_prior(QubitPrior& v) {
    double sum = v[0] + v[1] + v[2] + v[3];
    if (sum > 0)
        for (double& x : v) x /= sum;
    else
        v = {0.25, 0.25, 0.25, 0.25};
}

}  // namespace

SisoDecoder::SisoDecoder(ConvolutionalEncoder enc) : enc_(std::move(enc)) {
    const auto& sig = enc_.sig();
    int m = sig.memory, n = sig.frame_qubits(), N = sig.total_qubits();
    if (m + n > 10) throw std::invalid_argument("trellis tables limited to m + n <= 10");
    if (n > 16) throw std::invalid_argument("trellis tables limited to n <= 16 frame qubits");

    num_states_ = size_t{1} << (2 * m);
    num_labels_ = (size_t{1} << (2 * sig.logical)) << sig.cbit;
    num_keys_ = size_t{1} << (sig.ancilla + 2 * sig.ebit);

    std::vector<uint64_t> rows(2 * N);
    for (int i = 0; i < 2 * N; ++i) rows[i] = pack_row_bits(enc_.seed().row(i));

    // images of each leg assignment, decimal layout per leg
    auto leg_table = [&](int offset, int width) {
        std::vector<uint64_t> images(size_t{1} << (2 * width), 0);
        for (size_t idx = 0; idx < images.size(); ++idx) {
            uint64_t zpart = idx >> width, xpart = idx & ((uint64_t{1} << width) - 1);
            uint64_t img = 0;
            for (int q = 0; q < width; ++q) {
                if ((zpart >> (width - 1 - q)) & 1) img ^= rows[m + offset + q];
                if ((xpart >> (width - 1 - q)) & 1) img ^= rows[N + m + offset + q];
            }
            images[idx] = img;
        }
        return images;
    };
    auto memory_table = [&] {
        std::vector<uint64_t> images(num_states_, 0);
        for (size_t idx = 0; idx < images.size(); ++idx) {
            uint64_t img = 0;
            for (int q = 0; q < m; ++q) {
                if ((idx >> (2 * m - 1 - q)) & 1) img ^= rows[q];
                if ((idx >> (m - 1 - q)) & 1) img ^= rows[N + q];
            }
            images[idx] = img;
        }
        return images;
    };

    std::vector<uint64_t> mem_images = memory_table();
    std::vector<uint64_t> logical_images = leg_table(sig.logical_offset(), sig.logical);
    std::vector<uint64_t> ancilla_images = leg_table(sig.ancilla_offset(), sig.ancilla);
    std::vector<uint64_t> ebit_images = leg_table(sig.ebit_offset(), sig.ebit);
    std::vector<uint64_t> cbit_images = leg_table(sig.cbit_offset(), sig.cbit);
    std::vector<uint64_t> gauge_images = leg_table(sig.gauge_offset(), sig.gauge);

    size_t buckets = num_states_ * num_keys_;
    std::vector<std::vector<Entry>> bucketed(buckets);

    auto x_bits_of = [&](uint64_t leg_dec, int width) {
        // decimal layout has qubit 1 most significant; key bit i is qubit i
        uint32_t bits = 0;
        for (int q = 0; q < width; ++q)
            if ((leg_dec >> (width - 1 - q)) & 1) bits |= uint32_t{1} << q;
        return bits;
    };

    size_t n_lq = size_t{1} << (2 * sig.logical);
    size_t n_sa = size_t{1} << (2 * sig.ancilla);
    size_t n_eb = size_t{1} << (2 * sig.ebit);
    size_t n_cb = size_t{1} << (2 * sig.cbit);
    size_t n_gg = size_t{1} << (2 * sig.gauge);
    uint64_t zmask = (uint64_t{1} << N) - 1;

    for (size_t state = 0; state < num_states_; ++state) {
        for (size_t lq = 0; lq < n_lq; ++lq) {
            for (size_t sa = 0; sa < n_sa; ++sa) {
                uint32_t s_key = x_bits_of(sa & ((1u << sig.ancilla) - 1), sig.ancilla);
                for (size_t eb = 0; eb < n_eb; ++eb) {
                    uint32_t ex_key = x_bits_of(eb & ((1u << sig.ebit) - 1), sig.ebit);
                    uint32_t ez_key = x_bits_of(eb >> sig.ebit, sig.ebit);
                    for (size_t cb = 0; cb < n_cb; ++cb) {
                        uint32_t cbx = x_bits_of(cb & ((1u << sig.cbit) - 1), sig.cbit);
                        for (size_t gg = 0; gg < n_gg; ++gg) {
                            uint64_t img = mem_images[state] ^ logical_images[lq] ^
                                           ancilla_images[sa] ^ ebit_images[eb] ^
                                           cbit_images[cb] ^ gauge_images[gg];
                            uint64_t zh = img & zmask, xh = img >> N;
                            uint32_t next = 0;
                            for (int q = 0; q < m; ++q) {
                                if ((zh >> q) & 1) next |= uint32_t{1} << (2 * m - 1 - q);
                                if ((xh >> q) & 1) next |= uint32_t{1} << (m - 1 - q);
                            }
                            uint32_t phys_code = 0;
                            for (int q = 0; q < n; ++q) {
                                uint32_t code = (((zh >> (m + q)) & 1) << 1) | ((xh >> (m + q)) & 1);
                                phys_code |= code << (2 * q);
                            }
                            Entry e;
                            e.label = static_cast<uint32_t>((lq << sig.cbit) | cbx);
                            e.next = next;
                            e.phys_code = phys_code;
                            size_t key = (size_t{s_key} << (2 * sig.ebit)) |
                                         (size_t{ex_key} << sig.ebit) | ez_key;
                            bucketed[state * num_keys_ + key].push_back(e);
                        }
                    }
                }
            }
        }
    }

    bucket_start_.assign(buckets + 1, 0);
    for (size_t b = 0; b < buckets; ++b) bucket_start_[b + 1] = bucket_start_[b] + bucketed[b].size();
    entries_.resize(bucket_start_[buckets]);
    for (size_t b = 0; b < buckets; ++b)
        std::copy(bucketed[b].begin(), bucketed[b].end(), entries_.begin() + bucket_start_[b]);
}

size_t SisoDecoder::bucket_index(size_t state, uint32_t s_key, uint32_t ex_key,
                                 uint32_t ez_key) const {
    const auto& sig = enc_.sig();
    size_t key = (size_t{s_key} << (2 * sig.ebit)) | (size_t{ex_key} << sig.ebit) | ez_key;
    return state * num_keys_ + key;
}

Pauli SisoDecoder::label_slot(uint32_t label, int slot) const {
    const auto& sig = enc_.sig();
    uint32_t lq = label >> sig.cbit;
    if (slot < sig.logical) {
        bool z = (lq >> (2 * sig.logical - 1 - slot)) & 1;
        bool x = (lq >> (sig.logical - 1 - slot)) & 1;
        return make_pauli(z, x);
    }
    int cb = slot - sig.logical;
    return ((label >> cb) & 1) ? Pauli::X : Pauli::I;
}

SisoDecoder::Result SisoDecoder::decode(std::span<const FrameSyndrome> syndromes,
                                        std::span<const QubitPrior> physical_priors,
                                        std::span<const std::vector<double>> logical_priors,
                                        double p_ebit) const {
    const auto& sig = enc_.sig();
    int n = sig.frame_qubits(), c = sig.ebit;
    size_t frames = syndromes.size();
    if (physical_priors.size() != frames * static_cast<size_t>(n))
        throw std::invalid_argument("physical prior count mismatch");
    if (!logical_priors.empty() && logical_priors.size() != frames)
        throw std::invalid_argument("logical prior count mismatch");

    Result res;
    res.logical_posterior.assign(frames, std::vector<double>(num_labels_, 0.0));
    res.logical_extrinsic.assign(frames, std::vector<double>(num_labels_, 0.0));
    res.physical_posterior.assign(frames * n, QubitPrior{0, 0, 0, 0});
    res.physical_extrinsic.assign(frames * n, QubitPrior{0, 0, 0, 0});

    const std::vector<double> uniform_labels(num_labels_, 1.0 / double(num_labels_));
    auto label_prior = [&](size_t t) -> const std::vector<double>& {
        return logical_priors.empty() ? uniform_labels : logical_priors[t];
    };

    // Bob-side likelihood per candidate Alice ebit content; a Bob Z flips
    // the observed e_x, a Bob X flips the observed e_z.
    double q_i = 1.0 - p_ebit, q_e = p_ebit / 3.0;
    auto bob_factor = [&](const FrameSyndrome& obs, uint32_t ex_alice, uint32_t ez_alice) {
        double f = 1.0;
        uint32_t bz = obs.ebit_x ^ ex_alice, bx = obs.ebit_z ^ ez_alice;
        for (int i = 0; i < c; ++i) {
            bool z = (bz >> i) & 1, x = (bx >> i) & 1;
            f *= (z || x) ? q_e : q_i;
        }
        return f;
    };

    // bucket list per frame: (bucket index, weight multiplier)
    auto buckets_for = [&](const FrameSyndrome& obs, size_t state,
                           std::vector<std::pair<size_t, double>>& out) {
        out.clear();
        if (p_ebit <= 0.0) {
            out.emplace_back(bucket_index(state, obs.ancilla_x, obs.ebit_x, obs.ebit_z), 1.0);
            return;
        }
        for (uint32_t ex = 0; ex < (1u << c); ++ex)
            for (uint32_t ez = 0; ez < (1u << c); ++ez)
                out.emplace_back(bucket_index(state, obs.ancilla_x, ex, ez),
                                 bob_factor(obs, ex, ez));
    };

    // The decomposition pins the error on the untransmitted final memory to
    // the identity and leaves the induced initial-memory content free, so
    // the chain starts uniform and ends concentrated.
    std::vector<std::vector<double>> alpha(frames + 1, std::vector<double>(num_states_, 0.0));
    std::vector<std::vector<double>> beta(frames + 1, std::vector<double>(num_states_, 0.0));
    for (size_t s = 0; s < num_states_; ++s) alpha[0][s] = 1.0 / double(num_states_);
    beta[frames][0] = 1.0;

    std::vector<std::pair<size_t, double>> bl;
    for (size_t t = 0; t < frames; ++t) {
        const auto& lp = label_prior(t);
        const QubitPrior* pp = &physical_priors[t * n];
        for (size_t s = 0; s < num_states_; ++s) {
            if (alpha[t][s] == 0.0) continue;
            buckets_for(syndromes[t], s, bl);
            for (const auto& [b, mult] : bl) {
                for (uint32_t idx = bucket_start_[b]; idx < bucket_start_[b + 1]; ++idx) {
                    const Entry& e = entries_[idx];
                    double w = lp[e.label] * mult;
                    if (w == 0.0) continue;
                    uint32_t code = e.phys_code;
                    for (int q = 0; q < n; ++q, code >>= 2) w *= pp[q][code & 3];
                    alpha[t + 1][e.next] += alpha[t][s] * w;
                }
            }
        }
        normalize_or_flag(alpha[t + 1], res.failed);
        if (res.failed) return res;
    }

    for (size_t t = frames; t-- > 0;) {
        const auto& lp = label_prior(t);
        const QubitPrior* pp = &physical_priors[t * n];
        for (size_t s = 0; s < num_states_; ++s) {
            double acc = 0.0;
            buckets_for(syndromes[t], s, bl);
            for (const auto& [b, mult] : bl) {
                for (uint32_t idx = bucket_start_[b]; idx < bucket_start_[b + 1]; ++idx) {
                    const Entry& e = entries_[idx];
                    double w = lp[e.label] * mult;
                    if (w == 0.0) continue;
                    double bnext = beta[t + 1][e.next];
                    if (bnext == 0.0) continue;
                    uint32_t code = e.phys_code;
                    for (int q = 0; q < n; ++q, code >>= 2) w *= pp[q][code & 3];
                    acc += w * bnext;
                }
            }
            beta[t][s] = acc;
        }
        normalize_or_flag(beta[t], res.failed);
        if (res.failed) return res;
    }

    for (size_t t = 0; t < frames; ++t) {
        const auto& lp = label_prior(t);
        const QubitPrior* pp = &physical_priors[t * n];
        auto& lpost = res.logical_posterior[t];
        QubitPrior* ppost = &res.physical_posterior[t * n];
        for (size_t s = 0; s < num_states_; ++s) {
            if (alpha[t][s] == 0.0) continue;
            buckets_for(syndromes[t], s, bl);
            for (const auto& [b, mult] : bl) {
                for (uint32_t idx = bucket_start_[b]; idx < bucket_start_[b + 1]; ++idx) {
                    const Entry& e = entries_[idx];
                    double w = lp[e.label] * mult;
                    if (w == 0.0) continue;
                    double joint = alpha[t][s] * beta[t + 1][e.next];
                    if (joint == 0.0) continue;
                    uint32_t code = e.phys_code;
                    for (int q = 0; q < n; ++q, code >>= 2) w *= pp[q][code & 3];
                    joint *= w;
                    lpost[e.label] += joint;
                    uint32_t pc = e.phys_code;
                    for (int q = 0; q < n; ++q, pc >>= 2) ppost[q][pc & 3] += joint;
                }
            }
        }
        normalize_or_flag(lpost, res.failed);
        if (res.failed) return res;

        auto& lext = res.logical_extrinsic[t];
        for (size_t l = 0; l < num_labels_; ++l)
            lext[l] = lp[l] > 0 ? lpost[l] / lp[l] : 0.0;
        double esum = 0;
        for (double v : lext) esum += v;
        if (esum > 0)
            for (double& v : lext) v /= esum;
        else
            lext.assign(num_labels_, 1.0 / double(num_labels_));

        for (int q = 0; q < n; ++q) {
            normalize_prior(ppost[q]);
            QubitPrior& ext = res.physical_extrinsic[t * n + q];
            for (int pcode = 0; pcode < 4; ++pcode)
                ext[pcode] = pp[q][pcode] > 0 ? ppost[q][pcode] / pp[q][pcode] : 0.0;
            normalize_prior(ext);
        }
    }
    return res;
}

namespace {

void check_turbo_legs(const TurboCode& code) {
    const auto& in_sig = code.inner.sig();
    const auto& out_sig = code.outer.sig();
    if (in_sig.cbit || in_sig.gauge || out_sig.cbit || out_sig.gauge)
        throw std::invalid_argument("turbo decoding supports logical/ancilla/ebit legs only");
}

}  // namespace

TurboDecoder::TurboDecoder(const TurboCode& code)
    : code_(&code),
      owned_(std::make_unique<std::pair<SisoDecoder, SisoDecoder>>(SisoDecoder(code.inner),
                                                                   SisoDecoder(code.outer))) {
    check_turbo_legs(code);
    inner_ = &owned_->first;
    outer_ = &owned_->second;
}

TurboDecoder::TurboDecoder(const TurboCode& code, const SisoDecoder& inner,
                           const SisoDecoder& outer)
    : code_(&code), inner_(&inner), outer_(&outer) {
    check_turbo_legs(code);
    if (!(inner.encoder().sig() == code.inner.sig()) ||
        !(outer.encoder().sig() == code.outer.sig()))
        throw std::invalid_argument("shared trellis tables do not match the code");
}

TurboDecodeResult TurboDecoder::decode(std::span<const FrameSyndrome> inner_syndromes,
                                       std::span<const FrameSyndrome> outer_syndromes,
                                       const ChannelModel& model, int max_iterations) const {
    const TurboCode& code = *code_;
    if (inner_syndromes.size() != code.frames_inner ||
        outer_syndromes.size() != code.frames_outer)
        throw std::invalid_argument("syndrome stream shape mismatch");

    size_t stream = code.outer_stream_qubits();
    int k_in = code.inner.sig().logical;
    int n_in = code.inner.sig().frame_qubits();
    size_t inner_labels = inner_->num_labels();

    std::vector<QubitPrior> inner_phys(code.frames_inner * n_in, channel_prior(model.p));
    std::vector<QubitPrior> inner_msg(stream, QubitPrior{0.25, 0.25, 0.25, 0.25});

    TurboDecodeResult res;
    std::vector<LogicalLabel> previous;
    std::vector<std::vector<double>> inner_label_priors(code.frames_inner,
                                                        std::vector<double>(inner_labels, 0.0));
    for (int iter = 1; iter <= max_iterations; ++iter) {
        res.iterations = iter;

        // factorized per-qubit messages -> inner per-frame label priors
        for (size_t t = 0; t < code.frames_inner; ++t) {
            auto& lp = inner_label_priors[t];
            for (size_t l = 0; l < inner_labels; ++l) {
                double v = 1.0;
                for (int q = 0; q < k_in; ++q) {
                    Pauli pq = inner_->label_slot(static_cast<uint32_t>(l), q);
                    v *= inner_msg[t * k_in + q][static_cast<size_t>(pq)];
                }
                lp[l] = v;
            }
        }

        auto inner_res = inner_->decode(inner_syndromes, inner_phys, inner_label_priors,
                                       model.p_ebit);
        if (inner_res.failed) {
            res.failed = true;
            return res;
        }

        // inner logical extrinsics, de-interleaved, prime the outer stage
        std::vector<QubitPrior> outer_phys(stream);
        for (size_t t = 0; t < code.frames_inner; ++t) {
            for (int q = 0; q < k_in; ++q) {
                QubitPrior marg{0, 0, 0, 0};
                for (size_t l = 0; l < inner_labels; ++l) {
                    Pauli pq = inner_->label_slot(static_cast<uint32_t>(l), q);
                    marg[static_cast<size_t>(pq)] += inner_res.logical_extrinsic[t][l];
                }
                normalize_prior(marg);
                outer_phys[t * k_in + q] = marg;
            }
        }
        std::vector<QubitPrior> outer_phys_deint(stream);
        for (size_t i = 0; i < stream; ++i)
            outer_phys_deint[i] = outer_phys[code.interleaver.destination(i)];

        auto outer_res = outer_->decode(outer_syndromes, outer_phys_deint, {}, model.p_ebit);
        if (outer_res.failed) {
            res.failed = true;
            return res;
        }

        // hard decision: per-frame argmax, ties to the smallest decimal label
        std::vector<LogicalLabel> decision(code.frames_outer);
        for (size_t t = 0; t < code.frames_outer; ++t) {
            const auto& post = outer_res.logical_posterior[t];
            size_t best = 0;
            for (size_t l = 1; l < post.size(); ++l)
                if (post[l] > post[best]) best = l;
            decision[t].logical = decimal_to_pauli(best, code.outer.sig().logical);
            decision[t].cbit_x = 0;
        }

        res.estimate = decision;
        if (!previous.empty() && decision == previous) {
            res.converged = true;
            return res;
        }
        previous = std::move(decision);

        // outer physical extrinsics, interleaved, become inner logical priors
        for (size_t i = 0; i < stream; ++i)
            inner_msg[code.interleaver.destination(i)] = outer_res.physical_extrinsic[i];
    }
    return res;
}

bool judge(const TurboDecodeResult& result, std::span<const LogicalLabel> truth) {
    if (result.failed) return false;
    if (result.estimate.size() != truth.size()) return false;
    for (size_t i = 0; i < truth.size(); ++i)
        if (!(result.estimate[i] == truth[i])) return false;
    return true;
}

}  // namespace eaqturbo
