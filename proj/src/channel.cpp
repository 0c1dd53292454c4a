#include "cvqkd/channel.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/dsp.hpp"
#include "cvqkd/txdsp.hpp"

namespace cvqkd {

void ChannelParams::validate(double quantum_half_bandwidth) const {
    if (transmittance <= 0.0 || transmittance > 1.0)
        throw ConfigError("channel: transmittance must be in (0,1]");
    if (excess_noise_in < 0.0) throw ConfigError("channel: excess noise must be >= 0");
    if (linewidth_sum < 0.0) throw ConfigError("channel: linewidth must be >= 0");
    if (quantum_half_bandwidth > 0.0 &&
        std::abs(freq_offset) >= quantum_half_bandwidth)
        throw ConfigError("channel: |freq_offset| must stay below half the quantum "
                          "signal bandwidth");
}

cplx DetectorParams::rx_response(double f) const {
    const double r = f / rx_3db;
    return 1.0 / std::sqrt(1.0 + std::pow(r, 8.0));
}

void DetectorParams::validate() const {
    if (efficiency <= 0.0 || efficiency > 1.0)
        throw ConfigError("detector: efficiency must be in (0,1]");
    if (v_el < 0.0) throw ConfigError("detector: v_el must be >= 0");
    if (adc_bits < 4 || adc_bits > 16) throw ConfigError("detector: adc_bits out of [4,16]");
    if (adc_rate <= 0.0 || rx_3db <= 0.0) throw ConfigError("detector: nonpositive rate");
}

ChannelRunner::ChannelRunner(const ChannelParams& params, std::uint64_t seed)
    : params_(params),
      noise_(derive_seed(seed, 0)),
      phase_(derive_seed(seed, 1)) {}

WaveformTrace ChannelRunner::process(const WaveformTrace& tx) {
    if (tx.role != TraceRole::signal)
        throw PipelineError("apply_channel expects a signal trace");
    const double fs = tx.sample_rate;
    const double amp = std::sqrt(params_.transmittance);
    // per-quadrature, per-sample: ε_in/2 SNU at the symbol level maps to
    // ε_in/4 in amplitude units under the unit-energy pulse convention
    const double sigma_exc =
        std::sqrt(params_.transmittance * params_.excess_noise_in / 4.0);
    const double sigma_theta = std::sqrt(2.0 * pi * params_.linewidth_sum / fs);

    WaveformTrace out;
    out.sample_rate = fs;
    out.role = TraceRole::signal;
    out.origin = tx.origin;
    out.samples.resize(tx.samples.size());
    for (std::size_t i = 0; i < tx.samples.size(); ++i) {
        const double t = static_cast<double>(sample_index_++) / fs;
        theta_ += sigma_theta * phase_.next_real();
        const cplx rot =
            std::exp(cplx{0.0, 2.0 * pi * params_.freq_offset * t + theta_});
        out.samples[i] = amp * tx.samples[i] * rot + sigma_exc * noise_.next_complex();
    }
    out.note("ch:T=" + std::to_string(params_.transmittance));
    return out;
}

WaveformTrace apply_channel(const WaveformTrace& tx, const ChannelParams& params,
                            std::uint64_t seed) {
    params.validate(tx.sample_rate / 2.0);
    return ChannelRunner(params, seed).process(tx);
}

DetectorRunner::DetectorRunner(const DetectorParams& params, std::uint64_t seed,
                               double full_scale)
    : params_(params), noise_(derive_seed(seed, 2)), full_scale_(full_scale) {}

WaveformTrace DetectorRunner::process(const WaveformTrace& rx) {
    if (rx.role == TraceRole::electronic)
        throw PipelineError("detect expects a signal or vacuum trace");
    params_.validate();
    if (in_rate_ == 0.0) {
        in_rate_ = rx.sample_rate;
        fir_ = dsp::fir_from_response(257, in_rate_,
                                      [&](double f) { return params_.rx_response(f); });
        carry_.assign(fir_.size() - 1, cplx{0.0, 0.0});
    } else if (rx.sample_rate != in_rate_) {
        throw PipelineError("detect: sample rate changed mid-stream");
    }

    const double amp = std::sqrt(params_.efficiency);
    const double sigma_shot = std::sqrt(0.5);
    const double sigma_el = std::sqrt(params_.v_el / 2.0);
    cvec y(rx.samples.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = amp * rx.samples[i] + sigma_shot * noise_.next_complex() +
               sigma_el * noise_.next_complex();
    }

    // overlap-add FIR with centered alignment: emit chunk-length output,
    // carry the filter tail into the next chunk
    const std::size_t full = y.size() + fir_.size() - 1;
    const std::size_t nfft = dsp::next_fast_size(full);
    cvec a(nfft, cplx{0.0, 0.0}), b(nfft, cplx{0.0, 0.0});
    std::copy(y.begin(), y.end(), a.begin());
    std::copy(fir_.begin(), fir_.end(), b.begin());
    cvec fa = dsp::fft(a);
    const cvec fb = dsp::fft(b);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    cvec conv = dsp::ifft(fa);
    conv.resize(full);
    for (std::size_t i = 0; i < carry_.size() && i < conv.size(); ++i)
        conv[i] += carry_[i];
    const std::size_t center = (fir_.size() - 1) / 2;
    cvec filtered(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) filtered[i] = conv[i + center];
    carry_.assign(fir_.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i + y.size() < full; ++i)
        carry_[i] = conv[y.size() + i];

    WaveformTrace out;
    out.role = rx.role;
    out.origin = rx.origin;
    out.sample_rate = in_rate_;
    out.samples = std::move(filtered);
    if (params_.adc_rate != in_rate_) {
        out.samples = dsp::resample(out.samples, in_rate_, params_.adc_rate);
        out.sample_rate = params_.adc_rate;
    }
    if (full_scale_ > 0.0) {
        const double step = 2.0 * full_scale_ / std::pow(2.0, params_.adc_bits);
        for (cplx& v : out.samples) {
            const double re = std::clamp(v.real(), -full_scale_, full_scale_);
            const double im = std::clamp(v.imag(), -full_scale_, full_scale_);
            v = {std::round(re / step) * step, std::round(im / step) * step};
        }
    }
    out.note("det:eta=" + std::to_string(params_.efficiency));
    return out;
}

WaveformTrace detect(const WaveformTrace& rx, const DetectorParams& params,
                     std::uint64_t seed) {
    DetectorRunner runner(params, seed);
    WaveformTrace out = runner.process(rx);
    quantize(out.samples, params.adc_bits);
    return out;
}

WaveformTrace electronic_only(const DetectorParams& params, std::size_t n_samples,
                              std::uint64_t seed) {
    if (n_samples == 0) throw ConfigError("electronic_only: n_samples must be > 0");
    params.validate();
    GaussianSampler noise(derive_seed(seed, 3));
    const double sigma_el = std::sqrt(params.v_el / 2.0);
    WaveformTrace raw;
    raw.sample_rate = params.adc_rate;
    raw.role = TraceRole::electronic;
    raw.samples.resize(n_samples);
    for (cplx& v : raw.samples) v = sigma_el * noise.next_complex();
    raw.samples = dsp::apply_response(raw.samples, raw.sample_rate, [&](double f) {
        return params.rx_response(f);
    });
    quantize(raw.samples, params.adc_bits);
    raw.note("elec:v_el=" + std::to_string(params.v_el));
    return raw;
}

}  // namespace cvqkd
