#pragma once

#include <cstdint>
#include <optional>

#include "cvqkd/rng.hpp"
#include "cvqkd/trace.hpp"

namespace cvqkd {

/// Fiber-channel model: loss, input-referred excess noise, laser frequency
/// offset and combined Lorentzian linewidth. Excess noise is ε_in at the
/// channel input; the reported ε_out = T·ε_in (conversions live in
/// estimation::noise_referral).
struct ChannelParams {
    double transmittance = 1.0;    // T
    double excess_noise_in = 0.0;  // ε_in, SNU per quadrature at symbol level
    double length_km = 0.0;        // informational
    double freq_offset = 2e9;      // Δf between TX and LO lasers
    double linewidth_sum = 200.0;  // TX + LO Lorentzian linewidth, Hz

    void validate(double quantum_half_bandwidth) const;
};

/// Intradyne receiver model: trusted efficiency and electronic noise, a
/// linear-phase low-pass standing in for the shot-noise-limited bandwidth,
/// then ADC resampling and quantization.
struct DetectorParams {
    double efficiency = 0.44;  // η_d
    double v_el = 0.0;         // SNU per quadrature at symbol level
    int adc_bits = 8;
    double adc_rate = 80e9;
    double rx_3db = 20e9;

    cplx rx_response(double f) const;  // 4th-order Butterworth magnitude, zero phase
    void validate() const;
};

/// Streaming channel: carries the Wiener phase, the time index for the Δf
/// rotation and the noise RNG, so processing a trace in chunks equals
/// processing it whole.
class ChannelRunner {
  public:
    ChannelRunner(const ChannelParams& params, std::uint64_t seed);
    WaveformTrace process(const WaveformTrace& tx);
    double phase() const { return theta_; }

  private:
    ChannelParams params_;
    GaussianSampler noise_;
    GaussianSampler phase_;
    double theta_ = 0.0;
    std::uint64_t sample_index_ = 0;
};

/// One-shot channel application, deterministic per seed:
/// out = sqrt(T)·in·exp(i(2πΔf t + θ(t))) + n(t).
WaveformTrace apply_channel(const WaveformTrace& tx, const ChannelParams& params,
                            std::uint64_t seed);

/// Streaming detector front-end (before quantization): sqrt(η_d) scaling,
/// shot + electronic noise injection, receiver low-pass with overlap-carried
/// FIR state, resampling to adc_rate. If full_scale > 0 each chunk is also
/// quantized against that fixed scale.
class DetectorRunner {
  public:
    DetectorRunner(const DetectorParams& params, std::uint64_t seed,
                   double full_scale = 0.0);
    WaveformTrace process(const WaveformTrace& rx_optical);

  private:
    DetectorParams params_;
    GaussianSampler noise_;
    double full_scale_;
    cvec fir_;
    cvec carry_;
    double in_rate_ = 0.0;
};

/// One-shot intradyne detection: front-end plus ADC quantization with
/// full-scale at 4x the combined RMS of the filtered trace.
WaveformTrace detect(const WaveformTrace& rx_optical, const DetectorParams& params,
                     std::uint64_t seed);

/// Electronic-noise-only acquisition (LO switch open): receiver-shaped
/// Gaussian trace at adc_rate, role = electronic.
WaveformTrace electronic_only(const DetectorParams& params, std::size_t n_samples,
                              std::uint64_t seed);

}  // namespace cvqkd
