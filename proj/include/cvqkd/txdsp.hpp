#pragma once

#include <functional>

#include "cvqkd/trace.hpp"

namespace cvqkd {

/// Transmitter chain settings. Defaults follow the 16 GBaud / 32 GSa/s
/// frequency plan: RRC-shaped quantum band at 0 ± 9.6 GHz, pilot tone at
/// +15 GHz, 8-bit DAC. tx_3db is the one-pole corner reproducing a 6 dB
/// bandwidth of 13 GHz.
struct TxConfig {
    double symbol_rate = 16e9;
    double dac_rate = 32e9;
    double rrc_rolloff = 0.2;
    std::size_t rrc_span_symbols = 40;
    double pilot_freq = 15e9;
    double pilot_amp_ratio = 10.0;  // pilot amplitude / quantum-signal RMS
    int dac_bits = 8;
    double tx_3db = 13e9 / 1.7320508075688772;  // 6 dB point at 13 GHz
    double iq_amp_ratio = 1.0;                  // g
    double iq_phase_err = 0.0;                  // φ, radians
    std::size_t preemph_taps = 129;

    double quantum_band_edge() const { return symbol_rate * (1.0 + rrc_rolloff) / 2.0; }
    /// One-pole transmitter response at frequency f (Hz).
    cplx tx_response(double f) const;
    void validate() const;
};

/// Root-raised-cosine taps, odd length span·sps + 1, normalized to unit
/// energy, symmetric about the center tap. Singular points use the closed
/// limit forms.
rvec rrc_taps(double rolloff, std::size_t span_symbols, std::size_t samples_per_symbol);

/// Regularized frequency-domain inverse of a transmitter response,
/// H⁻¹ ≈ H*/(|H|²+λ) with λ = 1e-4·max|H|², returned as centered taps at the
/// given rate. The cascade response·taps is flat within ±0.5 dB across
/// |f| ≤ band_edge and exactly 1 at DC. Throws if the response has an
/// in-band null that pushes the inverse onto the regularization floor.
cvec preemphasis_taps(const std::function<cplx(double)>& response,
                      std::size_t n_taps, double rate, double band_edge);

/// Full transmitter: upsample, RRC shape, add pilot, pre-emphasize, DAC
/// quantize, IQ-imbalance, transmitter low-pass. Output at cfg.dac_rate with
/// symbol k centered on sample k·dac_rate/symbol_rate (zero group delay; all
/// filters are center-aligned).
WaveformTrace modulate_frame(const cvec& symbols, const TxConfig& cfg);

/// Mid-tread quantizer over both quadratures; full-scale (peak-to-peak)
/// covers ±4× the combined per-quadrature RMS. No-op on an all-zero input.
void quantize(cvec& x, int bits);

/// Image-rejection of the IQ-imbalance model I′=I, Q′=g(Q cosφ + I sinφ),
/// measured by passing a single tone through the model (with a quantizer of
/// the given depth setting the numeric floor) and reading the spectral
/// desired/image power ratio in dB. Matches the analytic ratio
/// (1+2g cosφ+g²)/(1−2g cosφ+g²) within 0.2 dB.
double sideband_suppression(double iq_amp_ratio, double iq_phase_err,
                            int dac_bits = 16);

/// The same analytic image-rejection ratio in dB.
double sideband_suppression_analytic(double iq_amp_ratio, double iq_phase_err);

/// Apply the IQ amplitude/phase imbalance pointwise.
void apply_iq_imbalance(cvec& x, double g, double phi);

}  // namespace cvqkd
