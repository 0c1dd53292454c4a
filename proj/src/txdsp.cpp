#include "cvqkd/txdsp.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/dsp.hpp"

namespace cvqkd {

cplx TxConfig::tx_response(double f) const {
    return 1.0 / cplx{1.0, f / tx_3db};
}

void TxConfig::validate() const {
    if (symbol_rate <= 0 || dac_rate <= 0) throw ConfigError("tx: nonpositive rate");
    if (dac_rate < 2.0 * symbol_rate)
        throw ConfigError("tx: dac_rate must be at least 2x symbol_rate");
    if (rrc_rolloff <= 0.0 || rrc_rolloff > 1.0)
        throw ConfigError("tx: rrc_rolloff must be in (0,1]");
    if (pilot_freq >= dac_rate / 2.0)
        throw ConfigError("tx: pilot_freq beyond DAC Nyquist");
    if (pilot_freq < quantum_band_edge() + 0.5e9)
        throw ConfigError("tx: pilot overlaps quantum band (needs 0.5 GHz guard)");
    if (dac_bits < 4 || dac_bits > 16) throw ConfigError("tx: dac_bits out of [4,16]");
    if (pilot_amp_ratio <= 0.0) throw ConfigError("tx: pilot_amp_ratio must be > 0");
    if (iq_amp_ratio <= 0.0) throw ConfigError("tx: iq_amp_ratio must be > 0");
    if (tx_3db <= 0.0) throw ConfigError("tx: tx_3db must be > 0");
}

rvec rrc_taps(double rolloff, std::size_t span_symbols, std::size_t samples_per_symbol) {
    if (rolloff <= 0.0 || rolloff > 1.0) throw ConfigError("rrc: rolloff must be in (0,1]");
    if (samples_per_symbol < 2) throw ConfigError("rrc: need at least 2 samples/symbol");
    if (span_symbols == 0) throw ConfigError("rrc: zero span");
    const std::size_t n = span_symbols * samples_per_symbol + 1;
    const auto half = static_cast<double>(n - 1) / 2.0;
    rvec h(n);
    const double b = rolloff;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) - half) /
                         static_cast<double>(samples_per_symbol);  // in symbols
        double v;
        if (std::abs(t) < 1e-9) {
            v = 1.0 - b + 4.0 * b / pi;
        } else if (std::abs(std::abs(t) - 1.0 / (4.0 * b)) < 1e-9) {
            v = b / std::sqrt(2.0) *
                ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * b)) +
                 (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * b)));
        } else {
            v = (std::sin(pi * t * (1.0 - b)) +
                 4.0 * b * t * std::cos(pi * t * (1.0 + b))) /
                (pi * t * (1.0 - 16.0 * b * b * t * t));
        }
        h[i] = v;
    }
    double energy = 0.0;
    for (double v : h) energy += v * v;
    const double s = 1.0 / std::sqrt(energy);
    for (double& v : h) v *= s;
    return h;
}

cvec preemphasis_taps(const std::function<cplx(double)>& response,
                      std::size_t n_taps, double rate, double band_edge) {
    if (n_taps < 3) throw ConfigError("preemphasis: too few taps");
    // sample |H|² over the band to set the regularization level
    double hmax2 = 0.0, hmin2_inband = 1e300;
    for (std::size_t k = 0; k < n_taps; ++k) {
        const double f = dsp::bin_freq(k, n_taps, rate);
        const double m2 = std::norm(response(f));
        hmax2 = std::max(hmax2, m2);
        if (std::abs(f) <= band_edge) hmin2_inband = std::min(hmin2_inband, m2);
    }
    const double lambda = 1e-4 * hmax2;
    if (hmin2_inband <= 10.0 * lambda)
        throw PipelineError("preemphasis: in-band null, inverse hits regularization floor");
    const cplx h0 = response(0.0);
    const cplx w0 = std::conj(h0) / (std::norm(h0) + lambda);
    const cplx dc_fix = 1.0 / (w0 * h0);  // cascade exactly 1 at DC
    return dsp::fir_from_response(n_taps, rate, [&](double f) {
        const cplx h = response(f);
        return dc_fix * std::conj(h) / (std::norm(h) + lambda);
    });
}

void quantize(cvec& x, int bits) {
    if (bits < 2 || bits > 24) throw ConfigError("quantize: bits out of range");
    double sumsq = 0.0;
    for (const cplx& v : x) sumsq += std::norm(v);
    const double rms = std::sqrt(sumsq / (2.0 * static_cast<double>(x.size())));
    if (rms == 0.0) return;
    const double peak = 4.0 * rms;
    const double step = 2.0 * peak / std::pow(2.0, bits);
    auto q = [&](double v) {
        v = std::clamp(v, -peak, peak);
        return std::round(v / step) * step;
    };
    for (cplx& v : x) v = {q(v.real()), q(v.imag())};
}

void apply_iq_imbalance(cvec& x, double g, double phi) {
    if (g == 1.0 && phi == 0.0) return;
    const double c = std::cos(phi), s = std::sin(phi);
    for (cplx& v : x) {
        const double i = v.real();
        const double q = v.imag();
        v = {i, g * (q * c + i * s)};
    }
}

WaveformTrace modulate_frame(const cvec& symbols, const TxConfig& cfg) {
    cfg.validate();
    if (symbols.empty()) throw ConfigError("modulate_frame: empty symbol block");

    // shape at 2 samples/symbol, then Fourier-resample to the DAC rate
    constexpr std::size_t sps = 2;
    const rvec h = rrc_taps(cfg.rrc_rolloff, cfg.rrc_span_symbols, sps);
    cvec up(symbols.size() * sps, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < symbols.size(); ++k) up[k * sps] = symbols[k];
    cvec taps(h.begin(), h.end());
    cvec shaped = dsp::convolve_same(up, taps);
    shaped = dsp::resample(shaped, 2.0 * cfg.symbol_rate, cfg.dac_rate);

    double sumsq = 0.0;
    for (const cplx& v : shaped) sumsq += std::norm(v);
    double rms = std::sqrt(sumsq / (2.0 * static_cast<double>(shaped.size())));
    if (rms == 0.0) rms = 1.0;  // all-zero frames still carry a pilot

    const double amp = cfg.pilot_amp_ratio * rms;
    for (std::size_t n = 0; n < shaped.size(); ++n) {
        const double t = static_cast<double>(n) / cfg.dac_rate;
        shaped[n] += amp * std::exp(cplx{0.0, 2.0 * pi * cfg.pilot_freq * t});
    }

    const cvec pre = preemphasis_taps([&](double f) { return cfg.tx_response(f); },
                                      cfg.preemph_taps, cfg.dac_rate,
                                      cfg.quantum_band_edge());
    cvec out = dsp::convolve_same(shaped, pre);

    quantize(out, cfg.dac_bits);
    apply_iq_imbalance(out, cfg.iq_amp_ratio, cfg.iq_phase_err);
    out = dsp::apply_response(out, cfg.dac_rate,
                              [&](double f) { return cfg.tx_response(f); });

    WaveformTrace trace;
    trace.samples = std::move(out);
    trace.sample_rate = cfg.dac_rate;
    trace.role = TraceRole::signal;
    trace.note("tx:grpdelay_s=0");
    trace.note("tx:n_symbols=" + std::to_string(symbols.size()));
    return trace;
}

double sideband_suppression_analytic(double g, double phi) {
    if (g <= 0.0) throw ConfigError("sideband: iq_amp_ratio must be > 0");
    const double num = 1.0 + 2.0 * g * std::cos(phi) + g * g;
    const double den = 1.0 - 2.0 * g * std::cos(phi) + g * g;
    if (den <= 0.0) return 300.0;  // perfectly balanced: no image at all
    return 10.0 * std::log10(num / den);
}

double sideband_suppression(double g, double phi, int dac_bits) {
    if (g <= 0.0) throw ConfigError("sideband: iq_amp_ratio must be > 0");
    // tone on an exact FFT bin so the periodogram needs no window
    const std::size_t n = 1 << 16;
    const double fs = 32e9;
    const double f0 = 500e6;  // bin 1024 of 65536
    cvec x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        x[i] = std::exp(cplx{0.0, 2.0 * pi * f0 * t});
    }
    quantize(x, dac_bits);
    apply_iq_imbalance(x, g, phi);
    cvec X = dsp::fft(x);
    const auto bin = static_cast<std::size_t>(std::llround(f0 / fs * static_cast<double>(n)));
    const double desired = std::norm(X[bin]);
    const double image = std::norm(X[n - bin]);
    if (image <= 0.0) return 300.0;
    return 10.0 * std::log10(desired / image);
}

}  // namespace cvqkd
