#include "cvqkd/rxdsp.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/dsp.hpp"
#include "cvqkd/txdsp.hpp"

namespace cvqkd {

cvec whitening_taps(const WaveformTrace& vacuum, std::size_t n_taps) {
    if (vacuum.role != TraceRole::vacuum)
        throw PipelineError("whitening_taps expects a vacuum trace");
    if (n_taps < 8) throw ConfigError("whitening_taps: too few taps");
    if (vacuum.samples.size() < 64 * n_taps)
        throw PipelineError("whitening_taps: vacuum trace shorter than 64*n_taps");
    const rvec psd = dsp::welch_psd(vacuum.samples, n_taps);
    const double peak = *std::max_element(psd.begin(), psd.end());
    const double floor = 1e-4 * peak;
    // inverse square root of the PSD, unit gain at DC
    const double ref = std::sqrt(std::max(psd[0], floor));
    rvec w(n_taps);
    for (std::size_t k = 0; k < n_taps; ++k)
        w[k] = ref / std::sqrt(std::max(psd[k], floor));
    return dsp::fir_from_response(n_taps, vacuum.sample_rate, [&](double f) {
        auto k = static_cast<std::ptrdiff_t>(std::llround(
            f / vacuum.sample_rate * static_cast<double>(n_taps)));
        if (k < 0) k += static_cast<std::ptrdiff_t>(n_taps);
        return cplx{w[static_cast<std::size_t>(k) % n_taps], 0.0};
    });
}

WaveformTrace whiten(const WaveformTrace& trace, const cvec& taps) {
    WaveformTrace out = trace;
    out.samples = dsp::convolve_same(trace.samples, taps);
    out.note("rx:whitened");
    return out;
}

PilotEstimate recover_pilot(const WaveformTrace& trace, double pilot_freq_nominal,
                            double bandwidth, double phase_lpf_hz,
                            double isolation_bw) {
    const std::size_t n = trace.samples.size();
    if (n < 1024) throw PipelineError("recover_pilot: trace too short");
    const double fs = trace.sample_rate;

    // coarse location: periodogram peak inside the search window
    cvec spec = dsp::fft(trace.samples);
    double best = -1.0;
    double f_coarse = pilot_freq_nominal;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = dsp::bin_freq(k, n, fs);
        if (std::abs(f - pilot_freq_nominal) > bandwidth / 2.0) continue;
        const double m = std::norm(spec[k]);
        if (m > best) {
            best = m;
            f_coarse = f;
        }
    }
    if (best < 0.0) throw SyncError("recover_pilot: search window empty");

    // isolate the tone (brick-wall around the coarse peak) -> analytic pilot
    for (std::size_t k = 0; k < n; ++k) {
        const double f = dsp::bin_freq(k, n, fs);
        if (std::abs(f - f_coarse) > isolation_bw / 2.0) spec[k] = 0.0;
    }
    const cvec pilot = dsp::ifft(spec);

    rvec phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = std::arg(pilot[i]);
    phase = dsp::unwrap(phase);
    const dsp::LineFit fit = dsp::fit_line(phase);

    PilotEstimate est;
    est.freq_offset = fit.slope * fs / (2.0 * pi) - pilot_freq_nominal;
    est.phase_track.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        est.phase_track[i] = phase[i] - fit.slope * static_cast<double>(i);
    // keep the intercept: it carries the absolute pilot phase

    // smooth the track; phase noise is far below this bandwidth
    cvec track(n);
    for (std::size_t i = 0; i < n; ++i) track[i] = est.phase_track[i];
    track = dsp::apply_response(track, fs, [&](double f) {
        return std::abs(f) <= phase_lpf_hz ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    });
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        est.phase_track[i] = track[i].real();
        mean += est.phase_track[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : est.phase_track) ss += (v - mean) * (v - mean);
    est.fit_residual_rms = std::sqrt(ss / static_cast<double>(n));
    if (est.fit_residual_rms > 1.0)
        throw SyncError("recover_pilot: fit residual above 1 rad, pilot SNR too low");
    return est;
}

std::size_t synchronize(const cvec& reference_symbols, const cvec& rx_symbols) {
    if (reference_symbols.size() < 1000)
        throw ConfigError("synchronize: reference must hold at least 1e3 symbols");
    const dsp::CorrPeak peak = dsp::correlate_peak(reference_symbols, rx_symbols);
    if (peak.peak < 5.0 * peak.sidelobe_rms)
        throw SyncError("synchronize: correlation peak below 5x RMS sidelobe");
    return peak.lag;
}

namespace {

SymbolFrame matched_filter_downsample(const cvec& x, double rate, const RxConfig& cfg) {
    const double mf_rate = cfg.symbol_rate * static_cast<double>(cfg.mf_sps);
    cvec y = dsp::resample(x, rate, mf_rate);
    const rvec h = rrc_taps(cfg.rrc_rolloff, cfg.rrc_span_symbols, cfg.mf_sps);
    y = dsp::convolve_same(y, cvec(h.begin(), h.end()));

    // timing: max mean energy over the mf_sps sampling phases
    std::size_t best_phase = 0;
    double best_energy = -1.0;
    for (std::size_t p = 0; p < cfg.mf_sps; ++p) {
        double e = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = p; i < y.size(); i += cfg.mf_sps) {
            e += std::norm(y[i]);
            ++cnt;
        }
        if (cnt > 0) e /= static_cast<double>(cnt);
        if (e > best_energy) {
            best_energy = e;
            best_phase = p;
        }
    }

    SymbolFrame frame;
    frame.symbol_rate = cfg.symbol_rate;
    frame.alignment_offset = best_phase;
    const std::size_t trim = cfg.edge_trim_symbols;
    std::size_t k = 0;
    for (std::size_t i = best_phase; i < y.size(); i += cfg.mf_sps, ++k) {
        if (k < trim) continue;
        frame.symbols.push_back(y[i]);
    }
    if (frame.symbols.size() > trim)
        frame.symbols.resize(frame.symbols.size() - trim);
    if (frame.symbols.empty()) throw PipelineError("demodulate: nothing left after trim");
    frame.alignment_offset = best_phase + trim * cfg.mf_sps;
    return frame;
}

}  // namespace

SymbolFrame demodulate(const WaveformTrace& trace, const PilotEstimate& pilot,
                       const RxConfig& cfg) {
    if (pilot.phase_track.size() != trace.samples.size())
        throw PipelineError("demodulate: pilot estimate does not match trace");
    const double fs = trace.sample_rate;
    cvec x = trace.samples;

    if (cfg.notch_pilot) {
        const double f_pilot = cfg.pilot_freq + pilot.freq_offset;
        const double bw = cfg.pilot_isolation_bw;
        x = dsp::apply_response(x, fs, [&](double f) {
            return std::abs(f - f_pilot) <= bw / 2.0 ? cplx{0.0, 0.0} : cplx{1.0, 0.0};
        });
    }

    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = static_cast<double>(i) / fs;
        const double th = 2.0 * pi * pilot.freq_offset * t + pilot.phase_track[i];
        x[i] *= std::exp(cplx{0.0, -th});
    }

    return matched_filter_downsample(x, fs, cfg);
}

SymbolFrame symbol_projection(const WaveformTrace& trace, const RxConfig& cfg) {
    return matched_filter_downsample(trace.samples, trace.sample_rate, cfg);
}

}  // namespace cvqkd
