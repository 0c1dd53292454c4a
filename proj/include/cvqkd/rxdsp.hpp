#pragma once

#include <cstdint>

#include "cvqkd/trace.hpp"

namespace cvqkd {

/// Pilot-derived carrier estimate over one trace.
struct PilotEstimate {
    double freq_offset = 0.0;      // Hz, relative to the nominal pilot frequency
    rvec phase_track;              // per-sample residual phase after the linear fit
    double fit_residual_rms = 0.0; // radians, detrended
};

/// Recovered symbols plus the bookkeeping needed to line them up with the
/// transmitted stream.
struct SymbolFrame {
    cvec symbols;
    double symbol_rate = 0.0;
    std::size_t alignment_offset = 0;  // samples at the matched-filter grid
    double scale = 1.0;                // raw -> SNU conversion applied so far
};

/// Receiver DSP settings (defaults mirror TxConfig's frequency plan).
struct RxConfig {
    double symbol_rate = 16e9;
    double rrc_rolloff = 0.2;
    std::size_t rrc_span_symbols = 40;
    std::size_t mf_sps = 8;           // matched-filter grid, samples per symbol
    double pilot_freq = 15e9;         // nominal
    double pilot_search_bw = 6e9;     // window where the pilot may sit
    double pilot_isolation_bw = 800e6;
    double phase_lpf_hz = 100e6;
    bool notch_pilot = true;
    std::size_t edge_trim_symbols = 64;  // drop filter transients at frame ends
    std::size_t n_reference = 4096;      // disclosed symbols for sync/phase

    double quantum_band_edge() const { return symbol_rate * (1.0 + rrc_rolloff) / 2.0; }
};

/// Whitening filter from a vacuum capture: linear-phase FIR whose magnitude
/// is the regularized inverse square root of the measured noise PSD.
/// Applying it flattens the vacuum PSD within ±1 dB across the quantum band.
cvec whitening_taps(const WaveformTrace& vacuum, std::size_t n_taps);

/// Convenience: run a trace through whitening taps (center-aligned).
WaveformTrace whiten(const WaveformTrace& trace, const cvec& taps);

/// Isolate the pilot, unwrap its phase, fit a line: slope gives the
/// frequency offset, the detrended remainder (low-passed) is the phase
/// track. Throws SyncError when the fit residual exceeds 1 rad RMS.
PilotEstimate recover_pilot(const WaveformTrace& trace, double pilot_freq_nominal,
                            double bandwidth, double phase_lpf_hz = 100e6,
                            double isolation_bw = 800e6);

/// Integer delay of the reference inside the received stream via the peak of
/// the cross-correlation magnitude (rotation-invariant). Throws SyncError if
/// the peak is under 5x the RMS sidelobe level.
std::size_t synchronize(const cvec& reference_symbols, const cvec& rx_symbols);

/// Downconvert by the estimated offset, apply the pilot phase track, matched
/// filter, pick the max-energy timing phase and downsample to symbols.
/// Expects a whitened trace.
SymbolFrame demodulate(const WaveformTrace& trace, const PilotEstimate& pilot,
                       const RxConfig& cfg);

/// Matched-filter-and-downsample only (no carrier handling); the projection
/// used for calibration captures so signal and calibration traces share one
/// symbol-domain definition.
SymbolFrame symbol_projection(const WaveformTrace& trace, const RxConfig& cfg);

}  // namespace cvqkd
