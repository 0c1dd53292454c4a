#pragma once

#include "cvqkd/rxdsp.hpp"

namespace cvqkd {

/// Shot-noise-unit calibration from the two optical-switch captures,
/// measured in the matched-filtered symbol domain so SNU matches the
/// symbol-level noise figures.
struct CalibrationRecord {
    double shot_unit = 0.0;       // raw per-quadrature variance of one SNU
    double v_el_snu = 0.0;        // electronic noise in SNU
    double vacuum_var_raw = 0.0;  // per-quadrature raw variances
    double elec_var_raw = 0.0;
    double band_lo = 0.0;         // Hz range the measurement covers
    double band_hi = 0.0;
};

/// Measure per-quadrature variances of the (whitened) vacuum and electronic
/// captures after matched filtering; shot_unit = vacuum − electronic.
/// Throws when the difference is nonpositive (mislabeled traces).
CalibrationRecord calibrate(const WaveformTrace& vacuum,
                            const WaveformTrace& electronic, const RxConfig& cfg);

/// Rescale a symbol frame so vacuum-only variance is 1 SNU per quadrature.
SymbolFrame to_snu(const SymbolFrame& frame, const CalibrationRecord& cal);

/// Per-quadrature variance about zero over both quadratures of a frame.
double frame_quadrature_variance(const SymbolFrame& frame);

}  // namespace cvqkd
