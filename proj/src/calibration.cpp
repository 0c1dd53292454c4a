#include "cvqkd/calibration.hpp"

#include <cmath>

namespace cvqkd {

double frame_quadrature_variance(const SymbolFrame& frame) {
    double ss = 0.0;
    for (const cplx& s : frame.symbols) ss += std::norm(s);
    return ss / (2.0 * static_cast<double>(frame.symbols.size()));
}

CalibrationRecord calibrate(const WaveformTrace& vacuum,
                            const WaveformTrace& electronic, const RxConfig& cfg) {
    if (vacuum.role != TraceRole::vacuum)
        throw PipelineError("calibrate: first trace must be a vacuum capture");
    if (electronic.role != TraceRole::electronic)
        throw PipelineError("calibrate: second trace must be an electronic capture");
    if (vacuum.sample_rate != electronic.sample_rate)
        throw PipelineError("calibrate: sample rates differ");

    CalibrationRecord rec;
    rec.vacuum_var_raw = frame_quadrature_variance(symbol_projection(vacuum, cfg));
    rec.elec_var_raw = frame_quadrature_variance(symbol_projection(electronic, cfg));
    rec.shot_unit = rec.vacuum_var_raw - rec.elec_var_raw;
    if (rec.shot_unit <= 0.0)
        throw PipelineError("calibrate: vacuum variance not above electronic floor");
    rec.v_el_snu = rec.elec_var_raw / rec.shot_unit;
    rec.band_lo = -cfg.quantum_band_edge();
    rec.band_hi = cfg.quantum_band_edge();
    return rec;
}

SymbolFrame to_snu(const SymbolFrame& frame, const CalibrationRecord& cal) {
    if (cal.shot_unit <= 0.0) throw PipelineError("to_snu: invalid calibration record");
    const double s = 1.0 / std::sqrt(cal.shot_unit);
    SymbolFrame out = frame;
    for (cplx& v : out.symbols) v *= s;
    out.scale = frame.scale * s;
    return out;
}

}  // namespace cvqkd
