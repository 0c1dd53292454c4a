#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cvqkd/common.hpp"

namespace cvqkd {

enum class TraceRole : std::uint8_t {
    signal = 0,
    vacuum = 1,
    electronic = 2,
    symbols = 3,  // binary SymbolFrame variant shares the container
};

/// Sampled complex-baseband record exchanged between the DSP stages.
///
/// Unit convention: a transmitted symbol of coherent amplitude α carries
/// unit discrete pulse energy, and vacuum corresponds to white noise of
/// per-quadrature variance 1/2 per sample. dsp::resample preserves both, so
/// the convention holds at every rate in the chain.
struct WaveformTrace {
    cvec samples;
    double sample_rate = 0.0;
    TraceRole role = TraceRole::signal;
    std::string origin;  // free-text provenance, appended stage by stage

    double duration() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
    void note(const std::string& item) {
        if (!origin.empty()) origin += ";";
        origin += item;
    }
};

/// CVQT container: magic "CVQT", u32 version (=1), u8 role, f64 sample rate,
/// u64 count, then count interleaved (re, im) f32 pairs. All little-endian.
void write_cvqt(std::ostream& os, const WaveformTrace& trace);
void write_cvqt(const std::string& path, const WaveformTrace& trace);
WaveformTrace read_cvqt(std::istream& is);
WaveformTrace read_cvqt(const std::string& path);

}  // namespace cvqkd
