#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvqkd {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Invalid or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pipeline stage failed on otherwise valid input (CLI exit code 3).
struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pilot recovery or frame synchronization failed (CLI exit code 4).
struct SyncError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cvqkd
