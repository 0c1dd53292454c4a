#pragma once

#include <cstddef>
#include <functional>

#include "cvqkd/common.hpp"

namespace cvqkd::dsp {

/// In-place-safe forward/inverse DFT (FFTW behind a planner lock; callable
/// from worker threads). Inverse is normalized by 1/N.
cvec fft(const cvec& x);
cvec ifft(const cvec& x);

/// Smallest 2^a·3^b·5^c ≥ n.
std::size_t next_fast_size(std::size_t n);

/// Linear convolution via zero-padded FFT, trimmed to "same" length with the
/// filter's center tap aligned (zero net group delay for symmetric taps).
cvec convolve_same(const cvec& x, const cvec& taps);

/// Rate conversion by Fourier interpolation. Amplitude-preserving for
/// in-band content; the project convention scales by sqrt(n_in/n_out) so
/// discrete pulse energies (and hence per-sample noise variances against
/// unit-energy symbol modes) are invariant across rates.
cvec resample(const cvec& x, double rate_in, double rate_out);

/// Welch PSD estimate with Hann window and 50% overlap. Returns nfft bins in
/// FFT order (bin k ↔ frequency k/nfft·rate, negative half wrapped); density
/// is per-sample variance per bin times nfft (i.e. mean |X|²/enbw).
rvec welch_psd(const cvec& x, std::size_t nfft);

/// Frequency of FFT bin k at the given length and sample rate (negative
/// frequencies for k > n/2).
double bin_freq(std::size_t k, std::size_t n, double rate);

/// Linear-phase FIR taps realizing a complex frequency response sampled at
/// n_taps points (response(f) evaluated over FFT-ordered bins at the given
/// rate); taps come out centered.
cvec fir_from_response(std::size_t n_taps, double rate,
                       const std::function<cplx(double)>& response);

/// Multiply the spectrum of x by response(f) (zero-phase application of a
/// frequency response over the whole trace; linear via zero padding).
cvec apply_response(const cvec& x, double rate,
                    const std::function<cplx(double)>& response);

/// Phase unwrapping (adds multiples of 2π to keep increments in (−π, π]).
rvec unwrap(const rvec& phase);

/// Least-squares straight line y ≈ slope·i + intercept over sample index.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const rvec& y);

/// Cross-correlation lag search: index d maximizing |Σ ref*[i]·x[i+d]|.
/// Also reports the peak magnitude and the RMS of the off-peak lags.
struct CorrPeak {
    std::size_t lag = 0;
    double peak = 0.0;
    double sidelobe_rms = 0.0;
};
CorrPeak correlate_peak(const cvec& reference, const cvec& x);

}  // namespace cvqkd::dsp
