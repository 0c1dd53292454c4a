#include "cvqkd/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

namespace cvqkd::dsp {

namespace {

// FFTW's planner is not thread-safe; plan under a lock, execute outside.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

cvec transform(const cvec& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    cvec out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(const_cast<cplx*>(x.data())),
            reinterpret_cast<fftw_complex*>(out.data()), sign,
            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD) {
        const double s = 1.0 / static_cast<double>(n);
        for (auto& v : out) v *= s;
    }
    return out;
}

}  // namespace

cvec fft(const cvec& x) { return transform(x, FFTW_FORWARD); }
cvec ifft(const cvec& x) { return transform(x, FFTW_BACKWARD); }

std::size_t next_fast_size(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

cvec convolve_same(const cvec& x, const cvec& taps) {
    if (x.empty() || taps.empty()) return {};
    const std::size_t full = x.size() + taps.size() - 1;
    const std::size_t nfft = next_fast_size(full);
    cvec a(nfft), b(nfft);
    std::copy(x.begin(), x.end(), a.begin());
    std::copy(taps.begin(), taps.end(), b.begin());
    cvec fa = fft(a), fb = fft(b);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    cvec y = ifft(fa);
    // center tap aligned: output[i] = Σ_k taps[k]·x[i + center − k]
    const std::size_t center = (taps.size() - 1) / 2;
    cvec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[i + center];
    return out;
}

cvec resample(const cvec& x, double rate_in, double rate_out) {
    if (x.empty()) return {};
    if (rate_in <= 0 || rate_out <= 0)
        throw PipelineError("resample: nonpositive rate");
    if (rate_in == rate_out) return x;
    const std::size_t n1 = x.size();
    const auto n2 = static_cast<std::size_t>(
        std::llround(static_cast<double>(n1) * rate_out / rate_in));
    if (n2 == 0) throw PipelineError("resample: output would be empty");
    cvec X = fft(x);
    cvec Y(n2, cplx{0.0, 0.0});
    const std::size_t keep = std::min(n1, n2);
    const std::size_t hi = keep / 2;           // positive bins 0..hi
    const std::size_t lo = keep - 1 - hi;      // negative bins
    for (std::size_t k = 0; k <= hi; ++k) Y[k] = X[k];
    for (std::size_t k = 1; k <= lo; ++k) Y[n2 - k] = X[n1 - k];
    cvec y = ifft(Y);
    // amplitude factor n2/n1 restores per-sample amplitude; the extra
    // sqrt(n1/n2) makes discrete energies rate-invariant (project unit
    // convention, see channel model docs)
    const double s = static_cast<double>(n2) / static_cast<double>(n1) *
                     std::sqrt(static_cast<double>(n1) / static_cast<double>(n2));
    for (auto& v : y) v *= s;
    return y;
}

rvec welch_psd(const cvec& x, std::size_t nfft) {
    if (x.size() < nfft) throw PipelineError("welch_psd: trace shorter than nfft");
    rvec window(nfft);
    double wpow = 0.0;
    for (std::size_t i = 0; i < nfft; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) /
                                         static_cast<double>(nfft));
        wpow += window[i] * window[i];
    }
    rvec psd(nfft, 0.0);
    const std::size_t hop = nfft / 2;
    std::size_t count = 0;
    cvec seg(nfft);
    for (std::size_t start = 0; start + nfft <= x.size(); start += hop) {
        for (std::size_t i = 0; i < nfft; ++i) seg[i] = x[start + i] * window[i];
        cvec S = fft(seg);
        for (std::size_t k = 0; k < nfft; ++k) psd[k] += std::norm(S[k]);
        ++count;
    }
    const double s = 1.0 / (static_cast<double>(count) * wpow);
    for (auto& v : psd) v *= s;  // per-sample variance density (sums to var over bins/nfft)
    return psd;
}

double bin_freq(std::size_t k, std::size_t n, double rate) {
    const auto kk = static_cast<double>(k);
    const auto nn = static_cast<double>(n);
    const double f = (kk <= nn / 2.0) ? kk : kk - nn;
    return f * rate / nn;
}

cvec fir_from_response(std::size_t n_taps, double rate,
                       const std::function<cplx(double)>& response) {
    if (n_taps == 0) throw PipelineError("fir_from_response: zero taps");
    cvec H(n_taps);
    for (std::size_t k = 0; k < n_taps; ++k) H[k] = response(bin_freq(k, n_taps, rate));
    cvec h = ifft(H);
    // rotate so the impulse response is centered (fftshift)
    cvec taps(n_taps);
    const std::size_t half = n_taps / 2;
    for (std::size_t i = 0; i < n_taps; ++i) taps[i] = h[(i + half) % n_taps];
    return taps;
}

cvec apply_response(const cvec& x, double rate,
                    const std::function<cplx(double)>& response) {
    if (x.empty()) return {};
    // pad to kill circular wrap from the implied impulse response tail
    const std::size_t nfft = next_fast_size(x.size() + x.size() / 8 + 64);
    cvec a(nfft, cplx{0.0, 0.0});
    std::copy(x.begin(), x.end(), a.begin());
    cvec X = fft(a);
    for (std::size_t k = 0; k < nfft; ++k) X[k] *= response(bin_freq(k, nfft, rate));
    cvec y = ifft(X);
    y.resize(x.size());
    return y;
}

rvec unwrap(const rvec& phase) {
    rvec out(phase.size());
    if (phase.empty()) return out;
    out[0] = phase[0];
    double offset = 0.0;
    for (std::size_t i = 1; i < phase.size(); ++i) {
        double d = phase[i] - phase[i - 1];
        if (d > pi) offset -= 2.0 * pi;
        else if (d < -pi) offset += 2.0 * pi;
        out[i] = phase[i] + offset;
    }
    return out;
}

LineFit fit_line(const rvec& y) {
    const std::size_t n = y.size();
    if (n < 2) return {0.0, n ? y[0] : 0.0};
    // closed form with centered index to keep the normal equations tame
    const double mean_i = (static_cast<double>(n) - 1.0) / 2.0;
    double sy = 0.0, siy = 0.0, sii = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double di = static_cast<double>(i) - mean_i;
        sy += y[i];
        siy += di * y[i];
        sii += di * di;
    }
    LineFit f;
    f.slope = siy / sii;
    f.intercept = sy / static_cast<double>(n) - f.slope * mean_i;
    return f;
}

CorrPeak correlate_peak(const cvec& reference, const cvec& x) {
    if (reference.empty() || x.size() < reference.size())
        throw SyncError("correlate_peak: reference longer than trace");
    const std::size_t nlags = x.size() - reference.size() + 1;
    const std::size_t nfft = next_fast_size(x.size() + reference.size());
    cvec a(nfft, cplx{0.0, 0.0}), b(nfft, cplx{0.0, 0.0});
    std::copy(x.begin(), x.end(), a.begin());
    for (std::size_t i = 0; i < reference.size(); ++i) b[i] = std::conj(reference[i]);
    std::reverse(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(reference.size()));
    cvec fa = fft(a), fb = fft(b);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    cvec y = ifft(fa);
    // lag d lives at y[d + len(ref) − 1]
    CorrPeak res;
    double sumsq = 0.0;
    for (std::size_t d = 0; d < nlags; ++d) {
        const double m = std::abs(y[d + reference.size() - 1]);
        sumsq += m * m;
        if (m > res.peak) {
            res.peak = m;
            res.lag = d;
        }
    }
    if (nlags > 1)
        res.sidelobe_rms = std::sqrt(
            std::max(0.0, (sumsq - res.peak * res.peak) / static_cast<double>(nlags - 1)));
    return res;
}

}  // namespace cvqkd::dsp
