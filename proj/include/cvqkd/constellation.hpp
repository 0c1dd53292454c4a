#pragma once

#include <cstdint>
#include <iosfwd>

#include "cvqkd/common.hpp"

namespace cvqkd {

/// Probabilistically shaped square-grid constellation. Points are coherent
/// amplitudes in SNU-normalized quadrature units; the modulation variance is
/// vm = 2 Σ p_k |α_k|² (vacuum quadrature variance = 1, V_M = 2⟨n⟩).
struct Constellation {
    cvec points;
    rvec probs;
    std::size_t order = 0;    // M
    double dispersion = 0.0;  // ν, on the unscaled grid
    double vm = 0.0;          // cached 2 Σ p|α|²

    /// RMS coherent amplitude sqrt(Σ p|α|²) = sqrt(vm/2).
    double rms_amplitude() const;
};

/// Lay M points (M ∈ {4,16,64,256}) on the centered odd-integer grid
/// {±1,±3,…}², weight them p_k ∝ exp(−ν|α_grid|²) on that grid, then scale
/// all amplitudes so the modulation variance hits target_vm (if given).
Constellation build_constellation(std::size_t order, double dispersion,
                                  double target_vm = -1.0);

/// 2 Σ p_k |α_k|², recomputed from the stored table.
double modulation_variance(const Constellation& c);

/// i.i.d. symbol draw, reproducible per seed. Returns constellation indices;
/// points_of maps them to amplitudes.
std::vector<std::uint32_t> sample_symbols(const Constellation& c, std::size_t n,
                                          std::uint64_t seed);
cvec points_of(const Constellation& c, const std::vector<std::uint32_t>& idx);

/// Report/config text block: header fields then an index,re,im,prob CSV table.
void write_constellation(std::ostream& os, const Constellation& c);

}  // namespace cvqkd
