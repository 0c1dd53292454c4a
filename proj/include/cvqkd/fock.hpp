#pragma once

#include "cvqkd/constellation.hpp"

namespace cvqkd {

/// Truncated Fock-space scratch for the discrete-modulation correlation
/// term. The cutoff is validated (and auto-raised by effective_correlation)
/// so that every coherent state in play keeps truncated norm error < 1e-10.
struct FockOperatorWorkspace {
    std::size_t cutoff = 32;

    /// Norm defect 1 − Σ_{n<cutoff} |⟨n|α⟩|² for photon number nbar = |α|².
    static double truncation_error(double nbar, std::size_t cutoff);
    /// True when every constellation point passes the 1e-10 norm check.
    bool admits(const Constellation& c) const;
};

/// Effective correlation Z* = 2·Tr[ρ^{1/2} â ρ^{1/2} â†] of the modulated
/// ensemble ρ = Σ p_k |α_k⟩⟨α_k|, evaluated in the truncated Fock basis via
/// an eigendecomposition matrix square root. Satisfies
/// 0 ≤ Z* ≤ sqrt(vm² + 2vm), with equality approached in the dense
/// Gaussian-shaped limit. Raises the workspace cutoff as needed.
double effective_correlation(const Constellation& c, FockOperatorWorkspace& ws);

}  // namespace cvqkd
