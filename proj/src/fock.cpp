#include "cvqkd/fock.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace cvqkd {

namespace {

// ⟨n|α⟩ column for n < cutoff, stable via log-domain accumulation.
Eigen::VectorXcd coherent_column(cplx alpha, std::size_t cutoff) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(cutoff));
    const double nbar = std::norm(alpha);
    v(0) = std::exp(-0.5 * nbar);
    for (std::size_t n = 1; n < cutoff; ++n)
        v(static_cast<Eigen::Index>(n)) =
            v(static_cast<Eigen::Index>(n - 1)) * alpha /
            std::sqrt(static_cast<double>(n));
    return v;
}

double zstar_at_cutoff(const Constellation& c, std::size_t cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const Eigen::VectorXcd v = coherent_column(c.points[k], cutoff);
        rho.noalias() += c.probs[k] * v * v.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd sqrt_rho =
        es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    // â in the number basis: ⟨n|â|n+1⟩ = sqrt(n+1)
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 0; n + 1 < dim; ++n)
        a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    const cplx z = 2.0 * (sqrt_rho * a * sqrt_rho * a.adjoint()).trace();
    return z.real();
}

}  // namespace

double FockOperatorWorkspace::truncation_error(double nbar, std::size_t cutoff) {
    // Poisson tail P(N >= cutoff) for mean nbar
    double term = std::exp(-nbar);
    double cdf = term;
    for (std::size_t n = 1; n < cutoff; ++n) {
        term *= nbar / static_cast<double>(n);
        cdf += term;
    }
    return std::max(0.0, 1.0 - cdf);
}

bool FockOperatorWorkspace::admits(const Constellation& c) const {
    double worst = 0.0;
    for (const cplx& a : c.points) worst = std::max(worst, std::norm(a));
    return truncation_error(worst, cutoff) < 1e-10;
}

double effective_correlation(const Constellation& c, FockOperatorWorkspace& ws) {
    if (ws.cutoff < 4) throw ConfigError("Fock cutoff too small");
    std::size_t cutoff = ws.cutoff;
    while (!FockOperatorWorkspace{cutoff}.admits(c)) {
        cutoff += cutoff / 2;
        if (cutoff > 4096)
            throw PipelineError("Fock cutoff beyond 4096; amplitudes too large");
    }
    ws.cutoff = cutoff;
    return zstar_at_cutoff(c, cutoff);
}

}  // namespace cvqkd
