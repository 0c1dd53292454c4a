#include "cvqkd/constellation.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace cvqkd {

double Constellation::rms_amplitude() const { return std::sqrt(vm / 2.0); }

Constellation build_constellation(std::size_t order, double dispersion,
                                  double target_vm) {
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(
        static_cast<double>(order))));
    if (side * side != order || (side != 2 && side != 4 && side != 8 && side != 16 &&
                                 side != 32))
        throw ConfigError("constellation order must be a square in {4,16,64,256,1024}");
    if (dispersion < 0.0) throw ConfigError("constellation dispersion must be >= 0");
    if (target_vm == 0.0 || (target_vm < 0.0 && target_vm != -1.0))
        throw ConfigError("constellation target vm must be positive");

    Constellation c;
    c.order = order;
    c.dispersion = dispersion;
    c.points.reserve(order);
    c.probs.reserve(order);

    // odd-integer coordinates: −(L−1), −(L−3), …, (L−1)
    double norm = 0.0;
    for (std::size_t iy = 0; iy < side; ++iy) {
        for (std::size_t ix = 0; ix < side; ++ix) {
            const double x = 2.0 * static_cast<double>(ix) - (static_cast<double>(side) - 1.0);
            const double y = 2.0 * static_cast<double>(iy) - (static_cast<double>(side) - 1.0);
            const cplx a{x, y};
            const double w = std::exp(-dispersion * std::norm(a));
            c.points.push_back(a);
            c.probs.push_back(w);
            norm += w;
        }
    }
    double vm_grid = 0.0;
    for (std::size_t k = 0; k < order; ++k) {
        c.probs[k] /= norm;
        vm_grid += 2.0 * c.probs[k] * std::norm(c.points[k]);
    }
    const double scale = target_vm > 0.0 ? std::sqrt(target_vm / vm_grid) : 1.0;
    c.vm = 0.0;
    for (std::size_t k = 0; k < order; ++k) {
        c.points[k] *= scale;
        c.vm += 2.0 * c.probs[k] * std::norm(c.points[k]);
    }
    return c;
}

double modulation_variance(const Constellation& c) {
    double vm = 0.0;
    for (std::size_t k = 0; k < c.points.size(); ++k)
        vm += 2.0 * c.probs[k] * std::norm(c.points[k]);
    return vm;
}

std::vector<std::uint32_t> sample_symbols(const Constellation& c, std::size_t n,
                                          std::uint64_t seed) {
    if (n == 0) throw ConfigError("sample_symbols: n must be positive");
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::uint32_t> dist(c.probs.begin(), c.probs.end());
    std::vector<std::uint32_t> idx(n);
    for (auto& v : idx) v = dist(rng);
    return idx;
}

cvec points_of(const Constellation& c, const std::vector<std::uint32_t>& idx) {
    cvec out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = c.points[idx[i]];
    return out;
}

void write_constellation(std::ostream& os, const Constellation& c) {
    const auto old_precision = os.precision(12);
    os << "m," << c.order << "\n";
    os << "nu," << c.dispersion << "\n";
    os << "vm," << c.vm << "\n";
    os << "index,re,im,prob\n";
    for (std::size_t k = 0; k < c.points.size(); ++k)
        os << k << "," << c.points[k].real() << "," << c.points[k].imag() << ","
           << c.probs[k] << "\n";
    os.precision(old_precision);
}

}  // namespace cvqkd
