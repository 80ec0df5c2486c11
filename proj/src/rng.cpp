#include "projgeom/rng.hpp"

#include <cmath>
#include <numbers>

namespace projgeom {

double GaussianSampler::uniform01() {
    // 53 random mantissa bits; shifted into (0, 1] so the log below is safe.
    const std::uint64_t bits = gen_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianSampler::real() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex GaussianSampler::complex_normal() {
    const double re = real();
    const double im = real();
    return Complex(re, im) * std::numbers::sqrt2 / 2.0;
}

ComplexMatrix GaussianSampler::complex_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_normal();
        }
    }
    return m;
}

}  // namespace projgeom
