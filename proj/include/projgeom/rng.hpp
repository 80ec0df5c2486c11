#pragma once

#include <cstdint>
#include <random>

#include "projgeom/numeric.hpp"

namespace projgeom {

/// Seeded standard-normal sampler. Uses an explicit Box-Muller transform on
/// top of mt19937_64 so that streams are identical across standard library
/// implementations.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : gen_(seed) {}

    double real();
    Complex complex_normal();
    ComplexMatrix complex_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    double uniform01();  // in (0, 1]

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace projgeom
