#pragma once

#include "projgeom/errors.hpp"

namespace projgeom {

/// Numerical cutoffs shared by every rank/residual decision in the library.
///
/// rank_tol governs which singular values count as zero (relative to the
/// largest), residual_tol is the acceptance gate for idempotent/Hermitian
/// certificates, and inv_tol is the relative cutoff on the smallest singular
/// value below which a matrix is treated as singular.
struct ToleranceConfig {
    double rank_tol = 1e-10;
    double residual_tol = 1e-8;
    double inv_tol = 1e-10;

    void validate() const {
        auto ok = [](double v) { return v > 0.0 && v < 1.0; };
        if (!ok(rank_tol) || !ok(residual_tol) || !ok(inv_tol)) {
            throw BadArgumentsError("tolerances must lie strictly between 0 and 1");
        }
    }
};

}  // namespace projgeom
