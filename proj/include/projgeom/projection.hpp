#pragma once

#include <cstdint>
#include <utility>

#include "projgeom/numeric.hpp"

namespace projgeom {

/// A square matrix certified to satisfy m^2 = m within residual_tol.
/// The residual is recorded at construction so downstream code can assert
/// without recomputation.
class Idempotent {
public:
    explicit Idempotent(ComplexMatrix m, const ToleranceConfig& tol = {});

    const ComplexMatrix& matrix() const { return m_; }
    double residual() const { return residual_; }
    Eigen::Index dim() const { return m_.rows(); }

private:
    ComplexMatrix m_;
    double residual_;
};

/// A certified self-adjoint idempotent. Certificates: the idempotency and
/// Hermitian residuals, eigenvalue clustering at {0, 1}, and the rank
/// (rounded trace).
class Projection {
public:
    explicit Projection(ComplexMatrix m, const ToleranceConfig& tol = {});

    const ComplexMatrix& matrix() const { return m_; }
    double idem_residual() const { return idem_residual_; }
    double herm_residual() const { return herm_residual_; }
    Eigen::Index rank() const { return rank_; }
    Eigen::Index dim() const { return m_.rows(); }

    Idempotent as_idempotent(const ToleranceConfig& tol = {}) const {
        return Idempotent(m_, tol);
    }

private:
    ComplexMatrix m_;
    double idem_residual_;
    double herm_residual_;
    Eigen::Index rank_;
};

enum class MatrixClass { Projection, Idempotent, Neither };

/// Residual-based classification: Projection when both ||m^2 - m|| and
/// ||m - m*|| pass, Idempotent when only the former does, Neither otherwise.
MatrixClass classify(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// 1 - e; an exact involution on the entries.
Idempotent complement(const Idempotent& e);
Projection complement(const Projection& p);

/// p <= q in the projection order, decided by pq = qp = p within residual_tol.
bool order_leq(const Projection& p, const Projection& q, const ToleranceConfig& tol = {});

/// Murray-von Neumann equivalence in a full matrix algebra: equal rank.
bool mv_equivalent(const Projection& p, const Projection& q);

/// Range/kernel comparison of two idempotents through the four products
/// (1-p)q, (1-q)p, p(1-q), q(1-p).
struct RangeKernelMatch {
    bool same_range;
    bool same_kernel;
    double range_residual;   // max(||(1-p)q||, ||(1-q)p||)
    double kernel_residual;  // max(||p(1-q)||, ||q(1-p)||)
};
RangeKernelMatch range_kernel_match(const Idempotent& p, const Idempotent& q,
                                    const ToleranceConfig& tol = {});

/// The three equivalent ball-membership predicates, each computed on its own:
/// invertibility of p+q-1, ||p-q|| < 1, and Im p + Ker q spanning everything.
struct BallReport {
    bool invertible_sum;
    bool norm_lt_one;
    bool direct_sum;
    double norm_value;   // ||p - q||
    double min_sv_sum;   // smallest singular value of p + q - 1
};
BallReport ball_predicates(const Projection& p, const Projection& q,
                           const ToleranceConfig& tol = {});

/// Kovarik's idempotent r = p (p+q-1)^{-2} q with Im r = Im p, Ker r = Ker q.
/// The range/kernel identities are certified before the result is returned.
Idempotent kovarik(const Idempotent& p, const Idempotent& q, const ToleranceConfig& tol = {});

/// (r1, r2) = (kovarik(p,q), kovarik(q,p)); r1 + r2 - 1 inverts p + q - 1,
/// certified to 1e-8.
std::pair<Idempotent, Idempotent> converse_kovarik(const Idempotent& p, const Idempotent& q,
                                                   const ToleranceConfig& tol = {});

/// Piecewise affine idempotent path: p to kovarik(p,q) on [0, 1/2], then on
/// to q. Endpoints are returned exactly.
Idempotent idempotent_path(const Idempotent& p, const Idempotent& q, double t,
                           const ToleranceConfig& tol = {});

/// Projection-valued path g(t) = f(t)(f(t)+f(t)*-1)^{-2} f(t)* over the
/// idempotent path f. Requires ||p-q|| < 1.
Projection projection_path(const Projection& p, const Projection& q, double t,
                           const ToleranceConfig& tol = {});

/// Deterministic rank-k projection: orthonormalized columns of a seeded
/// Gaussian sample.
Projection random_projection(Eigen::Index n, Eigen::Index k, std::uint64_t seed);

}  // namespace projgeom
