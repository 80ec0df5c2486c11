#include "projgeom/projection.hpp"

#include <Eigen/QR>
#include <cmath>

#include "projgeom/errors.hpp"
#include "projgeom/rng.hpp"

namespace projgeom {

namespace {

double idempotency_residual(const ComplexMatrix& m) {
    if (m.rows() == 0) return 0.0;
    return spectral_norm(ComplexMatrix(m * m - m));
}

double hermitian_residual(const ComplexMatrix& m) {
    if (m.rows() == 0) return 0.0;
    return spectral_norm(ComplexMatrix(m - m.adjoint()));
}

}  // namespace

Idempotent::Idempotent(ComplexMatrix m, const ToleranceConfig& tol) : m_(std::move(m)) {
    tol.validate();
    if (m_.rows() != m_.cols()) throw BadArgumentsError("idempotent: matrix must be square");
    if (!is_finite(m_)) throw BadArgumentsError("idempotent: non-finite entries");
    residual_ = idempotency_residual(m_);
    if (residual_ > tol.residual_tol)
        throw Error("idempotent: ||m^2 - m|| = " + std::to_string(residual_) + " exceeds tolerance");
}

Projection::Projection(ComplexMatrix m, const ToleranceConfig& tol) : m_(std::move(m)) {
    tol.validate();
    if (m_.rows() != m_.cols()) throw BadArgumentsError("projection: matrix must be square");
    if (!is_finite(m_)) throw BadArgumentsError("projection: non-finite entries");
    herm_residual_ = hermitian_residual(m_);
    if (herm_residual_ > tol.residual_tol)
        throw NotHermitianError("projection: ||m - m*|| = " + std::to_string(herm_residual_) +
                                " exceeds tolerance");
    idem_residual_ = idempotency_residual(m_);
    if (idem_residual_ > tol.residual_tol)
        throw Error("projection: ||m^2 - m|| = " + std::to_string(idem_residual_) +
                    " exceeds tolerance");

    if (m_.rows() == 0) {
        rank_ = 0;
        return;
    }
    // Eigenvalues of a near-projection must cluster at {0, 1}; the rank is
    // the size of the 1-cluster, which agrees with the rounded trace.
    HermitianEigen eig = hermitian_eigen(m_, tol);
    Eigen::Index ones = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        double lam = eig.values(i);
        if (std::abs(lam - 1.0) <= tol.residual_tol) {
            ++ones;
        } else if (std::abs(lam) > tol.residual_tol) {
            throw Error("projection: eigenvalue " + std::to_string(lam) +
                        " is separated from both 0 and 1");
        }
    }
    double tr = m_.trace().real();
    rank_ = static_cast<Eigen::Index>(std::llround(tr));
    if (rank_ != ones)
        throw Error("projection: trace " + std::to_string(tr) +
                    " disagrees with eigenvalue cluster of size " + std::to_string(ones));
}

MatrixClass classify(const ComplexMatrix& m, const ToleranceConfig& tol) {
    tol.validate();
    if (m.rows() != m.cols() || !is_finite(m)) return MatrixClass::Neither;
    if (idempotency_residual(m) > tol.residual_tol) return MatrixClass::Neither;
    if (hermitian_residual(m) > tol.residual_tol) return MatrixClass::Idempotent;
    return MatrixClass::Projection;
}

Idempotent complement(const Idempotent& e) {
    ComplexMatrix c = -e.matrix();
    c.diagonal().array() += 1.0;
    return Idempotent(std::move(c));
}

Projection complement(const Projection& p) {
    ComplexMatrix c = -p.matrix();
    c.diagonal().array() += 1.0;
    return Projection(std::move(c));
}

bool order_leq(const Projection& p, const Projection& q, const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("order_leq: dimension mismatch");
    const ComplexMatrix& pm = p.matrix();
    const ComplexMatrix& qm = q.matrix();
    double r1 = spectral_norm(ComplexMatrix(pm * qm - pm));
    double r2 = spectral_norm(ComplexMatrix(qm * pm - pm));
    return r1 <= tol.residual_tol && r2 <= tol.residual_tol;
}

bool mv_equivalent(const Projection& p, const Projection& q) {
    if (p.dim() != q.dim()) throw BadArgumentsError("mv_equivalent: dimension mismatch");
    return p.rank() == q.rank();
}

RangeKernelMatch range_kernel_match(const Idempotent& p, const Idempotent& q,
                                    const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("range_kernel_match: dimension mismatch");
    const ComplexMatrix& pm = p.matrix();
    const ComplexMatrix& qm = q.matrix();
    ComplexMatrix pc = -pm;
    pc.diagonal().array() += 1.0;
    ComplexMatrix qc = -qm;
    qc.diagonal().array() += 1.0;

    // Im p = Im q  iff  (1-p)q = 0 and (1-q)p = 0  (each range absorbs the other).
    double range_res = std::max(spectral_norm(ComplexMatrix(pc * qm)),
                                spectral_norm(ComplexMatrix(qc * pm)));
    // Ker p = Ker q  iff  p(1-q) = 0 and q(1-p) = 0.
    double kernel_res = std::max(spectral_norm(ComplexMatrix(pm * qc)),
                                 spectral_norm(ComplexMatrix(qm * pc)));
    return RangeKernelMatch{range_res <= tol.residual_tol, kernel_res <= tol.residual_tol,
                            range_res, kernel_res};
}

BallReport ball_predicates(const Projection& p, const Projection& q, const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("ball_predicates: dimension mismatch");
    const Eigen::Index n = p.dim();
    BallReport rep{};

    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    if (n == 0) {
        rep.min_sv_sum = 0.0;
        rep.invertible_sum = true;  // vacuously, on the zero space
        rep.norm_value = 0.0;
        rep.norm_lt_one = true;
        rep.direct_sum = true;
        return rep;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(s);
    rep.min_sv_sum = svd.singularValues()(n - 1);
    const double max_sv = svd.singularValues()(0);
    // A zero matrix passes the relative gate vacuously; rule it out first.
    rep.invertible_sum = max_sv > 0.0 && rep.min_sv_sum >= tol.inv_tol * max_sv;

    rep.norm_value = spectral_norm(ComplexMatrix(p.matrix() - q.matrix()));
    rep.norm_lt_one = rep.norm_value < 1.0;

    // Im p + Ker q must span the whole space: stack bases and check the rank.
    Subspace im_p = range_basis(p.matrix(), tol);
    ComplexMatrix qc = -q.matrix();
    qc.diagonal().array() += 1.0;
    Subspace ker_q = range_basis(qc, tol);
    ComplexMatrix stacked(n, im_p.dim() + ker_q.dim());
    stacked.leftCols(im_p.dim()) = im_p.basis;
    stacked.rightCols(ker_q.dim()) = ker_q.basis;
    rep.direct_sum = (im_p.dim() + ker_q.dim() == n) &&
                     (stacked.cols() == 0 ||
                      Eigen::ColPivHouseholderQR<ComplexMatrix>(stacked).rank() == n);
    return rep;
}

namespace {

// Shared core: r = m1 * sinv^2 * m2 where sinv = (p+q-1)^{-1}. The inverse is
// taken once and squared, so the invertibility gate applies to p+q-1 itself
// rather than to its square.
ComplexMatrix kovarik_product(const ComplexMatrix& pm, const ComplexMatrix& qm,
                              const ToleranceConfig& tol) {
    ComplexMatrix s = pm + qm;
    s.diagonal().array() -= 1.0;
    ComplexMatrix sinv;
    try {
        sinv = solve_inverse(s, tol);
    } catch (const SingularError& e) {
        throw SumNotInvertibleError("kovarik: p + q - 1 is numerically singular (smallest "
                                    "singular value " +
                                    std::to_string(e.smallest_singular_value) + ")");
    }
    return pm * sinv * sinv * qm;
}

}  // namespace

Idempotent kovarik(const Idempotent& p, const Idempotent& q, const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("kovarik: dimension mismatch");
    Idempotent r(kovarik_product(p.matrix(), q.matrix(), tol), tol);
    RangeKernelMatch rel_p = range_kernel_match(p, r, tol);
    RangeKernelMatch rel_q = range_kernel_match(r, q, tol);
    if (!rel_p.same_range)
        throw Error("kovarik: range certificate failed, residual " +
                    std::to_string(rel_p.range_residual));
    if (!rel_q.same_kernel)
        throw Error("kovarik: kernel certificate failed, residual " +
                    std::to_string(rel_q.kernel_residual));
    return r;
}

std::pair<Idempotent, Idempotent> converse_kovarik(const Idempotent& p, const Idempotent& q,
                                                   const ToleranceConfig& tol) {
    Idempotent r1 = kovarik(p, q, tol);
    Idempotent r2 = kovarik(q, p, tol);
    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    ComplexMatrix t = r1.matrix() + r2.matrix();
    t.diagonal().array() -= 1.0;
    ComplexMatrix prod = t * s;
    prod.diagonal().array() -= 1.0;
    double res = spectral_norm(prod);
    if (res > 1e-8)
        throw Error("converse: (r1 + r2 - 1)(p + q - 1) differs from 1 by " +
                    std::to_string(res));
    return {std::move(r1), std::move(r2)};
}

Idempotent idempotent_path(const Idempotent& p, const Idempotent& q, double t,
                           const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("idempotent_path: dimension mismatch");
    if (!(t >= 0.0 && t <= 1.0))
        throw BadArgumentsError("idempotent_path: t must lie in [0, 1]");
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    Idempotent r = kovarik(p, q, tol);
    if (t == 0.5) return r;
    // Convex pieces p -> r -> q; each segment stays idempotent because the
    // endpoints share a range (first leg) or a kernel (second leg).
    if (t < 0.5) {
        double a = 2.0 * t;
        return Idempotent((1.0 - a) * p.matrix() + a * r.matrix(), tol);
    }
    double a = 2.0 * t - 1.0;
    return Idempotent((1.0 - a) * r.matrix() + a * q.matrix(), tol);
}

Projection projection_path(const Projection& p, const Projection& q, double t,
                           const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("projection_path: dimension mismatch");
    double gap = spectral_norm(ComplexMatrix(p.matrix() - q.matrix()));
    if (gap >= 1.0)
        throw NormNotLessThanOneError("projection_path: ||p - q|| = " + std::to_string(gap) +
                                      " is not below 1");
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    Idempotent f = idempotent_path(p.as_idempotent(tol), q.as_idempotent(tol), t, tol);
    // g = f (f + f* - 1)^{-2} f* is the projection with the same range as f.
    ComplexMatrix g = kovarik_product(f.matrix(), ComplexMatrix(f.matrix().adjoint()), tol);
    g = 0.5 * (g + g.adjoint().eval());
    Projection result(std::move(g), tol);
    RangeKernelMatch rel = range_kernel_match(f, result.as_idempotent(tol), tol);
    if (!rel.same_range)
        throw Error("projection_path: range certificate failed, residual " +
                    std::to_string(rel.range_residual));
    return result;
}

Projection random_projection(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
    if (n < 0 || k < 0 || k > n)
        throw BadRankError("random_projection: need 0 <= k <= n");
    if (k == 0) return Projection(ComplexMatrix::Zero(n, n));
    if (k == n) return Projection(ComplexMatrix::Identity(n, n));

    // Retry with a derived seed in the (measure-zero) event of a rank-deficient
    // Gaussian sample.
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        GaussianSampler sampler(seed + 0x9e3779b97f4a7c15ull * attempt);
        ComplexMatrix g = sampler.complex_matrix(n, k);
        Eigen::JacobiSVD<ComplexMatrix> svd(g);
        if (svd.singularValues()(k - 1) < 1e-6 * svd.singularValues()(0)) continue;
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix thin_q =
            qr.householderQ() * ComplexMatrix::Identity(n, k);
        ComplexMatrix pm = thin_q * thin_q.adjoint();
        pm = 0.5 * (pm + pm.adjoint().eval());
        ToleranceConfig strict;
        strict.residual_tol = 1e-12;
        return Projection(std::move(pm), strict);
    }
    throw Error("random_projection: repeated rank-deficient samples");
}

}  // namespace projgeom
