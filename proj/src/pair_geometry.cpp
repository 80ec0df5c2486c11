#include "projgeom/pair_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "projgeom/errors.hpp"

namespace projgeom {

namespace {

ComplexMatrix complement_matrix(const ComplexMatrix& m) {
    ComplexMatrix c = -m;
    c.diagonal().array() += 1.0;
    return c;
}

Subspace orthocomplement_of_columns(Eigen::Index n, const ComplexMatrix& w,
                                    const ToleranceConfig& tol) {
    if (w.cols() == 0) return Subspace::full(n);
    return kernel_basis(ComplexMatrix(w.adjoint()), tol);
}

void validate_decomposition(const PairDecomposition& d, Eigen::Index n) {
    Eigen::Index total = d.m11.dim() + d.m00.dim() + d.m10.dim() + d.m01.dim() + d.generic.dim();
    if (total != n)
        throw Error("pair_decompose: parts span dimension " + std::to_string(total) +
                    " of " + std::to_string(n));
    ComplexMatrix w(n, n);
    Eigen::Index at = 0;
    for (const Subspace* s : {&d.m11, &d.m00, &d.m10, &d.m01, &d.generic}) {
        w.middleCols(at, s->dim()) = s->basis;
        at += s->dim();
    }
    ComplexMatrix gram = w.adjoint() * w;
    gram.diagonal().array() -= 1.0;
    double res = spectral_norm(gram);
    if (res > 1e-10)
        throw Error("pair_decompose: parts are not orthonormal, residual " +
                    std::to_string(res));
}

// Canonical block-diagonal pair determined by the dimension counts and
// angles, in the column order used throughout: m11, m00, m10, m01, generic.
std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(const HalmosDims& dims,
                                                       const std::vector<double>& angles) {
    Eigen::Index n = dims.d11 + dims.d00 + dims.d10 + dims.d01 + dims.generic;
    ComplexMatrix pc = ComplexMatrix::Zero(n, n);
    ComplexMatrix qc = ComplexMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < dims.d11; ++i, ++at) {
        pc(at, at) = 1.0;
        qc(at, at) = 1.0;
    }
    at += dims.d00;
    for (Eigen::Index i = 0; i < dims.d10; ++i, ++at) pc(at, at) = 1.0;
    for (Eigen::Index i = 0; i < dims.d01; ++i, ++at) qc(at, at) = 1.0;
    for (double theta : angles) {
        double c = std::cos(theta);
        double s = std::sin(theta);
        pc(at, at) = 1.0;
        qc(at, at) = c * c;
        qc(at, at + 1) = c * s;
        qc(at + 1, at) = c * s;
        qc(at + 1, at + 1) = s * s;
        at += 2;
    }
    return {std::move(pc), std::move(qc)};
}

void validate_form(const HalmosForm& h) {
    Eigen::Index n = h.u.rows();
    if (h.u.cols() != n) throw BadArgumentsError("halmos form: u must be square");
    Eigen::Index total = h.dims.d11 + h.dims.d00 + h.dims.d10 + h.dims.d01 + h.dims.generic;
    if (total != n || h.dims.generic != 2 * static_cast<Eigen::Index>(h.angles.size()))
        throw BadArgumentsError("halmos form: dimension counts do not match");
    ComplexMatrix gram = h.u.adjoint() * h.u;
    gram.diagonal().array() -= 1.0;
    double res = spectral_norm(gram);
    if (res > 1e-10)
        throw Error("halmos form: u is not unitary, residual " + std::to_string(res));
    for (double theta : h.angles)
        if (!(theta > 0.0 && theta < 1.5707963267948966))
            throw BadArgumentsError("halmos form: angle outside (0, pi/2)");
}

// Column permutation putting the largest canonical-basis overlap first;
// ties keep the original order.
ComplexMatrix order_columns_by_overlap(const ComplexMatrix& b) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(b.cols()));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> overlap(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        overlap[j] = b.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff();
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Eigen::Index a, Eigen::Index c) { return overlap[a] > overlap[c]; });
    ComplexMatrix out(b.rows(), b.cols());
    for (std::size_t j = 0; j < idx.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = b.col(idx[j]);
    return out;
}

}  // namespace

PairDecomposition pair_decompose(const Projection& p, const Projection& q,
                                 const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("pair_decompose: dimension mismatch");
    const Eigen::Index n = p.dim();

    Subspace im_p = range_basis(p.matrix(), tol);
    Subspace ker_p = kernel_basis(p.matrix(), tol);
    Subspace im_q = range_basis(q.matrix(), tol);
    Subspace ker_q = kernel_basis(q.matrix(), tol);

    PairDecomposition d;
    d.m11 = subspace_intersection(im_p, im_q, tol);
    d.m00 = subspace_intersection(ker_p, ker_q, tol);
    d.m10 = subspace_intersection(im_p, ker_q, tol);
    d.m01 = subspace_intersection(ker_p, im_q, tol);

    Eigen::Index deg = d.m11.dim() + d.m00.dim() + d.m10.dim() + d.m01.dim();
    ComplexMatrix stacked(n, deg);
    Eigen::Index at = 0;
    for (const Subspace* s : {&d.m11, &d.m00, &d.m10, &d.m01}) {
        stacked.middleCols(at, s->dim()) = s->basis;
        at += s->dim();
    }
    d.generic = orthocomplement_of_columns(n, stacked, tol);

    validate_decomposition(d, n);

    // The two kernel identities tying the parts to p+q-1 and p-q.
    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    Eigen::Index dim_sum = kernel_basis(s, tol).dim();
    Eigen::Index dim_diff = kernel_basis(ComplexMatrix(p.matrix() - q.matrix()), tol).dim();
    if (d.m10.dim() + d.m01.dim() != dim_sum)
        throw Error("pair_decompose: m10 + m01 does not match Ker(p+q-1)");
    if (d.m11.dim() + d.m00.dim() != dim_diff)
        throw Error("pair_decompose: m11 + m00 does not match Ker(p-q)");
    return d;
}

KernelDimensionReport kernel_dimension_report(const Projection& p, const Projection& q,
                                              const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim())
        throw BadArgumentsError("kernel_dimension_report: dimension mismatch");
    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    ComplexMatrix diff = p.matrix() - q.matrix();
    ComplexMatrix comm = p.matrix() * q.matrix() - q.matrix() * p.matrix();
    KernelDimensionReport rep{};
    rep.d_sum = kernel_basis(s, tol).dim();
    rep.d_diff = kernel_basis(diff, tol).dim();
    rep.d_comm = kernel_basis(comm, tol).dim();
    return rep;
}

HalmosForm halmos_form(const Projection& p, const Projection& q, const ToleranceConfig& tol) {
    PairDecomposition d = pair_decompose(p, q, tol);
    const Eigen::Index n = p.dim();
    const ComplexMatrix& qm = q.matrix();

    std::vector<ComplexMatrix> extra11, extra00, extra10, extra01;
    std::vector<std::pair<double, std::pair<ComplexMatrix, ComplexMatrix>>> blocks;

    if (d.generic.dim() > 0) {
        const ComplexMatrix& bg = d.generic.basis;  // n x 2g
        ComplexMatrix pg = bg.adjoint() * p.matrix() * bg;
        Subspace range_pg = range_basis(pg, tol);
        // Compression of q to the generic range of p; eigenvalues are cos^2
        // of the angles.
        ComplexMatrix lift = bg * range_pg.basis;  // ambient, orthonormal columns
        ComplexMatrix compression = lift.adjoint() * qm * lift;
        HermitianEigen eig = hermitian_eigen(compression, tol);

        // Ascending angles need descending eigenvalues.
        for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
            double lam = std::clamp(eig.values(i), 0.0, 1.0);
            ComplexMatrix v = lift * eig.vectors.col(i);
            ComplexMatrix w_raw = qm * v - lam * v;
            double w_norm = std::sqrt(w_raw.squaredNorm());
            // Eigenvalues at the ends of [0,1] belong to the intersection
            // parts, not to an angle block; split the pair accordingly.
            if (lam >= 1.0 - tol.rank_tol || lam <= tol.rank_tol) {
                if (w_norm < 1e-15)
                    throw Error("halmos_form: degenerate generic block");
                ComplexMatrix w = w_raw / w_norm;
                if (lam >= 0.5) {
                    extra11.push_back(std::move(v));
                    extra00.push_back(std::move(w));
                } else {
                    extra10.push_back(std::move(v));
                    extra01.push_back(std::move(w));
                }
                continue;
            }
            ComplexMatrix w = w_raw / w_norm;
            double c = std::sqrt(lam);
            blocks.push_back({std::acos(c), {std::move(v), std::move(w)}});
        }
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (2 * (range_pg.dim()) != d.generic.dim())
            throw Error("halmos_form: generic part is not evenly split by p");
    }

    HalmosForm h;
    h.dims.d11 = d.m11.dim() + static_cast<Eigen::Index>(extra11.size());
    h.dims.d00 = d.m00.dim() + static_cast<Eigen::Index>(extra00.size());
    h.dims.d10 = d.m10.dim() + static_cast<Eigen::Index>(extra10.size());
    h.dims.d01 = d.m01.dim() + static_cast<Eigen::Index>(extra01.size());
    h.dims.generic = 2 * static_cast<Eigen::Index>(blocks.size());

    h.u.resize(n, n);
    Eigen::Index at = 0;
    auto put_part = [&](const Subspace& s, const std::vector<ComplexMatrix>& extra) {
        h.u.middleCols(at, s.dim()) = s.basis;
        at += s.dim();
        for (const ComplexMatrix& col : extra) h.u.col(at++) = col;
    };
    put_part(d.m11, extra11);
    put_part(d.m00, extra00);
    put_part(d.m10, extra10);
    put_part(d.m01, extra01);
    for (auto& blk : blocks) {
        h.angles.push_back(blk.first);
        h.u.col(at++) = blk.second.first;
        h.u.col(at++) = blk.second.second;
    }

    validate_form(h);

    auto [pc, qc] = canonical_pair(h.dims, h.angles);
    double res_p = spectral_norm(ComplexMatrix(h.u * pc * h.u.adjoint() - p.matrix()));
    double res_q = spectral_norm(ComplexMatrix(h.u * qc * h.u.adjoint() - qm));
    if (res_p > 1e-8 || res_q > 1e-8)
        throw Error("halmos_form: reconstruction residual " +
                    std::to_string(std::max(res_p, res_q)) + " exceeds 1e-8");
    return h;
}

std::pair<Projection, Projection> halmos_reconstruct(const HalmosForm& h,
                                                     const ToleranceConfig& tol) {
    tol.validate();
    validate_form(h);
    auto [pc, qc] = canonical_pair(h.dims, h.angles);
    ComplexMatrix pm = h.u * pc * h.u.adjoint();
    ComplexMatrix qm = h.u * qc * h.u.adjoint();
    pm = 0.5 * (pm + pm.adjoint().eval());
    qm = 0.5 * (qm + qm.adjoint().eval());
    return {Projection(std::move(pm), tol), Projection(std::move(qm), tol)};
}

GenericMidpoint generic_midpoint_with_involution(const Projection& p, const Projection& q,
                                                 const ToleranceConfig& tol) {
    HalmosForm h = halmos_form(p, q, tol);
    if (h.dims.d10 > 0 || h.dims.d01 > 0)
        throw SumNotInjectiveError("generic_midpoint: p+q-1 has kernel of dimension " +
                                   std::to_string(h.dims.d10 + h.dims.d01));
    const Eigen::Index n = p.dim();
    ComplexMatrix rc = ComplexMatrix::Zero(n, n);
    ComplexMatrix tc = ComplexMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < h.dims.d11; ++i, ++at) {
        rc(at, at) = 1.0;
        tc(at, at) = 1.0;
    }
    for (Eigen::Index i = 0; i < h.dims.d00; ++i, ++at) tc(at, at) = 1.0;
    for (double theta : h.angles) {
        double c = std::cos(theta);
        double s = std::sin(theta);
        rc(at, at) = 0.5 * (1.0 + c);
        rc(at, at + 1) = 0.5 * s;
        rc(at + 1, at) = 0.5 * s;
        rc(at + 1, at + 1) = 0.5 * (1.0 - c);
        tc(at, at) = c;
        tc(at, at + 1) = s;
        tc(at + 1, at) = s;
        tc(at + 1, at + 1) = -c;
        at += 2;
    }
    ComplexMatrix rm = h.u * rc * h.u.adjoint();
    rm = 0.5 * (rm + rm.adjoint().eval());
    ComplexMatrix tau = h.u * tc * h.u.adjoint();
    tau = 0.5 * (tau + tau.adjoint().eval());

    GenericMidpoint out{Projection(std::move(rm), tol), std::move(tau)};

    const double bound = 1.0 / std::sqrt(2.0) + 1e-8;
    double dp = spectral_norm(ComplexMatrix(p.matrix() - out.r.matrix()));
    double dq = spectral_norm(ComplexMatrix(q.matrix() - out.r.matrix()));
    if (dp > bound || dq > bound)
        throw Error("generic_midpoint: distance " + std::to_string(std::max(dp, dq)) +
                    " exceeds 1/sqrt(2)");

    ComplexMatrix tau_sq = out.involution * out.involution;
    tau_sq.diagonal().array() -= 1.0;
    if (spectral_norm(tau_sq) > 1e-10)
        throw Error("generic_midpoint: involution fails tau^2 = 1");
    double conj_res =
        spectral_norm(ComplexMatrix(out.involution * p.matrix() * out.involution - q.matrix()));
    if (conj_res > 1e-8)
        throw Error("generic_midpoint: involution fails tau p tau = q, residual " +
                    std::to_string(conj_res));
    double comm_res =
        spectral_norm(ComplexMatrix(out.involution * out.r.matrix() -
                                    out.r.matrix() * out.involution));
    if (comm_res > 1e-8)
        throw Error("generic_midpoint: involution does not fix the midpoint");
    return out;
}

Projection generic_midpoint(const Projection& p, const Projection& q,
                            const ToleranceConfig& tol) {
    return generic_midpoint_with_involution(p, q, tol).r;
}

Projection complementary_midpoint(const Projection& p0, const Projection& q0,
                                  const ToleranceConfig& tol) {
    tol.validate();
    if (p0.dim() != q0.dim())
        throw BadArgumentsError("complementary_midpoint: dimension mismatch");
    if (p0.rank() != q0.rank())
        throw RankMismatchError("complementary_midpoint: ranks " + std::to_string(p0.rank()) +
                                " and " + std::to_string(q0.rank()) + " differ");
    double cross = spectral_norm(ComplexMatrix(p0.matrix() * q0.matrix()));
    if (cross > 0.5 * tol.residual_tol)
        throw NotOrthogonalError("complementary_midpoint: ||p0 q0|| = " +
                                 std::to_string(cross));
    const Eigen::Index n = p0.dim();
    if (p0.rank() == 0) return Projection(ComplexMatrix::Zero(n, n), tol);

    ComplexMatrix pi = p0.matrix() + q0.matrix();
    pi = 0.5 * (pi + pi.adjoint().eval());

    ComplexMatrix bp = order_columns_by_overlap(range_basis(p0.matrix(), tol).basis);
    ComplexMatrix bq = order_columns_by_overlap(range_basis(q0.matrix(), tol).basis);
    ComplexMatrix u = bp * bq.adjoint();

    ComplexMatrix rm = 0.5 * (pi + u + u.adjoint());
    rm = 0.5 * (rm + rm.adjoint().eval());
    Projection r(std::move(rm), tol);

    const double half_sqrt2 = 1.0 / std::sqrt(2.0);
    double dp = spectral_norm(ComplexMatrix(r.matrix() - p0.matrix()));
    double dq = spectral_norm(ComplexMatrix(r.matrix() - q0.matrix()));
    if (std::abs(dp - half_sqrt2) > 1e-8 || std::abs(dq - half_sqrt2) > 1e-8)
        throw Error("complementary_midpoint: distances " + std::to_string(dp) + ", " +
                    std::to_string(dq) + " are not 1/sqrt(2)");
    return r;
}

Projection find_common_ball(const Projection& p, const Projection& q,
                            const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("find_common_ball: dimension mismatch");
    if (p.rank() != q.rank())
        throw RankMismatchError("find_common_ball: ranks " + std::to_string(p.rank()) +
                                " and " + std::to_string(q.rank()) + " differ");
    const Eigen::Index n = p.dim();

    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    Subspace ker_s = kernel_basis(s, tol);
    Subspace ran_s = range_basis(s, tol);
    const Eigen::Index k = ker_s.dim();

    ComplexMatrix rm = ComplexMatrix::Zero(n, n);
    if (k > 0) {
        // On Ker(p+q-1) the compressions are complementary: q0 = pi - p0.
        const ComplexMatrix& b = ker_s.basis;
        ComplexMatrix p0 = b.adjoint() * p.matrix() * b;
        ComplexMatrix q0 = b.adjoint() * q.matrix() * b;
        double comp_res = spectral_norm(ComplexMatrix(p0 + q0 - ComplexMatrix::Identity(k, k)));
        if (comp_res > tol.residual_tol)
            throw Error("find_common_ball: compressions to Ker(p+q-1) are not complementary");
        Projection r0 = complementary_midpoint(Projection(std::move(p0), tol),
                                               Projection(std::move(q0), tol), tol);
        rm += b * r0.matrix() * b.adjoint();
    }
    if (ran_s.dim() > 0) {
        const ComplexMatrix& b = ran_s.basis;
        ComplexMatrix p1 = b.adjoint() * p.matrix() * b;
        ComplexMatrix q1 = b.adjoint() * q.matrix() * b;
        Projection r1 = generic_midpoint(Projection(std::move(p1), tol),
                                         Projection(std::move(q1), tol), tol);
        rm += b * r1.matrix() * b.adjoint();
    }
    rm = 0.5 * (rm + rm.adjoint().eval());
    Projection r(std::move(rm), tol);

    const double bound = 1.0 / std::sqrt(2.0) + 1e-8;
    double dp = spectral_norm(ComplexMatrix(p.matrix() - r.matrix()));
    double dq = spectral_norm(ComplexMatrix(q.matrix() - r.matrix()));
    if (dp > bound || dq > bound)
        throw Error("find_common_ball: distance " + std::to_string(std::max(dp, dq)) +
                    " exceeds 1/sqrt(2)");
    return r;
}

}  // namespace projgeom
