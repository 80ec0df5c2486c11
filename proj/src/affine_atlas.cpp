#include "projgeom/affine_atlas.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "projgeom/errors.hpp"

namespace projgeom {

void ChartIndex::validate() const {
    if (n < 0) throw BadArgumentsError("chart index: negative dimension");
    Eigen::Index prev = 0;
    for (Eigen::Index i : indices) {
        if (i < 1 || i > n)
            throw BadArgumentsError("chart index: entry " + std::to_string(i) +
                                    " outside 1.." + std::to_string(n));
        if (i <= prev) throw BadArgumentsError("chart index: entries must increase strictly");
        prev = i;
    }
}

std::vector<Eigen::Index> ChartIndex::complement() const {
    std::vector<Eigen::Index> out;
    out.reserve(static_cast<std::size_t>(n - k()));
    std::size_t at = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (at < indices.size() && indices[at] == i) {
            ++at;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

Projection standard_projection(const ChartIndex& i) {
    i.validate();
    ComplexMatrix m = ComplexMatrix::Zero(i.n, i.n);
    for (Eigen::Index j : i.indices) m(j - 1, j - 1) = 1.0;
    return Projection(std::move(m));
}

Projection projection_from_frame(const ComplexMatrix& l, const ToleranceConfig& tol) {
    tol.validate();
    if (!is_finite(l)) throw BadArgumentsError("projection_from_frame: non-finite entries");
    const Eigen::Index n = l.rows();
    const Eigen::Index k = l.cols();
    if (k == 0) return Projection(ComplexMatrix::Zero(n, n), tol);
    if (k > n)
        throw FrameDeficientError("projection_from_frame: more columns than rows");
    Eigen::JacobiSVD<ComplexMatrix> svd(l, Eigen::ComputeThinU);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(k - 1);
    if (smax <= 0.0 || smin < tol.inv_tol * smax)
        throw FrameDeficientError("projection_from_frame: smallest singular value " +
                                  std::to_string(smin) + " below the invertibility cutoff");
    ComplexMatrix u = svd.matrixU();
    ComplexMatrix pm = u * u.adjoint();
    pm = 0.5 * (pm + pm.adjoint().eval());
    return Projection(std::move(pm), tol);
}

ComplexMatrix pivot_frame(const ChartIndex& i, const ComplexMatrix& a) {
    i.validate();
    const Eigen::Index k = i.k();
    if (a.rows() != i.n - k || a.cols() != k)
        throw BadArgumentsError("pivot_frame: coordinate block must be (n-k) x k");
    ComplexMatrix l = ComplexMatrix::Zero(i.n, k);
    for (Eigen::Index j = 0; j < k; ++j) l(i.indices[static_cast<std::size_t>(j)] - 1, j) = 1.0;
    std::vector<Eigen::Index> rest = i.complement();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        l.row(rest[static_cast<std::size_t>(r)] - 1) = a.row(r);
    return l;
}

ComplexMatrix classical_affine_coords(const Projection& q, const ChartIndex& i,
                                      const ToleranceConfig& tol) {
    tol.validate();
    i.validate();
    if (q.dim() != i.n)
        throw BadArgumentsError("classical_affine_coords: dimension mismatch");
    Projection p = standard_projection(i);
    double gap = spectral_norm(ComplexMatrix(q.matrix() - p.matrix()));
    if (gap >= 1.0)
        throw NotInChartError("classical_affine_coords: ||q - p_I|| = " + std::to_string(gap));

    ComplexMatrix s = q.matrix() + p.matrix();
    s.diagonal().array() -= 1.0;
    ComplexMatrix sinv = solve_inverse(s, tol);
    ComplexMatrix r = q.matrix() * sinv * sinv * p.matrix();

    const Eigen::Index k = i.k();
    ComplexMatrix minor(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            minor(a, b) = r(i.indices[static_cast<std::size_t>(a)] - 1,
                            i.indices[static_cast<std::size_t>(b)] - 1);
    minor.diagonal().array() -= 1.0;
    double res = spectral_norm(minor);
    if (res > tol.residual_tol)
        throw Error("classical_affine_coords: pivot minor differs from identity by " +
                    std::to_string(res));

    std::vector<Eigen::Index> rest = i.complement();
    ComplexMatrix coords(i.n - k, k);
    for (Eigen::Index a = 0; a < i.n - k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            coords(a, b) =
                r(rest[static_cast<std::size_t>(a)] - 1, i.indices[static_cast<std::size_t>(b)] - 1);
    return coords;
}

ChartIndex chart_select(const Projection& q, const ToleranceConfig& tol) {
    tol.validate();
    const Eigen::Index n = q.dim();
    const Eigen::Index k = q.rank();
    ChartIndex out;
    out.n = n;
    if (k == 0) return out;

    // Greedy row pivoting: repeatedly take the row with the largest component
    // orthogonal to the rows already chosen.
    ComplexMatrix rows = range_basis(q.matrix(), tol).basis;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index step = 0; step < k; ++step) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            double nrm = rows.row(i).norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = i;
            }
        }
        if (best < 0 || best_norm <= 0.0)
            throw Error("chart_select: ran out of independent rows");
        used[static_cast<std::size_t>(best)] = true;
        out.indices.push_back(best + 1);
        Eigen::RowVectorXcd pivot = rows.row(best) / best_norm;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            Complex coeff = pivot.dot(rows.row(i));
            rows.row(i) -= coeff * pivot;
        }
    }
    std::sort(out.indices.begin(), out.indices.end());
    out.validate();

    double gap = spectral_norm(ComplexMatrix(q.matrix() - standard_projection(out).matrix()));
    if (gap >= 1.0)
        throw Error("chart_select: selected chart does not cover q, gap " + std::to_string(gap));
    return out;
}

ChartIndex chart_select_exhaustive(const Projection& q, const ToleranceConfig& tol) {
    tol.validate();
    const Eigen::Index n = q.dim();
    if (n > 8)
        throw BadArgumentsError("chart_select_exhaustive: restricted to n <= 8");
    const Eigen::Index k = q.rank();
    ChartIndex out;
    out.n = n;
    if (k == 0) return out;

    ComplexMatrix frame = range_basis(q.matrix(), tol).basis;
    std::vector<Eigen::Index> subset(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) subset[static_cast<std::size_t>(j)] = j + 1;
    double best = -1.0;

    // Lexicographic enumeration of k-subsets; strict improvement keeps the
    // lexicographically smallest maximizer.
    while (true) {
        ComplexMatrix minor(k, k);
        for (Eigen::Index a = 0; a < k; ++a)
            minor.row(a) = frame.row(subset[static_cast<std::size_t>(a)] - 1);
        Eigen::JacobiSVD<ComplexMatrix> svd(minor);
        double smin = svd.singularValues()(k - 1);
        if (smin > best) {
            best = smin;
            out.indices = subset;
        }
        // advance
        Eigen::Index pos = k - 1;
        while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++subset[static_cast<std::size_t>(pos)];
        for (Eigen::Index j = pos + 1; j < k; ++j)
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    out.validate();
    return out;
}

AffineCoordinates::AffineCoordinates(Projection basepoint, ComplexMatrix x,
                                     const ToleranceConfig& tol)
    : basepoint_(std::move(basepoint)), x_(std::move(x)) {
    tol.validate();
    if (x_.rows() != basepoint_.dim() || x_.cols() != basepoint_.dim())
        throw BadArgumentsError("affine coordinates: shape mismatch with basepoint");
    if (!is_finite(x_)) throw BadArgumentsError("affine coordinates: non-finite entries");
    const ComplexMatrix& pm = basepoint_.matrix();
    ComplexMatrix corner = x_ * pm - pm * (x_ * pm);
    double res = spectral_norm(ComplexMatrix(x_ - corner));
    if (res > 1e-10)
        throw BadArgumentsError("affine coordinates: x is not in the corner space, residual " +
                                std::to_string(res));
}

AffineCoordinates phi(const Projection& p, const Projection& q, const ToleranceConfig& tol) {
    tol.validate();
    if (p.dim() != q.dim()) throw BadArgumentsError("phi: dimension mismatch");
    double gap = spectral_norm(ComplexMatrix(p.matrix() - q.matrix()));
    if (gap >= 1.0)
        throw NotInBallError("phi: ||p - q|| = " + std::to_string(gap) + " is not below 1");

    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    ComplexMatrix sinv = solve_inverse(s, tol);
    ComplexMatrix x = q.matrix() * sinv * sinv * p.matrix() - p.matrix();
    // Exact corner projection; the formula lands there up to roundoff.
    x = x * p.matrix() - p.matrix() * (x * p.matrix());
    return AffineCoordinates(p, std::move(x), tol);
}

Projection phi_inverse(const AffineCoordinates& coords, const ToleranceConfig& tol) {
    tol.validate();
    const ComplexMatrix& pm = coords.basepoint().matrix();
    const ComplexMatrix& x = coords.x();
    const Eigen::Index n = pm.rows();
    if (n == 0) return coords.basepoint();

    ComplexMatrix m = x.adjoint() * x;
    m.diagonal().array() += 1.0;
    ComplexMatrix px = pm + x;
    // 1 + x*x is positive definite, so the map is total.
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw Error("phi_inverse: Cholesky factorization failed");
    ComplexMatrix qm = px * llt.solve(px.adjoint());
    qm = 0.5 * (qm + qm.adjoint().eval());
    Projection q(std::move(qm), tol);

    double gap = spectral_norm(ComplexMatrix(q.matrix() - pm));
    if (gap >= 1.0)
        throw Error("phi_inverse: result left the unit ball, gap " + std::to_string(gap));
    return q;
}

AffineCoordinates chart_transition(const AffineCoordinates& coords, const Projection& p2,
                                   const ToleranceConfig& tol) {
    tol.validate();
    if (p2.dim() != coords.basepoint().dim())
        throw BadArgumentsError("chart_transition: dimension mismatch");
    Projection q = phi_inverse(coords, tol);
    double gap = spectral_norm(ComplexMatrix(q.matrix() - p2.matrix()));
    if (gap >= 1.0)
        throw NotInOverlapError("chart_transition: ||q - p2|| = " + std::to_string(gap));
    return phi(p2, q, tol);
}

std::optional<ChartIndex> as_standard_chart(const Projection& p) {
    const Eigen::Index n = p.dim();
    ChartIndex out;
    out.n = n;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex v = p.matrix()(i, j);
            if (i == j) {
                if (std::abs(v - 1.0) <= 1e-12) {
                    out.indices.push_back(i + 1);
                } else if (std::abs(v) > 1e-12) {
                    return std::nullopt;
                }
            } else if (std::abs(v) > 1e-12) {
                return std::nullopt;
            }
        }
    }
    return out;
}

}  // namespace projgeom
