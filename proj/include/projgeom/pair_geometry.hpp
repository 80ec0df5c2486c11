#pragma once

#include <utility>
#include <vector>

#include "projgeom/numeric.hpp"
#include "projgeom/projection.hpp"

namespace projgeom {

/// Five-way orthogonal splitting induced by a pair of projections: the four
/// intersection subspaces of ranges and kernels plus the generic remainder,
/// on which the pair is in general position.
struct PairDecomposition {
    Subspace m11;      // Im p ∩ Im q
    Subspace m00;      // Ker p ∩ Ker q
    Subspace m10;      // Im p ∩ Ker q
    Subspace m01;      // Ker p ∩ Im q
    Subspace generic;  // orthocomplement of the four
};

PairDecomposition pair_decompose(const Projection& p, const Projection& q,
                                 const ToleranceConfig& tol = {});

/// Dimensions of Ker(p+q-1), Ker(p-q) and Ker(pq-qp). The third always
/// equals the sum of the first two.
struct KernelDimensionReport {
    Eigen::Index d_sum;
    Eigen::Index d_diff;
    Eigen::Index d_comm;
};

KernelDimensionReport kernel_dimension_report(const Projection& p, const Projection& q,
                                              const ToleranceConfig& tol = {});

struct HalmosDims {
    Eigen::Index d11;
    Eigen::Index d00;
    Eigen::Index d10;
    Eigen::Index d01;
    Eigen::Index generic;  // twice the number of angle blocks
};

/// Simultaneous canonical form of a projection pair: in the unitary basis u,
/// p and q are block diagonal with scalar blocks on the four intersection
/// parts and one 2x2 block per angle on the generic part,
///   p_block = [[1,0],[0,0]],   q_block = [[c^2, cs],[cs, s^2]],
/// where c = cos(theta), s = sin(theta). Column order of u: m11, m00, m10,
/// m01, then (v_i, w_i) per angle with angles ascending.
struct HalmosForm {
    ComplexMatrix u;
    std::vector<double> angles;  // each in (0, pi/2), ascending
    HalmosDims dims;
};

HalmosForm halmos_form(const Projection& p, const Projection& q,
                       const ToleranceConfig& tol = {});

/// Rebuild the pair from its canonical form. Round-trips halmos_form within
/// 1e-8.
std::pair<Projection, Projection> halmos_reconstruct(const HalmosForm& h,
                                                     const ToleranceConfig& tol = {});

/// Midpoint projection for a pair with p+q-1 injective, together with the
/// self-adjoint involution exchanging p and q and fixing the midpoint.
struct GenericMidpoint {
    Projection r;
    ComplexMatrix involution;
};

GenericMidpoint generic_midpoint_with_involution(const Projection& p, const Projection& q,
                                                 const ToleranceConfig& tol = {});

/// Per generic 2x2 block r = [[(1+c)/2, s/2],[s/2, (1-c)/2]]; identity on
/// m11, zero on m00. Both distances to p and q are at most 1/sqrt(2).
/// Throws SumNotInjectiveError when m10 or m01 is nonempty.
Projection generic_midpoint(const Projection& p, const Projection& q,
                            const ToleranceConfig& tol = {});

/// Midpoint for a pair of orthogonal equal-rank projections: with u a partial
/// isometry from Im q0 onto Im p0, r = (pi + u + u*)/2 where pi = p0 + q0.
/// The distances to p0 and q0 both equal 1/sqrt(2) exactly (when nonzero).
Projection complementary_midpoint(const Projection& p0, const Projection& q0,
                                  const ToleranceConfig& tol = {});

/// A projection r with max(||p-r||, ||q-r||) <= 1/sqrt(2), existing whenever
/// rank p = rank q. Splits off pi = projector onto Ker(p+q-1), applies the
/// complementary midpoint there and the generic midpoint on the rest.
Projection find_common_ball(const Projection& p, const Projection& q,
                            const ToleranceConfig& tol = {});

}  // namespace projgeom
