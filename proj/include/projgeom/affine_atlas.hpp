#pragma once

#include <optional>
#include <vector>

#include "projgeom/numeric.hpp"
#include "projgeom/projection.hpp"

namespace projgeom {

/// A k-subset of {1..n} naming the rows that carry the identity minor of a
/// classical Grassmannian chart. Indices are 1-based and strictly increasing.
struct ChartIndex {
    Eigen::Index n = 0;
    std::vector<Eigen::Index> indices;

    void validate() const;
    Eigen::Index k() const { return static_cast<Eigen::Index>(indices.size()); }
    std::vector<Eigen::Index> complement() const;
};

/// The diagonal projection onto the coordinate subspace named by i.
Projection standard_projection(const ChartIndex& i);

/// Orthogonal projection onto the column span of a left-invertible frame.
Projection projection_from_frame(const ComplexMatrix& l, const ToleranceConfig& tol = {});

/// The n x k frame whose I-minor is the identity and whose remaining rows
/// hold the coordinate block a ((n-k) x k, complementary rows in order).
ComplexMatrix pivot_frame(const ChartIndex& i, const ComplexMatrix& a);

/// Affine coordinates of q in the classical chart at p_I: the unique
/// (n-k) x k block A with span of pivot_frame(i, A) = Im q. Requires
/// ||q - p_I|| < 1.
ComplexMatrix classical_affine_coords(const Projection& q, const ChartIndex& i,
                                      const ToleranceConfig& tol = {});

/// Chart containing q, found by greedy row pivoting on an orthonormal frame
/// of Im q; ties prefer the smaller row index, and the result is sorted.
ChartIndex chart_select(const Projection& q, const ToleranceConfig& tol = {});

/// Exhaustive oracle over all k-subsets, maximizing the smallest singular
/// value of the minor, lexicographically smallest on ties. Restricted to
/// n <= 8.
ChartIndex chart_select_exhaustive(const Projection& q, const ToleranceConfig& tol = {});

/// An element x of the corner space p^perp M p, stored as a full ambient
/// matrix together with its basepoint.
class AffineCoordinates {
public:
    AffineCoordinates(Projection basepoint, ComplexMatrix x, const ToleranceConfig& tol = {});

    const Projection& basepoint() const { return basepoint_; }
    const ComplexMatrix& x() const { return x_; }

private:
    Projection basepoint_;
    ComplexMatrix x_;
};

/// Chart map at p: x = q(p+q-1)^{-2} p - p, an element of p^perp M p.
/// Requires ||p - q|| < 1.
AffineCoordinates phi(const Projection& p, const Projection& q,
                      const ToleranceConfig& tol = {});

/// Rational inverse of phi: q = (p+x)(1+x*x)^{-1}(p+x)*. Defined for every
/// x in the corner space.
Projection phi_inverse(const AffineCoordinates& coords, const ToleranceConfig& tol = {});

/// Coordinates of the same subspace in the chart at p2. Requires
/// phi_inverse(coords) to lie in the unit ball around p2.
AffineCoordinates chart_transition(const AffineCoordinates& coords, const Projection& p2,
                                   const ToleranceConfig& tol = {});

/// The chart index when p is exactly a standard coordinate projection,
/// std::nullopt otherwise.
std::optional<ChartIndex> as_standard_chart(const Projection& p);

}  // namespace projgeom
