#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "projgeom/tolerance.hpp"

namespace projgeom {

using Complex = std::complex<double>;

/// Dense complex matrix, the carrier for every operator in the library.
using ComplexMatrix = Eigen::MatrixXcd;

/// A subspace of C^n given by an orthonormal column basis (n x d, d possibly 0).
struct Subspace {
    Eigen::Index ambient_dim = 0;
    ComplexMatrix basis;

    Eigen::Index dim() const { return basis.cols(); }

    /// ||basis* basis - I||, zero for the empty subspace.
    double orthonormality_residual() const;

    static Subspace empty(Eigen::Index n) {
        return Subspace{n, ComplexMatrix::Zero(n, 0)};
    }
    static Subspace full(Eigen::Index n) {
        return Subspace{n, ComplexMatrix::Identity(n, n)};
    }
};

bool is_finite(const ComplexMatrix& m);

/// Largest singular value. Zero for empty matrices.
double spectral_norm(const ComplexMatrix& m);

struct HermitianEigen {
    Eigen::VectorXd values;   // ascending
    ComplexMatrix vectors;    // unitary, columns match values
};

/// Eigendecomposition of a Hermitian matrix; rejects inputs whose
/// anti-Hermitian part exceeds residual_tol.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Inverse of a square matrix through its SVD; throws SingularError when the
/// smallest singular value falls under inv_tol relative to the largest.
ComplexMatrix solve_inverse(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Orthonormal basis of {x : ||m x|| <= rank_tol ||m|| ||x||}.
Subspace kernel_basis(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Orthonormal basis of the column space (singular values above the cutoff).
Subspace range_basis(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Intersection computed through principal angles: directions whose angle
/// cosine reaches 1 - rank_tol are kept.
Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const ToleranceConfig& tol = {});

/// basis * basis*, the orthogonal projector onto the subspace.
ComplexMatrix projector_of(const Subspace& s);

/// Orthonormal basis of the orthogonal complement within C^n.
Subspace complement_subspace(const Subspace& s, const ToleranceConfig& tol = {});

}  // namespace projgeom
