#include "projgeom/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace projgeom {

double Subspace::orthonormality_residual() const {
    if (dim() == 0) return 0.0;
    ComplexMatrix gram = basis.adjoint() * basis;
    gram -= ComplexMatrix::Identity(dim(), dim());
    return spectral_norm(gram);
}

bool is_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw NotHermitianError("hermitian_eigen: matrix not square");
    const double herm_residual = spectral_norm(m - m.adjoint());
    if (herm_residual > tol.residual_tol) {
        throw NotHermitianError("hermitian_eigen: anti-Hermitian part has norm " +
                                std::to_string(herm_residual));
    }
    // Work on the Hermitian part so the decomposition is well defined even
    // for inputs that only pass the residual gate.
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix solve_inverse(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw SingularError("solve_inverse: matrix not square", 0.0);
    const Eigen::Index n = m.rows();
    if (n == 0) return ComplexMatrix(0, 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smallest = sv(n - 1);
    if (smallest <= 0.0 || smallest < tol.inv_tol * sv(0)) {
        throw SingularError("solve_inverse: smallest singular value " +
                                std::to_string(smallest),
                            smallest);
    }
    return svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

namespace {

// Right singular vectors split by the relative cutoff: columns below go to
// the kernel, the rest span the orthogonal complement (the row space).
std::pair<Subspace, Subspace> kernel_split(const ComplexMatrix& m, const ToleranceConfig& tol) {
    const Eigen::Index n = m.cols();
    if (n == 0) return {Subspace::empty(0), Subspace::empty(0)};
    if (m.rows() == 0) return {Subspace::full(n), Subspace::empty(n)};
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = tol.rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    Subspace kernel{n, svd.matrixV().rightCols(n - rank)};
    Subspace corange{n, svd.matrixV().leftCols(rank)};
    return {std::move(kernel), std::move(corange)};
}

}  // namespace

Subspace kernel_basis(const ComplexMatrix& m, const ToleranceConfig& tol) {
    return kernel_split(m, tol).first;
}

Subspace range_basis(const ComplexMatrix& m, const ToleranceConfig& tol) {
    const Eigen::Index rows = m.rows();
    if (rows == 0 || m.cols() == 0) return Subspace::empty(rows);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = tol.rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return Subspace{rows, svd.matrixU().leftCols(rank)};
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const ToleranceConfig& tol) {
    if (a.ambient_dim != b.ambient_dim) {
        throw BadArgumentsError("subspace_intersection: ambient dimensions differ");
    }
    const Eigen::Index n = a.ambient_dim;
    if (a.dim() == 0 || b.dim() == 0) return Subspace::empty(n);
    // Singular values of A*B are the principal angle cosines; directions at
    // cosine >= 1 - rank_tol lie in both subspaces.
    ComplexMatrix overlap = a.basis.adjoint() * b.basis;
    Eigen::JacobiSVD<ComplexMatrix> svd(overlap, Eigen::ComputeFullU);
    const Eigen::VectorXd& cosines = svd.singularValues();
    Eigen::Index count = 0;
    while (count < cosines.size() && cosines(count) >= 1.0 - tol.rank_tol) ++count;
    return Subspace{n, a.basis * svd.matrixU().leftCols(count)};
}

ComplexMatrix projector_of(const Subspace& s) {
    if (s.dim() == 0) return ComplexMatrix::Zero(s.ambient_dim, s.ambient_dim);
    return s.basis * s.basis.adjoint();
}

Subspace complement_subspace(const Subspace& s, const ToleranceConfig& tol) {
    if (s.dim() == 0) return Subspace::full(s.ambient_dim);
    return kernel_basis(s.basis.adjoint(), tol);
}

}  // namespace projgeom
