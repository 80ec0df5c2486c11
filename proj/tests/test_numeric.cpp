#include <complex>

#include "doctest.h"
#include "projgeom/errors.hpp"
#include "projgeom/numeric.hpp"
#include "projgeom/rng.hpp"

using namespace projgeom;
using Complex = std::complex<double>;

namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    GaussianSampler g(seed);
    return g.complex_matrix(rows, cols);
}

}  // namespace

TEST_CASE("spectral norm matches the largest singular value from m*m") {
    ComplexMatrix m = random_matrix(7, 5, 11);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(m.adjoint() * m));
    double oracle = std::sqrt(es.eigenvalues().maxCoeff());
    CHECK(spectral_norm(m) == doctest::Approx(oracle).epsilon(1e-12));

    ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    CHECK(spectral_norm(zero) == 0.0);

    ComplexMatrix rank1(2, 2);
    rank1 << Complex(3, 0), Complex(0, 4), Complex(0, 0), Complex(0, 0);
    CHECK(spectral_norm(rank1) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("hermitian eigendecomposition returns ascending values and unitary vectors") {
    ComplexMatrix a = random_matrix(6, 6, 3);
    ComplexMatrix h = a + a.adjoint().eval();
    HermitianEigen eig = hermitian_eigen(h);
    for (Eigen::Index i = 1; i < eig.values.size(); ++i)
        CHECK(eig.values(i) >= eig.values(i - 1));
    ComplexMatrix reconstructed =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    CHECK(spectral_norm(ComplexMatrix(reconstructed - h)) < 1e-12);
    CHECK(spectral_norm(ComplexMatrix(eig.vectors.adjoint() * eig.vectors -
                                      ComplexMatrix::Identity(6, 6))) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    CHECK_THROWS_AS(hermitian_eigen(m), NotHermitianError);
}

TEST_CASE("solve_inverse inverts well-conditioned matrices and reports singular ones") {
    ComplexMatrix a = random_matrix(5, 5, 17);
    a += 3.0 * ComplexMatrix::Identity(5, 5);
    ComplexMatrix inv = solve_inverse(a);
    CHECK(spectral_norm(ComplexMatrix(a * inv - ComplexMatrix::Identity(5, 5))) < 1e-10);

    ComplexMatrix sing(2, 2);
    sing << Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0);
    CHECK_THROWS_AS(solve_inverse(sing), SingularError);
    try {
        solve_inverse(sing);
    } catch (const SingularError& e) {
        CHECK(e.smallest_singular_value == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("kernel and range bases are orthonormal and have complementary dimensions") {
    ComplexMatrix m = random_matrix(6, 4, 23);
    m.col(3) = m.col(0) + m.col(1);

    Subspace ker = kernel_basis(m);
    CHECK(ker.dim() == 1);
    CHECK(spectral_norm(ComplexMatrix(m * ker.basis)) < 1e-12);

    Subspace ran = range_basis(m);
    CHECK(ran.dim() == 3);
    CHECK(ran.orthonormality_residual() < 1e-12);
    // Every column of m lies in the computed range.
    ComplexMatrix resid = m - ran.basis * (ran.basis.adjoint() * m).eval();
    CHECK(spectral_norm(resid) < 1e-12);
}

TEST_CASE("kernel basis of an invertible matrix is empty") {
    ComplexMatrix a = ComplexMatrix::Identity(4, 4);
    CHECK(kernel_basis(a).dim() == 0);
    CHECK(range_basis(a).dim() == 4);
}

TEST_CASE("subspace intersection of coordinate planes") {
    ComplexMatrix a(3, 2);
    a.setZero();
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;  // span{e0, e1}
    ComplexMatrix b(3, 2);
    b.setZero();
    b(1, 0) = 1.0;
    b(2, 1) = 1.0;  // span{e1, e2}

    Subspace meet = subspace_intersection(Subspace{3, a}, Subspace{3, b});
    CHECK(meet.dim() == 1);
    CHECK(std::abs(std::abs(meet.basis(1, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(meet.basis(0, 0)) < 1e-12);
    CHECK(std::abs(meet.basis(2, 0)) < 1e-12);
}

TEST_CASE("subspace intersection of generic subspaces is trivial") {
    Subspace a = range_basis(random_matrix(5, 2, 31));
    Subspace b = range_basis(random_matrix(5, 2, 37));
    CHECK(subspace_intersection(a, b).dim() == 0);
}

TEST_CASE("projector_of builds the orthogonal projection onto a span") {
    ComplexMatrix v(2, 1);
    v << Complex(1, 0), Complex(1, 0);
    ComplexMatrix p = projector_of(range_basis(v));
    ComplexMatrix expected(2, 2);
    expected << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
    CHECK(spectral_norm(ComplexMatrix(p - expected)) < 1e-12);
}

TEST_CASE("complement_subspace is orthogonal and dimension-complementary") {
    Subspace s = range_basis(random_matrix(6, 2, 41));
    Subspace c = complement_subspace(s);
    CHECK(c.dim() == 4);
    CHECK(spectral_norm(ComplexMatrix(s.basis.adjoint() * c.basis)) < 1e-12);
    CHECK(c.orthonormality_residual() < 1e-12);
}

TEST_CASE("Subspace empty and full constructors") {
    Subspace e = Subspace::empty(4);
    CHECK(e.dim() == 0);
    CHECK(e.ambient_dim == 4);
    Subspace f = Subspace::full(4);
    CHECK(f.dim() == 4);
    CHECK(spectral_norm(ComplexMatrix(projector_of(f) - ComplexMatrix::Identity(4, 4))) <
          1e-14);
}

TEST_CASE("GaussianSampler is deterministic per seed") {
    GaussianSampler a(99);
    GaussianSampler b(99);
    ComplexMatrix ma = a.complex_matrix(3, 3);
    ComplexMatrix mb = b.complex_matrix(3, 3);
    CHECK((ma - mb).norm() == 0.0);
    GaussianSampler c(100);
    CHECK((ma - c.complex_matrix(3, 3)).norm() != 0.0);
}
