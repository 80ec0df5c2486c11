#include <cmath>

#include "doctest.h"
#include "projgeom/errors.hpp"
#include "projgeom/pair_geometry.hpp"
#include "projgeom/projection.hpp"

using namespace projgeom;
using Complex = std::complex<double>;

namespace {

const double kPi = 3.141592653589793238462643383279502884;

ComplexMatrix angle_projection(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    ComplexMatrix m(2, 2);
    m << c * c, c * s, c * s, s * s;
    return m;
}

ComplexMatrix diagonal(std::initializer_list<double> entries) {
    Eigen::Index n = static_cast<Eigen::Index>(entries.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    Eigen::Index i = 0;
    for (double v : entries) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

// p = diag(1,0,1,0), q = angle blocks pi/4 on {0,1} and pi/3 on {2,3}.
std::pair<Projection, Projection> two_angle_pair() {
    ComplexMatrix q = ComplexMatrix::Zero(4, 4);
    q.block(0, 0, 2, 2) = angle_projection(kPi / 4);
    q.block(2, 2, 2, 2) = angle_projection(kPi / 3);
    return {Projection(diagonal({1, 0, 1, 0})), Projection(q)};
}

}  // namespace

TEST_CASE("pair decomposition of a commuting diagonal pair") {
    Projection p(diagonal({1, 1, 0}));
    Projection q(diagonal({1, 0, 0}));
    PairDecomposition d = pair_decompose(p, q);
    CHECK(d.m11.dim() == 1);
    CHECK(d.m00.dim() == 1);
    CHECK(d.m10.dim() == 1);
    CHECK(d.m01.dim() == 0);
    CHECK(d.generic.dim() == 0);
    // The three nonempty parts are the coordinate axes, in the order 0, 2, 1.
    CHECK(std::abs(std::abs(d.m11.basis(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(d.m00.basis(2, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(d.m10.basis(1, 0)) - 1.0) < 1e-12);
}

TEST_CASE("pair decomposition of a fully generic pair") {
    Projection p(diagonal({1, 0}));
    Projection q(angle_projection(kPi / 4));
    PairDecomposition d = pair_decompose(p, q);
    CHECK(d.m11.dim() == 0);
    CHECK(d.m00.dim() == 0);
    CHECK(d.m10.dim() == 0);
    CHECK(d.m01.dim() == 0);
    CHECK(d.generic.dim() == 2);
}

TEST_CASE("pair decomposition of an equal pair") {
    Projection p = random_projection(5, 2, 13);
    PairDecomposition d = pair_decompose(p, p);
    CHECK(d.m11.dim() == 2);
    CHECK(d.m00.dim() == 3);
    CHECK(d.m10.dim() == 0);
    CHECK(d.m01.dim() == 0);
    CHECK(d.generic.dim() == 0);
}

TEST_CASE("pair decomposition parts are orthonormal and mutually orthogonal") {
    auto [p, q] = two_angle_pair();
    PairDecomposition d = pair_decompose(p, q);
    CHECK(d.generic.dim() == 4);
    CHECK(d.generic.orthonormality_residual() < 1e-10);
}

TEST_CASE("kernel dimension report on frozen diagonal pairs") {
    KernelDimensionReport a =
        kernel_dimension_report(Projection(diagonal({1, 1, 0})), Projection(diagonal({1, 0, 0})));
    CHECK(a.d_sum == 1);
    CHECK(a.d_diff == 2);
    CHECK(a.d_comm == 3);

    KernelDimensionReport b = kernel_dimension_report(Projection(diagonal({1, 0})),
                                                      Projection(angle_projection(kPi / 4)));
    CHECK(b.d_sum == 0);
    CHECK(b.d_diff == 0);
    CHECK(b.d_comm == 0);

    Projection zero2(ComplexMatrix::Zero(2, 2));
    KernelDimensionReport c = kernel_dimension_report(zero2, zero2);
    CHECK(c.d_sum == 0);
    CHECK(c.d_diff == 2);
    CHECK(c.d_comm == 2);
}

TEST_CASE("kernel dimension additivity holds on random pairs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Projection p = random_projection(5, 2, seed);
        Projection q = random_projection(5, 3, seed + 1000);
        KernelDimensionReport r = kernel_dimension_report(p, q);
        CHECK(r.d_comm == r.d_sum + r.d_diff);
    }
}

TEST_CASE("halmos form recovers the planted angles pi/4 and pi/3") {
    auto [p, q] = two_angle_pair();
    HalmosForm h = halmos_form(p, q);
    REQUIRE(h.angles.size() == 2);
    CHECK(h.angles[0] == doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(h.angles[1] == doctest::Approx(kPi / 3).epsilon(1e-10));
    CHECK(h.dims.d11 == 0);
    CHECK(h.dims.d00 == 0);
    CHECK(h.dims.d10 == 0);
    CHECK(h.dims.d01 == 0);
    CHECK(h.dims.generic == 4);

    auto [pp, qq] = halmos_reconstruct(h);
    CHECK(spectral_norm(ComplexMatrix(pp.matrix() - p.matrix())) < 1e-8);
    CHECK(spectral_norm(ComplexMatrix(qq.matrix() - q.matrix())) < 1e-8);
    CHECK(spectral_norm(ComplexMatrix(h.u.adjoint() * h.u -
                                      ComplexMatrix::Identity(4, 4))) < 1e-10);
}

TEST_CASE("halmos angles match the principal-angle cosines from range bases") {
    auto [p, q] = two_angle_pair();
    ComplexMatrix bp = range_basis(p.matrix()).basis;
    ComplexMatrix bq = range_basis(q.matrix()).basis;
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(bp.adjoint() * bq));
    // Cosines descending: cos(pi/4), cos(pi/3).
    CHECK(svd.singularValues()(0) == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-10));
    CHECK(svd.singularValues()(1) == doctest::Approx(std::cos(kPi / 3)).epsilon(1e-10));
}

TEST_CASE("halmos form with a shared range direction") {
    ComplexMatrix q = ComplexMatrix::Zero(3, 3);
    q(0, 0) = 1;
    q.block(1, 1, 2, 2) = angle_projection(kPi / 4);
    Projection pp(diagonal({1, 1, 0}));
    HalmosForm h = halmos_form(pp, Projection(q));
    CHECK(h.dims.d11 == 1);
    CHECK(h.dims.d00 == 0);
    CHECK(h.dims.d10 == 0);
    CHECK(h.dims.d01 == 0);
    CHECK(h.dims.generic == 2);
    REQUIRE(h.angles.size() == 1);
    CHECK(h.angles[0] == doctest::Approx(kPi / 4).epsilon(1e-10));
}

TEST_CASE("halmos form of commuting pairs has no angles") {
    HalmosForm h = halmos_form(Projection(diagonal({1, 0})), Projection(diagonal({0, 1})));
    CHECK(h.angles.empty());
    CHECK(h.dims.d10 == 1);
    CHECK(h.dims.d01 == 1);
    CHECK(h.dims.generic == 0);

    Projection p = random_projection(4, 2, 5);
    HalmosForm hp = halmos_form(p, p);
    CHECK(hp.angles.empty());
    CHECK(hp.dims.d11 == 2);
    CHECK(hp.dims.d00 == 2);
}

TEST_CASE("halmos reconstruct realizes a hand-built canonical form") {
    HalmosForm commuting;
    commuting.u = ComplexMatrix::Identity(4, 4);
    commuting.dims = HalmosDims{1, 1, 1, 1, 0};
    auto [p1, q1] = halmos_reconstruct(commuting);
    CHECK((p1.matrix() - diagonal({1, 0, 1, 0})).norm() < 1e-14);
    CHECK((q1.matrix() - diagonal({1, 0, 0, 1})).norm() < 1e-14);

    HalmosForm generic;
    generic.u = ComplexMatrix::Identity(2, 2);
    generic.angles = {kPi / 3};
    generic.dims = HalmosDims{0, 0, 0, 0, 2};
    auto [p2, q2] = halmos_reconstruct(generic);
    CHECK((p2.matrix() - diagonal({1, 0})).norm() < 1e-14);
    CHECK(spectral_norm(ComplexMatrix(q2.matrix() - angle_projection(kPi / 3))) < 1e-14);
}

TEST_CASE("generic midpoint of the pi/4 pair matches the closed form") {
    Projection p(diagonal({1, 0}));
    Projection q(angle_projection(kPi / 4));
    GenericMidpoint gm = generic_midpoint_with_involution(p, q);

    double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
    ComplexMatrix expected(2, 2);
    expected << (1 + c) / 2, s / 2, s / 2, (1 - c) / 2;
    CHECK(spectral_norm(ComplexMatrix(gm.r.matrix() - expected)) < 1e-12);

    double dist = spectral_norm(ComplexMatrix(p.matrix() - gm.r.matrix()));
    CHECK(dist == doctest::Approx(std::sin(kPi / 8)).epsilon(1e-10));
    CHECK(dist == doctest::Approx(0.38268343236508978).epsilon(1e-10));

    ComplexMatrix tau_expected(2, 2);
    tau_expected << c, s, s, -c;
    CHECK(spectral_norm(ComplexMatrix(gm.involution - tau_expected)) < 1e-12);
}

TEST_CASE("generic midpoint of the pi/3 pair and its involution identities") {
    Projection p(diagonal({1, 0}));
    Projection q(angle_projection(kPi / 3));
    GenericMidpoint gm = generic_midpoint_with_involution(p, q);

    ComplexMatrix expected(2, 2);
    expected << 0.75, std::sqrt(3.0) / 4, std::sqrt(3.0) / 4, 0.25;
    CHECK(spectral_norm(ComplexMatrix(gm.r.matrix() - expected)) < 1e-12);
    CHECK(spectral_norm(ComplexMatrix(p.matrix() - gm.r.matrix())) ==
          doctest::Approx(0.5).epsilon(1e-10));

    const ComplexMatrix& tau = gm.involution;
    ComplexMatrix one = ComplexMatrix::Identity(2, 2);
    CHECK(spectral_norm(ComplexMatrix(tau * tau - one)) < 1e-10);
    CHECK(spectral_norm(ComplexMatrix(tau - tau.adjoint())) < 1e-10);
    CHECK(spectral_norm(ComplexMatrix(tau * p.matrix() * tau - q.matrix())) < 1e-8);
    CHECK(spectral_norm(ComplexMatrix(tau * gm.r.matrix() - gm.r.matrix() * tau)) < 1e-8);
}

TEST_CASE("generic midpoint fixes equal pairs and rejects kernel overlap") {
    Projection p = random_projection(4, 2, 21);
    Projection r = generic_midpoint(p, p);
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - p.matrix())) < 1e-10);

    CHECK_THROWS_AS(generic_midpoint(Projection(diagonal({1, 0})), Projection(diagonal({0, 1}))),
                    SumNotInjectiveError);
}

TEST_CASE("complementary midpoint of the coordinate pair") {
    Projection p0(diagonal({1, 0}));
    Projection q0(diagonal({0, 1}));
    Projection r = complementary_midpoint(p0, q0);

    ComplexMatrix expected(2, 2);
    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - expected)) < 1e-12);

    double half_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - p0.matrix())) ==
          doctest::Approx(half_sqrt2).epsilon(1e-10));
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - q0.matrix())) ==
          doctest::Approx(half_sqrt2).epsilon(1e-10));
}

TEST_CASE("complementary midpoint of a rank-two coordinate split") {
    Projection p0(diagonal({1, 1, 0, 0}));
    Projection q0(diagonal({0, 0, 1, 1}));
    Projection r = complementary_midpoint(p0, q0);

    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = expected(2, 2) = expected(3, 3) = 0.5;
    expected(0, 2) = expected(2, 0) = 0.5;
    expected(1, 3) = expected(3, 1) = 0.5;
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - expected)) < 1e-12);

    CHECK(spectral_norm(ComplexMatrix(r.matrix() - p0.matrix())) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("complementary midpoint validates ranks and orthogonality") {
    CHECK_THROWS_AS(
        complementary_midpoint(Projection(ComplexMatrix::Zero(2, 2)),
                               Projection(ComplexMatrix::Identity(2, 2))),
        RankMismatchError);
    CHECK_THROWS_AS(
        complementary_midpoint(Projection(diagonal({1, 0})), Projection(diagonal({1, 0}))),
        NotOrthogonalError);
}

TEST_CASE("find_common_ball returns the pair itself when p equals q") {
    Projection p = random_projection(5, 2, 31);
    Projection r = find_common_ball(p, p);
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - p.matrix())) < 1e-10);
}

TEST_CASE("find_common_ball on a fully complementary pair") {
    Projection p(diagonal({1, 0}));
    Projection q(diagonal({0, 1}));
    Projection r = find_common_ball(p, q);
    ComplexMatrix expected(2, 2);
    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - expected)) < 1e-10);
}

TEST_CASE("find_common_ball splits kernel and generic parts") {
    // Coordinates {0,1}: generic angle pi/4. Coordinates {2,3}: p = e2, q = e3.
    ComplexMatrix q = ComplexMatrix::Zero(4, 4);
    q.block(0, 0, 2, 2) = angle_projection(kPi / 4);
    q(3, 3) = 1;
    Projection pp(diagonal({1, 0, 1, 0}));
    Projection qq(q);

    Projection r = find_common_ball(pp, qq);
    double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = (1 + c) / 2;
    expected(0, 1) = expected(1, 0) = s / 2;
    expected(1, 1) = (1 - c) / 2;
    expected(2, 2) = expected(3, 3) = 0.5;
    expected(2, 3) = expected(3, 2) = 0.5;
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - expected)) < 1e-10);

    double bound = 1.0 / std::sqrt(2.0) + 1e-8;
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - pp.matrix())) <= bound);
    CHECK(spectral_norm(ComplexMatrix(r.matrix() - qq.matrix())) <= bound);
}

TEST_CASE("find_common_ball rejects unequal ranks") {
    CHECK_THROWS_AS(
        find_common_ball(Projection(diagonal({1, 0, 0})), Projection(diagonal({1, 1, 0}))),
        RankMismatchError);
}

TEST_CASE("find_common_ball stays inside the ball on random same-rank pairs") {
    double bound = 1.0 / std::sqrt(2.0) + 1e-8;
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        Projection p = random_projection(6, 3, seed);
        Projection q = random_projection(6, 3, seed + 500);
        Projection r = find_common_ball(p, q);
        CHECK(spectral_norm(ComplexMatrix(r.matrix() - p.matrix())) <= bound);
        CHECK(spectral_norm(ComplexMatrix(r.matrix() - q.matrix())) <= bound);
        CHECK(r.idem_residual() < 1e-8);
    }
}
