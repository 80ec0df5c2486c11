#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "projgeom/errors.hpp"
#include "projgeom/matrix_io.hpp"
#include "projgeom/rng.hpp"

using namespace projgeom;
using Complex = std::complex<double>;

TEST_CASE("write/read round trip preserves every entry exactly") {
    GaussianSampler g(5);
    ComplexMatrix m = g.complex_matrix(4, 3);
    std::ostringstream out;
    write_cplxmat(out, m);
    std::istringstream in(out.str());
    ComplexMatrix back = read_cplxmat(in);
    REQUIRE(back.rows() == 4);
    REQUIRE(back.cols() == 3);
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("reader accepts the documented shape") {
    std::istringstream in(
        "cplxmat 2 2\n"
        "1 0\n0 -1\n"
        "0.5 0\n0 0\n");
    ComplexMatrix m = read_cplxmat(in);
    CHECK(m(0, 0) == Complex(1, 0));
    CHECK(m(0, 1) == Complex(0, -1));
    CHECK(m(1, 0) == Complex(0.5, 0));
    CHECK(m(1, 1) == Complex(0, 0));
}

TEST_CASE("reader tolerates arbitrary whitespace") {
    std::istringstream in("  cplxmat\t1 2   1 0\n\n  0   1 ");
    ComplexMatrix m = read_cplxmat(in);
    CHECK(m(0, 0) == Complex(1, 0));
    CHECK(m(0, 1) == Complex(0, 1));
}

TEST_CASE("malformed input throws ParseError") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_cplxmat(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("matrix 2 2 1 0 0 0 0 0 0 0"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat 2"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat 2 2 1 0 0 0"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat 1 1 nan 0"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat 1 1 inf 0"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat -1 2 1 0"), ParseError);
    CHECK_THROWS_AS(parse("cplxmat 1 1 abc 0"), ParseError);
}

TEST_CASE("block reader returns consecutive matrices") {
    std::istringstream in(
        "cplxmat 1 1\n1 0\n"
        "cplxmat 2 1\n0 0\n0 1\n");
    std::vector<ComplexMatrix> blocks = read_cplxmat_blocks(in);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0](0, 0) == Complex(1, 0));
    CHECK(blocks[1](1, 0) == Complex(0, 1));
}

TEST_CASE("block reader requires at least one block and rejects trailing junk") {
    std::istringstream empty("   \n ");
    CHECK_THROWS_AS(read_cplxmat_blocks(empty), ParseError);
    std::istringstream junk("cplxmat 1 1\n1 0\nleftover");
    CHECK_THROWS_AS(read_cplxmat_blocks(junk), ParseError);
}

TEST_CASE("file round trip and missing-file error") {
    GaussianSampler g(8);
    ComplexMatrix m = g.complex_matrix(3, 3);
    const std::string path = "io_roundtrip.cplxmat";
    write_cplxmat_file(path, m);
    ComplexMatrix back = read_cplxmat_file(path);
    CHECK((back - m).norm() == 0.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_cplxmat_file("does_not_exist.cplxmat"), BadArgumentsError);
}

TEST_CASE("to_cplxmat_string starts with the magic and round trips") {
    ComplexMatrix m(1, 2);
    m << Complex(0.25, 0), Complex(0, -2);
    std::string text = to_cplxmat_string(m);
    CHECK(text.rfind("cplxmat 1 2", 0) == 0);
    std::istringstream in(text);
    CHECK((read_cplxmat(in) - m).norm() == 0.0);
}

TEST_CASE("17 significant digits survive a round trip") {
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(1.0 / 3.0, -2.0 / 7.0);
    std::istringstream in(to_cplxmat_string(m));
    CHECK(read_cplxmat(in)(0, 0) == m(0, 0));
}
