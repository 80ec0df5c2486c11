#include "projgeom/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace projgeom {

namespace {

double read_scalar(std::istream& in, const char* what) {
    double v = 0.0;
    if (!(in >> v)) throw ParseError(std::string("cplxmat: missing ") + what);
    if (!std::isfinite(v)) throw ParseError(std::string("cplxmat: non-finite ") + what);
    return v;
}

ComplexMatrix read_block_after_magic(std::istream& in) {
    long long rows = -1;
    long long cols = -1;
    if (!(in >> rows >> cols)) throw ParseError("cplxmat: missing dimensions");
    if (rows < 0 || cols < 0) throw ParseError("cplxmat: negative dimensions");
    ComplexMatrix m(rows, cols);
    for (long long r = 0; r < rows; ++r) {
        for (long long c = 0; c < cols; ++c) {
            const double re = read_scalar(in, "real part");
            const double im = read_scalar(in, "imaginary part");
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

void append_scalar(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

ComplexMatrix read_cplxmat(std::istream& in) {
    std::string magic;
    if (!(in >> magic)) throw ParseError("cplxmat: empty input");
    if (magic != "cplxmat") throw ParseError("cplxmat: bad magic '" + magic + "'");
    return read_block_after_magic(in);
}

std::vector<ComplexMatrix> read_cplxmat_blocks(std::istream& in) {
    std::vector<ComplexMatrix> blocks;
    blocks.push_back(read_cplxmat(in));
    std::string probe;
    while (in >> probe) {
        if (probe != "cplxmat") throw ParseError("cplxmat: trailing junk '" + probe + "'");
        blocks.push_back(read_block_after_magic(in));
    }
    return blocks;
}

void write_cplxmat(std::ostream& out, const ComplexMatrix& m) {
    out << to_cplxmat_string(m);
}

std::string to_cplxmat_string(const ComplexMatrix& m) {
    if (!is_finite(m)) throw BadArgumentsError("cplxmat: refusing to write non-finite entries");
    std::string out = "cplxmat " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            append_scalar(out, m(r, c).real());
            out += ' ';
            append_scalar(out, m(r, c).imag());
            out += '\n';
        }
    }
    return out;
}

ComplexMatrix read_cplxmat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadArgumentsError("cannot open '" + path + "'");
    return read_cplxmat(in);
}

std::vector<ComplexMatrix> read_cplxmat_blocks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadArgumentsError("cannot open '" + path + "'");
    return read_cplxmat_blocks(in);
}

void write_cplxmat_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw BadArgumentsError("cannot open '" + path + "' for writing");
    write_cplxmat(out, m);
}

}  // namespace projgeom
