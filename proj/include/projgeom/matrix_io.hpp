#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "projgeom/numeric.hpp"

namespace projgeom {

// CPLXMAT v1 text format.
//
//   cplxmat <rows> <cols>
//   <re> <im>          (rows*cols entries, row-major, one per line)
//
// Readers are whitespace-tolerant; writers emit exactly this shape with up
// to 17 significant digits per value.

/// Reads one matrix; throws ParseError on malformed input or non-finite entries.
ComplexMatrix read_cplxmat(std::istream& in);

/// Reads consecutive matrices until end of stream (at least one required).
std::vector<ComplexMatrix> read_cplxmat_blocks(std::istream& in);

void write_cplxmat(std::ostream& out, const ComplexMatrix& m);

ComplexMatrix read_cplxmat_file(const std::string& path);
std::vector<ComplexMatrix> read_cplxmat_blocks_file(const std::string& path);
void write_cplxmat_file(const std::string& path, const ComplexMatrix& m);

std::string to_cplxmat_string(const ComplexMatrix& m);

}  // namespace projgeom
