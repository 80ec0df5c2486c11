#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace projgeom {

using Natural = std::uint64_t;

/// Exponent of 2 in x. Requires x >= 1.
int two_adic_valuation(Natural x);

/// A subset of the naturals given by a union of residue classes plus finite
/// corrections: (class union minus removed) union added. The corrections
/// stay on their own side of the class union, which keeps every operation
/// exact and decidable.
struct ResidueSet {
    Natural modulus = 1;
    std::set<Natural> residues;  // subset of 0..modulus-1
    std::set<Natural> added;     // finite, disjoint from the class union
    std::set<Natural> removed;   // finite, inside the class union

    void validate() const;
    bool contains(Natural v) const;
    bool is_empty() const;
    bool is_infinite() const;
};

ResidueSet residue_complement(const ResidueSet& a);
ResidueSet residue_meet(const ResidueSet& a, const ResidueSet& b);

/// A diagonal projection on l^2 of the positive naturals: the support
/// contains x exactly when the 2-adic valuation of x lies in vals, corrected
/// by the finite basis-index sets extra and minus.
struct ValuationProjection {
    ResidueSet vals;
    std::set<Natural> extra;  // basis indices added; valuations outside vals
    std::set<Natural> minus;  // basis indices removed; valuations inside vals

    void validate() const;
    bool contains(Natural x) const;
};

struct Cardinality {
    bool infinite = false;
    Natural count = 0;  // meaningful when finite
};

bool operator==(const Cardinality& a, const Cardinality& b);

/// Infinite exactly when some valuation class is allowed; otherwise the
/// support is the finite set extra.
Cardinality card(const ValuationProjection& s);

ValuationProjection complement(const ValuationProjection& s);
ValuationProjection meet(const ValuationProjection& s, const ValuationProjection& t);

bool is_empty(const ValuationProjection& s);
bool leq(const ValuationProjection& s, const ValuationProjection& t);
bool equal(const ValuationProjection& s, const ValuationProjection& t);
bool disjoint(const ValuationProjection& s, const ValuationProjection& t);

/// Union of two disjoint supports. Throws NotOrthogonalError otherwise.
ValuationProjection orth_sum(const ValuationProjection& s, const ValuationProjection& t);

/// Equality of cardinalities: Murray-von Neumann equivalence for diagonal
/// projections.
bool mv_equiv(const ValuationProjection& s, const ValuationProjection& t);

ValuationProjection empty_projection();
ValuationProjection full_projection();

/// Support {x : valuation of x is exactly n}.
ValuationProjection single_valuation(Natural n);

/// Support {x : valuation of x congruent to j mod 3}; the three of these sum
/// to the identity.
ValuationProjection residue_class_mod3(Natural j);

/// The witness pair p <= q, p ~ q, p != q, with all four of p, q and their
/// complements equivalent.
struct DedekindPair {
    ValuationProjection p;
    ValuationProjection q;
    bool leq_pq;
    bool equivalent_pq;
    bool distinct;
    bool four_way_equivalent;  // p ~ p-perp ~ q ~ q-perp
};

DedekindPair dedekind_pair();

/// The strictly increasing, pairwise equivalent family p_k = {x : valuation
/// of x below k}, k = 1..k_max. Requires k_max >= 2.
std::vector<ValuationProjection> ball_disjoint_family(Natural k_max);

/// `vals mod <m> {r,...} +{...} -{...}`, with basis corrections appended as
/// `ix+{...} ix-{...}` when present.
std::string to_string(const ValuationProjection& s);

/// The first `count` elements of the support, ascending.
std::vector<Natural> support_prefix(const ValuationProjection& s, std::size_t count);

}  // namespace projgeom
