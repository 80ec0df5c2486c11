#include "projgeom/dedekind.hpp"

#include <bit>
#include <numeric>
#include <sstream>

#include "projgeom/errors.hpp"

namespace projgeom {

int two_adic_valuation(Natural x) {
    if (x == 0) throw BadArgumentsError("two_adic_valuation: undefined at 0");
    return std::countr_zero(x);
}

void ResidueSet::validate() const {
    if (modulus == 0) throw BadArgumentsError("residue set: modulus must be positive");
    for (Natural r : residues)
        if (r >= modulus)
            throw BadArgumentsError("residue set: residue outside 0..modulus-1");
    for (Natural v : added)
        if (residues.count(v % modulus))
            throw BadArgumentsError("residue set: added element already in the class union");
    for (Natural v : removed) {
        if (!residues.count(v % modulus))
            throw BadArgumentsError("residue set: removed element outside the class union");
        if (added.count(v))
            throw BadArgumentsError("residue set: element both added and removed");
    }
}

bool ResidueSet::contains(Natural v) const {
    if (added.count(v)) return true;
    if (removed.count(v)) return false;
    return residues.count(v % modulus) > 0;
}

bool ResidueSet::is_empty() const { return residues.empty() && added.empty(); }

bool ResidueSet::is_infinite() const { return !residues.empty(); }

ResidueSet residue_complement(const ResidueSet& a) {
    ResidueSet out;
    out.modulus = a.modulus;
    for (Natural r = 0; r < a.modulus; ++r)
        if (!a.residues.count(r)) out.residues.insert(r);
    out.added = a.removed;
    out.removed = a.added;
    out.validate();
    return out;
}

ResidueSet residue_meet(const ResidueSet& a, const ResidueSet& b) {
    ResidueSet out;
    out.modulus = std::lcm(a.modulus, b.modulus);
    for (Natural r = 0; r < out.modulus; ++r)
        if (a.residues.count(r % a.modulus) && b.residues.count(r % b.modulus))
            out.residues.insert(r);

    // The finite corrections of either operand are the only points where the
    // class-level intersection can be wrong.
    std::set<Natural> exceptions;
    for (const std::set<Natural>* s : {&a.added, &a.removed, &b.added, &b.removed})
        exceptions.insert(s->begin(), s->end());
    for (Natural v : exceptions) {
        bool actual = a.contains(v) && b.contains(v);
        bool predicted = out.residues.count(v % out.modulus) > 0;
        if (actual && !predicted) out.added.insert(v);
        if (!actual && predicted) out.removed.insert(v);
    }
    out.validate();
    return out;
}

void ValuationProjection::validate() const {
    vals.validate();
    for (Natural x : extra) {
        if (x == 0) throw BadArgumentsError("valuation projection: index 0 is not in the basis");
        if (vals.contains(static_cast<Natural>(two_adic_valuation(x))))
            throw BadArgumentsError("valuation projection: extra index already in the support");
    }
    for (Natural x : minus) {
        if (x == 0) throw BadArgumentsError("valuation projection: index 0 is not in the basis");
        if (!vals.contains(static_cast<Natural>(two_adic_valuation(x))))
            throw BadArgumentsError("valuation projection: minus index outside the support");
        if (extra.count(x))
            throw BadArgumentsError("valuation projection: index both added and removed");
    }
}

bool ValuationProjection::contains(Natural x) const {
    if (x == 0) return false;
    if (extra.count(x)) return true;
    if (minus.count(x)) return false;
    return vals.contains(static_cast<Natural>(two_adic_valuation(x)));
}

bool operator==(const Cardinality& a, const Cardinality& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.count == b.count;
}

Cardinality card(const ValuationProjection& s) {
    Cardinality c;
    if (!s.vals.is_empty()) {
        // Every allowed valuation class carries infinitely many basis indices.
        c.infinite = true;
        return c;
    }
    c.count = s.extra.size();
    return c;
}

ValuationProjection complement(const ValuationProjection& s) {
    ValuationProjection out;
    out.vals = residue_complement(s.vals);
    out.extra = s.minus;
    out.minus = s.extra;
    out.validate();
    return out;
}

ValuationProjection meet(const ValuationProjection& s, const ValuationProjection& t) {
    ValuationProjection out;
    out.vals = residue_meet(s.vals, t.vals);

    std::set<Natural> exceptions;
    for (const std::set<Natural>* e : {&s.extra, &s.minus, &t.extra, &t.minus})
        exceptions.insert(e->begin(), e->end());
    for (Natural x : exceptions) {
        bool actual = s.contains(x) && t.contains(x);
        bool predicted = out.vals.contains(static_cast<Natural>(two_adic_valuation(x)));
        if (actual && !predicted) out.extra.insert(x);
        if (!actual && predicted) out.minus.insert(x);
    }
    out.validate();
    return out;
}

bool is_empty(const ValuationProjection& s) {
    Cardinality c = card(s);
    return !c.infinite && c.count == 0;
}

bool leq(const ValuationProjection& s, const ValuationProjection& t) {
    return is_empty(meet(s, complement(t)));
}

bool equal(const ValuationProjection& s, const ValuationProjection& t) {
    return leq(s, t) && leq(t, s);
}

bool disjoint(const ValuationProjection& s, const ValuationProjection& t) {
    return is_empty(meet(s, t));
}

ValuationProjection orth_sum(const ValuationProjection& s, const ValuationProjection& t) {
    if (!disjoint(s, t))
        throw NotOrthogonalError("orth_sum: supports overlap");
    return complement(meet(complement(s), complement(t)));
}

bool mv_equiv(const ValuationProjection& s, const ValuationProjection& t) {
    return card(s) == card(t);
}

ValuationProjection empty_projection() { return ValuationProjection{}; }

ValuationProjection full_projection() {
    ValuationProjection out;
    out.vals.residues.insert(0);
    return out;
}

ValuationProjection single_valuation(Natural n) {
    ValuationProjection out;
    out.vals.added.insert(n);
    return out;
}

ValuationProjection residue_class_mod3(Natural j) {
    if (j > 2) throw BadArgumentsError("residue_class_mod3: residue must be 0, 1 or 2");
    ValuationProjection out;
    out.vals.modulus = 3;
    out.vals.residues.insert(j);
    return out;
}

DedekindPair dedekind_pair() {
    DedekindPair d;
    d.p = residue_class_mod3(0);
    d.q = orth_sum(residue_class_mod3(0), residue_class_mod3(1));
    d.leq_pq = leq(d.p, d.q);
    d.equivalent_pq = mv_equiv(d.p, d.q);
    d.distinct = !equal(d.p, d.q);
    ValuationProjection pc = complement(d.p);
    ValuationProjection qc = complement(d.q);
    d.four_way_equivalent = mv_equiv(d.p, pc) && mv_equiv(pc, d.q) && mv_equiv(d.q, qc);
    return d;
}

std::vector<ValuationProjection> ball_disjoint_family(Natural k_max) {
    if (k_max < 2) throw BadArgumentsError("ball_disjoint_family: k_max must be at least 2");
    std::vector<ValuationProjection> out;
    out.reserve(k_max);
    for (Natural k = 1; k <= k_max; ++k) {
        ValuationProjection pk;
        for (Natural v = 0; v < k; ++v) pk.vals.added.insert(v);
        out.push_back(std::move(pk));
    }
    return out;
}

namespace {

void print_set(std::ostringstream& os, const std::set<Natural>& s) {
    os << '{';
    bool first = true;
    for (Natural v : s) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
}

}  // namespace

std::string to_string(const ValuationProjection& s) {
    std::ostringstream os;
    os << "vals mod " << s.vals.modulus << ' ';
    print_set(os, s.vals.residues);
    os << " +";
    print_set(os, s.vals.added);
    os << " -";
    print_set(os, s.vals.removed);
    if (!s.extra.empty() || !s.minus.empty()) {
        os << " ix+";
        print_set(os, s.extra);
        os << " ix-";
        print_set(os, s.minus);
    }
    return os.str();
}

std::vector<Natural> support_prefix(const ValuationProjection& s, std::size_t count) {
    std::vector<Natural> out;
    if (is_empty(s)) return out;
    for (Natural x = 1; out.size() < count; ++x) {
        if (s.contains(x)) out.push_back(x);
        // Finite supports may run out before count is reached.
        if (!card(s).infinite && out.size() == card(s).count) break;
    }
    return out;
}

}  // namespace projgeom
