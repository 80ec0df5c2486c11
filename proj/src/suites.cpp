#include "projgeom/suites.hpp"

#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "json.hpp"
#include "projgeom/affine_atlas.hpp"
#include "projgeom/dedekind.hpp"
#include "projgeom/errors.hpp"
#include "projgeom/pair_geometry.hpp"
#include "projgeom/projection.hpp"
#include "projgeom/rng.hpp"

namespace projgeom {

namespace {

constexpr double kHalfSqrt2 = 0.7071067811865476;

// Per-trial bookkeeping: residuals fold into the suite-wide worst map, any
// violated bound or failed flag marks the trial as failed.
struct Recorder {
    std::map<std::string, double>& worst;
    bool ok = true;

    void residual(const std::string& name, double value, double bound) {
        auto it = worst.find(name);
        if (it == worst.end() || value > it->second) worst[name] = value;
        if (!(value <= bound)) ok = false;
    }
    void require(const std::string& name, bool flag) {
        if (!flag) {
            worst[name] = 1.0;
            ok = false;
        } else if (!worst.count(name)) {
            worst[name] = 0.0;
        }
    }
};

Eigen::Index draw_index(std::mt19937_64& eng, Eigen::Index lo, Eigen::Index hi) {
    return lo + static_cast<Eigen::Index>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double norm_gap(const ComplexMatrix& a, const ComplexMatrix& b) {
    return spectral_norm(ComplexMatrix(a - b));
}

double projection_residual(const ComplexMatrix& m) {
    return std::max(spectral_norm(ComplexMatrix(m * m - m)),
                    spectral_norm(ComplexMatrix(m - m.adjoint())));
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
    GaussianSampler sampler(seed);
    ComplexMatrix g = sampler.complex_matrix(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// A same-rank pair whose gap stays clear of the unit-norm boundary.
std::pair<Projection, Projection> same_rank_pair(Eigen::Index n, Eigen::Index k,
                                                 std::mt19937_64& eng) {
    Projection p = random_projection(n, k, eng());
    for (int attempt = 0; attempt < 64; ++attempt) {
        Projection q = random_projection(n, k, eng());
        double gap = norm_gap(p.matrix(), q.matrix());
        if (gap <= 1.0 - 1e-6 || gap >= 1.0) return {std::move(p), std::move(q)};
    }
    throw Error("suite: could not sample a pair away from the boundary");
}

// Conjugated canonical pair with prescribed part sizes and angles; exercises
// every branch of the two-projection decomposition.
struct PlantedPair {
    Projection p;
    Projection q;
    HalmosDims dims;
    std::vector<double> angles;
};

PlantedPair planted_pair(Eigen::Index n, std::mt19937_64& eng, bool equal_rank) {
    HalmosDims dims{};
    dims.d11 = draw_index(eng, 0, 2);
    dims.d00 = draw_index(eng, 0, 2);
    if (equal_rank) {
        dims.d10 = dims.d01 = draw_index(eng, 0, 1);
    } else {
        dims.d10 = draw_index(eng, 0, 2);
        dims.d01 = draw_index(eng, 0, 2);
    }
    Eigen::Index used = dims.d11 + dims.d00 + dims.d10 + dims.d01;
    while (used + 2 > n && used > 0) {
        // shrink to fit small n
        if (dims.d11 > 0) --dims.d11;
        else if (dims.d00 > 0) --dims.d00;
        else if (equal_rank && dims.d10 > 0) { --dims.d10; --dims.d01; }
        else if (!equal_rank && dims.d10 > 0) --dims.d10;
        else if (!equal_rank && dims.d01 > 0) --dims.d01;
        used = dims.d11 + dims.d00 + dims.d10 + dims.d01;
    }
    Eigen::Index g = (n - used) / 2;
    dims.generic = 2 * g;
    dims.d00 += n - used - dims.generic;  // absorb parity leftover

    std::vector<double> angles;
    for (Eigen::Index i = 0; i < g; ++i) {
        double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        angles.push_back(0.05 + u * (1.5207963 - 0.05));
    }
    std::sort(angles.begin(), angles.end());

    HalmosForm form;
    form.dims = dims;
    form.angles = angles;
    form.u = random_unitary(n, eng());
    auto [p, q] = halmos_reconstruct(form);
    return PlantedPair{std::move(p), std::move(q), dims, std::move(angles)};
}

void lemmas_trial(Eigen::Index n, std::mt19937_64& eng, Recorder& rec,
                  const ToleranceConfig& tol) {
    Eigen::Index k = draw_index(eng, 0, n);
    bool unequal = (eng() % 4) == 0;
    auto draw_pair = [&]() -> std::pair<Projection, Projection> {
        if (unequal)
            return {random_projection(n, k, eng()),
                    random_projection(n, draw_index(eng, 0, n), eng())};
        return same_rank_pair(n, k, eng);
    };
    auto [p, q] = draw_pair();

    // (p+q-1)^2 + (p-q)^2 = 1 holds identically.
    ComplexMatrix s = p.matrix() + q.matrix();
    s.diagonal().array() -= 1.0;
    ComplexMatrix d = p.matrix() - q.matrix();
    ComplexMatrix identity_res = s * s + d * d;
    identity_res.diagonal().array() -= 1.0;
    rec.residual("triad_identity", spectral_norm(identity_res), 1e-12);

    double gap = spectral_norm(d);
    if (std::abs(gap - 1.0) > 1e-6) {
        BallReport br = ball_predicates(p, q, tol);
        rec.require("triad_agreement", br.invertible_sum == br.norm_lt_one &&
                                           br.norm_lt_one == br.direct_sum);
        if (br.norm_lt_one) {
            Idempotent pi = p.as_idempotent(tol);
            Idempotent qi = q.as_idempotent(tol);
            auto [r1, r2] = converse_kovarik(pi, qi, tol);
            RangeKernelMatch mp = range_kernel_match(pi, r1, tol);
            RangeKernelMatch mq = range_kernel_match(r1, qi, tol);
            rec.residual("kovarik_range", mp.range_residual, 1e-8);
            rec.residual("kovarik_kernel", mq.kernel_residual, 1e-8);

            ComplexMatrix t = r1.matrix() + r2.matrix();
            t.diagonal().array() -= 1.0;
            ComplexMatrix conv = t * s;
            conv.diagonal().array() -= 1.0;
            rec.residual("converse_identity", spectral_norm(conv), 1e-8);

            for (int j = 0; j <= 10; ++j) {
                double t_par = j / 10.0;
                Projection g = projection_path(p, q, t_par, tol);
                rec.residual("path_projection", projection_residual(g.matrix()), 1e-8);
                if (j == 0) rec.residual("path_endpoint", norm_gap(g.matrix(), p.matrix()), 1e-10);
                if (j == 10) rec.residual("path_endpoint", norm_gap(g.matrix(), q.matrix()), 1e-10);
            }
        }
    }

    // Finiteness: a subprojection of equal rank is the projection itself.
    Eigen::Index j = draw_index(eng, 0, p.rank());
    Subspace im_p = range_basis(p.matrix(), tol);
    Subspace sub{n, im_p.basis.leftCols(j)};
    ComplexMatrix sub_m = projector_of(sub);
    sub_m = 0.5 * (sub_m + sub_m.adjoint().eval());
    Projection psub(std::move(sub_m), tol);
    rec.require("order_leq", order_leq(psub, p, tol));
    if (j == p.rank()) {
        rec.residual("finiteness_gap", norm_gap(psub.matrix(), p.matrix()), 1e-10);
    } else {
        rec.require("strict_subprojection", !mv_equivalent(psub, p));
    }
}

void midpoint_trial(Eigen::Index n, std::mt19937_64& eng, Recorder& rec,
                    const ToleranceConfig& tol) {
    bool structured = (eng() % 3) == 0;
    auto draw_pair = [&]() -> std::pair<Projection, Projection> {
        if (structured) {
            PlantedPair pl = planted_pair(n, eng, true);
            return {std::move(pl.p), std::move(pl.q)};
        }
        return same_rank_pair(n, draw_index(eng, 0, n), eng);
    };
    auto [p, q] = draw_pair();

    Projection r = find_common_ball(p, q, tol);
    double dp = norm_gap(p.matrix(), r.matrix());
    double dq = norm_gap(q.matrix(), r.matrix());
    rec.residual("midpoint_distance", std::max(dp, dq), kHalfSqrt2 + 1e-8);
    rec.residual("midpoint_projection", projection_residual(r.matrix()), 1e-8);

    BallReport br = ball_predicates(p, r, tol);
    rec.require("midpoint_membership", br.invertible_sum && br.norm_lt_one && br.direct_sum);

    KernelDimensionReport kd = kernel_dimension_report(p, q, tol);
    rec.require("kernel_additivity", kd.d_comm == kd.d_sum + kd.d_diff);

    // Full canonical-form coverage, including unequal ranks.
    PlantedPair pl = planted_pair(n, eng, false);
    HalmosForm h = halmos_form(pl.p, pl.q, tol);
    rec.require("halmos_dims",
                h.dims.d11 == pl.dims.d11 && h.dims.d00 == pl.dims.d00 &&
                    h.dims.d10 == pl.dims.d10 && h.dims.d01 == pl.dims.d01 &&
                    h.dims.generic == pl.dims.generic);
    bool angles_match = h.angles.size() == pl.angles.size();
    for (std::size_t i = 0; angles_match && i < h.angles.size(); ++i)
        angles_match = std::abs(h.angles[i] - pl.angles[i]) <= 1e-7;
    rec.require("halmos_angles", angles_match);

    auto [pr, qr] = halmos_reconstruct(h, tol);
    rec.residual("halmos_roundtrip",
                 std::max(norm_gap(pr.matrix(), pl.p.matrix()),
                          norm_gap(qr.matrix(), pl.q.matrix())),
                 1e-8);

    KernelDimensionReport kp = kernel_dimension_report(pl.p, pl.q, tol);
    rec.require("kernel_planted", kp.d_sum == pl.dims.d10 + pl.dims.d01 &&
                                      kp.d_diff == pl.dims.d11 + pl.dims.d00 &&
                                      kp.d_comm == kp.d_sum + kp.d_diff);
}

void atlas_trial(Eigen::Index n, std::mt19937_64& eng, Recorder& rec,
                 const ToleranceConfig& tol) {
    Eigen::Index k = draw_index(eng, 0, n);
    Projection p = random_projection(n, k, eng());

    GaussianSampler sampler(eng());
    ComplexMatrix raw = sampler.complex_matrix(n, n);
    ComplexMatrix x = raw * p.matrix() - p.matrix() * (raw * p.matrix());
    double xn = spectral_norm(x);
    if (xn > 1e-12) {
        double target = 2.5 * static_cast<double>(eng() >> 11) * 0x1.0p-53;
        x *= target / xn;
    }
    AffineCoordinates coords(p, x, tol);
    Projection q = phi_inverse(coords, tol);
    rec.require("atlas_ball", norm_gap(q.matrix(), p.matrix()) < 1.0);

    AffineCoordinates back = phi(p, q, tol);
    rec.residual("atlas_roundtrip_x", spectral_norm(ComplexMatrix(back.x() - x)), 1e-8);
    Projection q2 = phi_inverse(back, tol);
    rec.residual("atlas_roundtrip_q", norm_gap(q2.matrix(), q.matrix()), 1e-8);

    // Injectivity witness on a second sample.
    ComplexMatrix raw2 = sampler.complex_matrix(n, n);
    ComplexMatrix x2 = raw2 * p.matrix() - p.matrix() * (raw2 * p.matrix());
    double x2n = spectral_norm(x2);
    if (x2n > 1e-12) x2 *= (1.7 * static_cast<double>(eng() >> 11) * 0x1.0p-53) / x2n;
    Projection qb = phi_inverse(AffineCoordinates(p, x2, tol), tol);
    if (norm_gap(qb.matrix(), q.matrix()) >= 1e-4) {
        AffineCoordinates cb = phi(p, qb, tol);
        rec.require("atlas_injective",
                    spectral_norm(ComplexMatrix(cb.x() - back.x())) >= 1e-8);
    }

    // Classical charts on rank-2 projections in dimension 4.
    Projection q4 = random_projection(4, 2, eng());
    ChartIndex sel = chart_select(q4, tol);
    rec.require("classical_cover",
                norm_gap(q4.matrix(), standard_projection(sel).matrix()) < 1.0);
    ComplexMatrix a = classical_affine_coords(q4, sel, tol);
    Projection q4b = projection_from_frame(pivot_frame(sel, a), tol);
    rec.residual("classical_roundtrip", norm_gap(q4b.matrix(), q4.matrix()), 1e-8);

    ChartIndex ex = chart_select_exhaustive(q4, tol);
    rec.require("classical_cover_exhaustive",
                norm_gap(q4.matrix(), standard_projection(ex).matrix()) < 1.0);

    // Ball membership versus invertibility of the chart minor.
    ComplexMatrix frame = range_basis(q4.matrix(), tol).basis;
    for (Eigen::Index i = 1; i <= 3; ++i) {
        for (Eigen::Index j = i + 1; j <= 4; ++j) {
            ComplexMatrix minor(2, 2);
            minor.row(0) = frame.row(i - 1);
            minor.row(1) = frame.row(j - 1);
            Eigen::JacobiSVD<ComplexMatrix> svd(minor);
            double smin = svd.singularValues()(1);
            if (smin > 1e-9 && smin < 1e-3) continue;  // too close to the boundary to decide
            ChartIndex idx;
            idx.n = 4;
            idx.indices = {i, j};
            BallReport br = ball_predicates(standard_projection(idx), q4, tol);
            rec.require("classical_ball_agreement", br.norm_lt_one == (smin > 1e-3));
        }
    }
}

ValuationProjection random_valuation_projection(std::mt19937_64& eng) {
    ValuationProjection s;
    s.vals.modulus = 1 + eng() % 6;
    for (Natural r = 0; r < s.vals.modulus; ++r)
        if (eng() % 2) s.vals.residues.insert(r);
    for (int i = 0; i < 3; ++i) {
        Natural v = eng() % 40;
        if (!s.vals.residues.count(v % s.vals.modulus)) s.vals.added.insert(v);
    }
    for (int i = 0; i < 3; ++i) {
        Natural v = eng() % 40;
        if (s.vals.residues.count(v % s.vals.modulus) && !s.vals.added.count(v))
            s.vals.removed.insert(v);
    }
    for (int i = 0; i < 3; ++i) {
        Natural x = 1 + eng() % 4096;
        if (!s.vals.contains(static_cast<Natural>(two_adic_valuation(x)))) s.extra.insert(x);
    }
    for (int i = 0; i < 3; ++i) {
        Natural x = 1 + eng() % 4096;
        if (s.vals.contains(static_cast<Natural>(two_adic_valuation(x))) && !s.extra.count(x))
            s.minus.insert(x);
    }
    s.validate();
    return s;
}

void dedekind_trial(Eigen::Index, std::mt19937_64& eng, Recorder& rec, const ToleranceConfig&) {
    DedekindPair d = dedekind_pair();
    rec.require("dedekind_pair", d.leq_pq && d.equivalent_pq && d.distinct &&
                                     d.four_way_equivalent);
    rec.require("dedekind_witness", d.p.contains(3) && d.q.contains(3));

    auto family = ball_disjoint_family(2 + eng() % 7);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < family.size(); ++i)
        chain = chain && leq(family[i], family[i + 1]) && !equal(family[i], family[i + 1]);
    rec.require("family_chain", chain);
    rec.require("family_equivalent", mv_equiv(family.front(), family.back()));

    // Partition of the basis into valuation rows plus the tail.
    Natural top = eng() % 21;
    ValuationProjection acc = single_valuation(0);
    for (Natural v = 1; v <= top; ++v) acc = orth_sum(acc, single_valuation(v));
    ValuationProjection tail;
    tail.vals.residues.insert(0);
    for (Natural v = 0; v <= top; ++v) tail.vals.removed.insert(v);
    tail.validate();
    rec.require("partition_disjoint", disjoint(acc, tail));
    rec.require("partition_total", equal(orth_sum(acc, tail), full_projection()));
    bool sampled = true;
    for (int i = 0; i < 64; ++i) {
        Natural x = 1 + eng() % (1u << 20);
        bool low = static_cast<Natural>(two_adic_valuation(x)) <= top;
        sampled = sampled && acc.contains(x) == low && tail.contains(x) == !low;
    }
    rec.require("partition_membership", sampled);

    ValuationProjection s = random_valuation_projection(eng);
    ValuationProjection t = random_valuation_projection(eng);
    rec.require("complement_involution", equal(complement(complement(s)), s));
    rec.require("leq_reflexive", leq(s, s) && equal(meet(s, s), s));
    bool morgan = true;
    ValuationProjection lhs = complement(meet(s, t));
    for (int i = 0; i < 128; ++i) {
        Natural x = 1 + eng() % 8192;
        morgan = morgan &&
                 lhs.contains(x) == (complement(s).contains(x) || complement(t).contains(x));
    }
    rec.require("de_morgan", morgan);
    rec.require("meet_leq", leq(meet(s, t), s) && leq(meet(s, t), t));
}

using TrialFn = void (*)(Eigen::Index, std::mt19937_64&, Recorder&, const ToleranceConfig&);

TrialFn suite_fn(const std::string& name) {
    if (name == "lemmas") return &lemmas_trial;
    if (name == "midpoint") return &midpoint_trial;
    if (name == "atlas") return &atlas_trial;
    if (name == "dedekind") return &dedekind_trial;
    throw BadArgumentsError("unknown suite '" + name + "'");
}

}  // namespace

SuiteReport run_suite(const std::string& name, Eigen::Index n, int trials, std::uint64_t seed,
                      const ToleranceConfig& tol) {
    tol.validate();
    if (n < 2 || n > 64) throw BadArgumentsError("run_suite: n must be in 2..64");
    if (trials < 1) throw BadArgumentsError("run_suite: trials must be at least 1");

    std::vector<std::string> names;
    if (name == "all") {
        names = {"lemmas", "atlas", "midpoint", "dedekind"};
    } else {
        suite_fn(name);  // validates
        names = {name};
    }

    SuiteReport report;
    report.suite = name;
    report.trials = trials;
    report.seed = seed;
    auto start = std::chrono::steady_clock::now();

    for (const std::string& sub : names) {
        TrialFn fn = suite_fn(sub);
        for (int i = 0; i < trials; ++i) {
            std::mt19937_64 eng(seed + static_cast<std::uint64_t>(i));
            Recorder rec{report.worst_residuals};
            try {
                fn(n, eng, rec, tol);
            } catch (const std::exception&) {
                rec.ok = false;
                report.worst_residuals["exception"] = 1.0;
            }
            if (!rec.ok) ++report.failures;
        }
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string to_json(const SuiteReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["trials"] = report.trials;
    j["failures"] = report.failures;
    nlohmann::ordered_json res = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.worst_residuals) res[k] = v;
    j["worst_residuals"] = res;
    j["seed"] = report.seed;
    j["elapsed_seconds"] = report.elapsed_seconds;
    return j.dump(2);
}

}  // namespace projgeom
