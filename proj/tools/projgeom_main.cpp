#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "projgeom/affine_atlas.hpp"
#include "projgeom/dedekind.hpp"
#include "projgeom/errors.hpp"
#include "projgeom/matrix_io.hpp"
#include "projgeom/pair_geometry.hpp"
#include "projgeom/projection.hpp"
#include "projgeom/suites.hpp"

namespace {

using namespace projgeom;

ToleranceConfig parse_tolerances(const std::vector<std::string>& overrides) {
    ToleranceConfig tol;
    for (const std::string& item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw BadArgumentsError("--tol expects name=value, got '" + item + "'");
        std::string name = item.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw BadArgumentsError("--tol " + name + ": bad numeric value");
        }
        if (name == "rank_tol") {
            tol.rank_tol = value;
        } else if (name == "residual_tol") {
            tol.residual_tol = value;
        } else if (name == "inv_tol") {
            tol.inv_tol = value;
        } else {
            throw BadArgumentsError("--tol: unknown tolerance '" + name + "'");
        }
    }
    tol.validate();
    return tol;
}

std::pair<Projection, Projection> read_pair(const std::string& path, const ToleranceConfig& tol) {
    std::vector<ComplexMatrix> blocks = read_cplxmat_blocks_file(path);
    if (blocks.size() != 2)
        throw BadArgumentsError(path + ": expected exactly 2 matrix blocks, found " +
                                std::to_string(blocks.size()));
    return {Projection(std::move(blocks[0]), tol), Projection(std::move(blocks[1]), tol)};
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw BadArgumentsError("cannot open '" + output + "' for writing");
    out << text;
    if (!out) throw BadArgumentsError("failed writing '" + output + "'");
}

// Coordinates of q in the chart at p: the compressed classical block when p
// is a standard coordinate projection, the ambient corner matrix otherwise.
ComplexMatrix coords_matrix(const Projection& p, const Projection& q,
                            const ToleranceConfig& tol) {
    if (auto idx = as_standard_chart(p)) return classical_affine_coords(q, *idx, tol);
    return phi(p, q, tol).x();
}

// Inverse of coords_matrix: accepts the ambient n x n corner matrix for any
// basepoint, or the compressed (n-k) x k block for a standard basepoint.
Projection reconstruct_matrix(const Projection& p, const ComplexMatrix& x,
                              const ToleranceConfig& tol) {
    const Eigen::Index n = p.dim();
    if (x.rows() == n && x.cols() == n)
        return phi_inverse(AffineCoordinates(p, x, tol), tol);
    if (auto idx = as_standard_chart(p)) {
        if (x.rows() == n - idx->k() && x.cols() == idx->k())
            return projection_from_frame(pivot_frame(*idx, x), tol);
    }
    throw BadArgumentsError("coordinate block shape does not match the basepoint");
}

int run_check(const std::string& suite, Eigen::Index n, int trials, std::uint64_t seed,
              const std::vector<std::string>& tol_overrides) {
    SuiteReport report = run_suite(suite, n, trials, seed, parse_tolerances(tol_overrides));
    std::cout << to_json(report) << "\n";
    return report.failures == 0 ? 0 : 1;
}

int run_midpoint(const std::string& input, const std::string& output,
                 const std::vector<std::string>& tol_overrides) {
    ToleranceConfig tol = parse_tolerances(tol_overrides);
    auto [p, q] = read_pair(input, tol);
    Projection r = find_common_ball(p, q, tol);
    emit(output, to_cplxmat_string(r.matrix()));
    return 0;
}

int run_halmos(const std::string& input, const std::string& output,
               const std::vector<std::string>& tol_overrides) {
    ToleranceConfig tol = parse_tolerances(tol_overrides);
    auto [p, q] = read_pair(input, tol);
    HalmosForm h = halmos_form(p, q, tol);
    std::string text;
    char buf[64];
    for (double theta : h.angles) {
        std::snprintf(buf, sizeof buf, "%.17g\n", theta);
        text += buf;
    }
    emit(output, text);
    return 0;
}

int run_path(const std::string& input, const std::string& output, int samples,
             const std::vector<std::string>& tol_overrides) {
    ToleranceConfig tol = parse_tolerances(tol_overrides);
    if (samples < 1) throw BadArgumentsError("--samples must be at least 1");
    auto [p, q] = read_pair(input, tol);
    std::string text;
    for (int j = 0; j <= samples; ++j) {
        double t = static_cast<double>(j) / samples;
        text += to_cplxmat_string(projection_path(p, q, t, tol).matrix());
    }
    emit(output, text);
    return 0;
}

int run_chart(const std::string& mode, const std::string& input, const std::string& output,
              const std::vector<std::string>& tol_overrides) {
    ToleranceConfig tol = parse_tolerances(tol_overrides);
    std::vector<ComplexMatrix> blocks = read_cplxmat_blocks_file(input);
    if (mode == "coords") {
        if (blocks.size() != 2)
            throw BadArgumentsError("chart coords: expected 2 blocks (basepoint, projection)");
        Projection p(std::move(blocks[0]), tol);
        Projection q(std::move(blocks[1]), tol);
        emit(output, to_cplxmat_string(coords_matrix(p, q, tol)));
        return 0;
    }
    if (mode == "reconstruct") {
        if (blocks.size() != 2)
            throw BadArgumentsError("chart reconstruct: expected 2 blocks (basepoint, coords)");
        Projection p(std::move(blocks[0]), tol);
        emit(output, to_cplxmat_string(reconstruct_matrix(p, blocks[1], tol).matrix()));
        return 0;
    }
    if (mode == "transition") {
        if (blocks.size() != 3)
            throw BadArgumentsError(
                "chart transition: expected 3 blocks (basepoint 1, basepoint 2, coords)");
        Projection p1(std::move(blocks[0]), tol);
        Projection p2(std::move(blocks[1]), tol);
        Projection q = reconstruct_matrix(p1, blocks[2], tol);
        double gap = spectral_norm(ComplexMatrix(q.matrix() - p2.matrix()));
        if (gap >= 1.0)
            throw NotInOverlapError("chart transition: ||q - p2|| = " + std::to_string(gap));
        emit(output, to_cplxmat_string(coords_matrix(p2, q, tol)));
        return 0;
    }
    throw BadArgumentsError("chart: unknown mode '" + mode + "'");
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string support_line(const ValuationProjection& s) {
    std::string line;
    for (Natural x : support_prefix(s, 16)) {
        if (!line.empty()) line += ' ';
        line += std::to_string(x);
    }
    return line;
}

int run_dedekind_demo() {
    DedekindPair d = dedekind_pair();
    std::cout << "p: " << to_string(d.p) << "\n";
    std::cout << "q: " << to_string(d.q) << "\n";
    std::cout << "leq(p,q): " << flag(d.leq_pq) << "\n";
    std::cout << "mv_equiv(p,q): " << flag(d.equivalent_pq) << "\n";
    std::cout << "distinct: " << flag(d.distinct) << "\n";
    std::cout << "four_way_equivalent: " << flag(d.four_way_equivalent) << "\n";
    std::cout << "support(p): " << support_line(d.p) << "\n";
    std::cout << "support(q): " << support_line(d.q) << "\n";
    return 0;
}

int run_dedekind_family(Natural k) {
    auto family = ball_disjoint_family(k);
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::cout << "p_" << (i + 1) << ": " << to_string(family[i])
                  << " | support: " << support_line(family[i]) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projection-pair geometry toolkit"};
    app.require_subcommand(1);

    std::string suite = "all";
    Eigen::Index n = 8;
    int trials = 100;
    std::uint64_t seed = 1;
    int samples = 100;
    std::string input;
    std::string output;
    std::string chart_mode;
    std::uint64_t family_k = 5;
    std::vector<std::string> tol_overrides;

    CLI::App* check = app.add_subcommand("check", "run a property suite, print a JSON report");
    check->add_option("suite", suite, "one of: lemmas, atlas, midpoint, dedekind, all")
        ->required()
        ->check(CLI::IsMember({"lemmas", "atlas", "midpoint", "dedekind", "all"}));
    check->add_option("--n", n, "matrix dimension (2..64)");
    check->add_option("--trials", trials, "trials per suite");
    check->add_option("--seed", seed, "base seed; trial i uses seed + i");
    check->add_option("--tol", tol_overrides, "tolerance override name=value");

    CLI::App* midpoint =
        app.add_subcommand("midpoint", "projection within distance 1/sqrt(2) of both inputs");
    midpoint->add_option("--input", input, "CPLXMAT file with two projection blocks")
        ->required();
    midpoint->add_option("--output", output, "output file (default: stdout)");
    midpoint->add_option("--tol", tol_overrides, "tolerance override name=value");

    CLI::App* halmos = app.add_subcommand("halmos", "principal angles of a projection pair");
    halmos->add_option("--input", input, "CPLXMAT file with two projection blocks")
        ->required();
    halmos->add_option("--output", output, "output file (default: stdout)");
    halmos->add_option("--tol", tol_overrides, "tolerance override name=value");

    CLI::App* path = app.add_subcommand("path", "projection-valued path between the inputs");
    path->add_option("--input", input, "CPLXMAT file with two projection blocks")->required();
    path->add_option("--samples", samples, "emit samples+1 projections at uniform t");
    path->add_option("--output", output, "output file (default: stdout)");
    path->add_option("--tol", tol_overrides, "tolerance override name=value");

    CLI::App* chart = app.add_subcommand("chart", "affine chart coordinates");
    chart->add_option("mode", chart_mode, "coords | reconstruct | transition")
        ->required()
        ->check(CLI::IsMember({"coords", "reconstruct", "transition"}));
    chart->add_option("--input", input, "CPLXMAT file with the blocks for the mode")
        ->required();
    chart->add_option("--output", output, "output file (default: stdout)");
    chart->add_option("--tol", tol_overrides, "tolerance override name=value");

    CLI::App* dedekind = app.add_subcommand("dedekind", "decidable projection-lattice model");
    CLI::App* demo = dedekind->add_subcommand("demo", "the pair p <= q, p ~ q, p != q");
    CLI::App* family =
        dedekind->add_subcommand("family", "increasing pairwise-equivalent projections");
    family->add_option("--k", family_k, "family size (2..30)");
    dedekind->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return run_check(suite, n, trials, seed, tol_overrides);
        if (*midpoint) return run_midpoint(input, output, tol_overrides);
        if (*halmos) return run_halmos(input, output, tol_overrides);
        if (*path) return run_path(input, output, samples, tol_overrides);
        if (*chart) return run_chart(chart_mode, input, output, tol_overrides);
        if (*demo) return run_dedekind_demo();
        if (*family) {
            if (family_k < 2 || family_k > 30)
                throw BadArgumentsError("dedekind family: --k must be in 2..30");
            return run_dedekind_family(family_k);
        }
    } catch (const BadArgumentsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
