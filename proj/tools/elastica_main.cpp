// Command-line surface: construct the optimal domain, evaluate functionals
// on bodies, tabulate the E(alpha) calculus, run the independent solvers and
// the full verification suite.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error,
// 3 input-validation error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "elastica/analysis.hpp"
#include "elastica/io.hpp"
#include "elastica/optimal_arc.hpp"
#include "elastica/quadrature.hpp"
#include "elastica/solver.hpp"
#include "elastica/verify.hpp"

namespace {

using namespace elastica;

int cmd_omega_star(int n, double h, const std::string& format, const std::string& out_path) {
    const arc::OptimalDomain dom = arc::build_omega_star(n, h);
    if (format == "csv") {
        io::write_body_csv(out_path, dom.body);
    } else if (format == "json") {
        io::write_body_json(out_path, dom.body);
    } else {
        io::write_domain_svg(out_path, dom);
    }
    std::cout << io::functionals_json(geom::functionals(dom.body)) << "\n";
    return 0;
}

int cmd_functionals(const std::string& in_path) {
    geom::ConvexBody body;
    try {
        body = io::read_body_auto(in_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line << ")\n";
        return 2;
    }
    try {
        body.validate();
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what();
        if (e.index >= 0) std::cerr << " (vertex " << e.index << ")";
        std::cerr << "\n";
        return 3;
    }
    std::cout << io::inequality_json(analysis::inequality_suite(body)) << "\n";
    return 0;
}

int cmd_table_ealpha(int grid, const std::string& out_path) {
    const std::vector<analysis::EAlphaRow> rows = analysis::ealpha_table(grid);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return 2;
    }
    out << io::ealpha_csv(rows);

    bool concave = true;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i].E < 0.5 * (rows[i - 1].E + rows[i + 1].E) - 1e-12) concave = false;
    }
    bool esecond_negative = true;
    for (const analysis::EAlphaRow& r : rows) {
        if (!(r.Esecond < 0.0)) esecond_negative = false;
    }
    const analysis::SubadditivityReport sub = analysis::subadditivity_scan(std::max(grid, 50));
    std::cout << "{\"rows\":" << rows.size() << ",\"min_subadditivity_gap\":" << fmt9(sub.min_gap)
              << ",\"concave_on_grid\":" << (concave ? "true" : "false")
              << ",\"Esecond_all_negative\":" << (esecond_negative ? "true" : "false") << "}\n";
    if (!concave || !esecond_negative || !(sub.min_gap > 0.0)) {
        std::cerr << "invariant failure: concavity/sub-additivity summary\n";
        return 1;
    }
    return 0;
}

int cmd_solve(double alpha, int n, const std::string& mode, bool no_convexity) {
    const double closed = arc::energy_closed_form(alpha);
    if (mode == "direct") {
        const double chord = 2.0 * std::sin(alpha);
        const solver::ElasticaSolution sol =
            solver::solve_free_length(alpha, {chord * (1.0 + 1e-4), chord + kPi}, n, !no_convexity);
        std::cout << "{\"mode\":\"direct\",\"solution\":" << io::solution_json(sol, false)
                  << ",\"closed_form\":" << fmt9(closed)
                  << ",\"rel_gap\":" << fmt9((sol.energy - closed) / closed) << "}\n";
        return 0;
    }
    // shooting mode: the pendulum family exists for the diametric case only
    if (std::abs(alpha - kHalfPi) > 1e-9) {
        std::cerr << "error: --mode shoot requires alpha = pi/2\n";
        return 2;
    }
    const double L0 = arc::arc_length(kHalfPi);
    double best_energy = std::numeric_limits<double>::infinity();
    solver::ShootingSolution best;
    double best_L = 0.0;
    for (int i = 1; i <= 12; ++i) {
        const double L = kPi + (L0 - kPi) * double(i) / 12.0;
        const solver::ShootingSolution sol = solver::solve_bvp_via_shooting(L);
        if (sol.converged && sol.energy < best_energy) {
            best_energy = sol.energy;
            best = sol;
            best_L = L;
        }
    }
    std::cout << "{\"mode\":\"shoot\",\"L\":" << fmt9(best_L) << ",\"c\":" << fmt9(best.c)
              << ",\"a0\":" << fmt9(best.a0) << ",\"energy\":" << fmt9(best.energy)
              << ",\"closed_form\":" << fmt9(closed)
              << ",\"rel_gap\":" << fmt9((best.energy - closed) / closed)
              << ",\"residuals\":[" << fmt9(best.res_length) << ',' << fmt9(best.res_constraint)
              << "]}\n";
    return 0;
}

int cmd_verify(const std::string& level) {
    verify::Options opt;
    opt.full = (level == "full");
    const std::vector<verify::CriterionResult> results = verify::run_suite(opt, &std::cerr);
    std::cout << verify::suite_json(results, opt.full) << "\n";
    return verify::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal convex domains for the inradius-constrained elastic energy"};
    app.require_subcommand(1);

    int n = 4000;
    double h = 0.0;
    std::string format = "csv";
    std::string out_path;
    auto* omega = app.add_subcommand("omega-star", "build the optimal domain and report its functionals");
    omega->set_help_flag("--help", "print help");  // frees -h/--h for the segment flag
    omega->add_option("--n", n, "arc samples per half (>= 64)")->check(CLI::Range(64, 2000000));
    omega->add_option("--h", h, "stadium segment half-length (>= 0)")->check(CLI::NonNegativeNumber);
    omega->add_option("--format", format, "csv | json | svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    omega->add_option("--out", out_path, "output path (default omega_star.<format>)");

    std::string in_path;
    auto* functionals = app.add_subcommand("functionals", "evaluate a body file and the five inequalities");
    functionals->add_option("--in", in_path, "body file (.csv or .json)")->required();

    int grid = 100;
    std::string table_out = "ealpha.csv";
    auto* table = app.add_subcommand("table-ealpha", "tabulate E, E', E'', h, R over alpha");
    table->add_option("--grid", grid, "number of rows")->check(CLI::Range(2, 1000000));
    table->add_option("--out", table_out, "CSV output path");

    double alpha = kHalfPi;
    int solve_n = 800;
    std::string mode = "direct";
    bool no_convexity = false;
    auto* solve = app.add_subcommand("solve", "solve the arc problem numerically and compare to the closed form");
    solve->add_option("--alpha", alpha, "half contact angle in (0, pi/2]")->required();
    solve->add_option("--n", solve_n, "grid cells (>= 32)")->check(CLI::Range(32, 1000000));
    solve->add_option("--mode", mode, "direct | shoot")->check(CLI::IsMember({"direct", "shoot"}));
    solve->add_flag("--no-convexity", no_convexity, "drop the monotone-theta projection");

    std::string level = "quick";
    auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
    verify_cmd->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (omega->parsed()) {
            if (out_path.empty()) out_path = "omega_star." + format;
            return cmd_omega_star(n, h, format, out_path);
        }
        if (functionals->parsed()) return cmd_functionals(in_path);
        if (table->parsed()) return cmd_table_ealpha(grid, table_out);
        if (solve->parsed()) {
            if (!(alpha > 0.0 && alpha <= kHalfPi + 1e-12)) {
                std::cerr << "error: alpha must be in (0, pi/2]\n";
                return 2;
            }
            return cmd_solve(alpha, solve_n, mode, no_convexity);
        }
        if (verify_cmd->parsed()) return cmd_verify(level);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const solver::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << io::solution_json(e.best, false) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
