#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seplinf/candidate_set.hpp"
#include "seplinf/catalog.hpp"
#include "seplinf/cycle.hpp"
#include "seplinf/errors.hpp"
#include "seplinf/function_model.hpp"
#include "seplinf/lp_oracle.hpp"

namespace {

using namespace seplinf;
using nlohmann::json;

class StageTimer {
public:
    explicit StageTimer(bool enabled) : enabled_(enabled) {}

    template <typename Fn>
    auto run(const std::string& stage, Fn&& fn) {
        auto start = std::chrono::steady_clock::now();
        auto defer = [&] {
            auto stop = std::chrono::steady_clock::now();
            times_[stage] =
                std::chrono::duration<double, std::milli>(stop - start).count();
        };
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            defer();
        } else {
            auto out = fn();
            defer();
            return out;
        }
    }

    void attach(json& j) const {
        if (enabled_) j["timings_ms"] = times_;
    }

private:
    bool enabled_;
    std::map<std::string, double> times_;
};

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write to " + path);
    out << content << "\n";
}

DeltaReport run_check(const FunctionSource& f, int grid, double tol, json& j) {
    double use_tol = tol >= 0 ? tol : default_delta_tol(f);
    DeltaReport rep = check_delta_conditions(f, grid, use_tol);
    j["function"] = f.descriptor();
    j["grid"] = grid;
    j["tol"] = use_tol;
    j["satisfied_weak"] = rep.satisfied_weak;
    j["satisfied_strict"] = rep.satisfied_strict;
    j["worst_violation"] = rep.worst_violation;
    j["worst_axes"] = rep.worst_axes;
    j["worst_location"] = point_json(rep.worst_location);
    return rep;
}

GridSpec parse_grid_sizes(const std::string& s) {
    std::vector<int> sizes;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            sizes.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw usage_error("bad --grid component '" + part + "'");
        }
    }
    if (sizes.size() != 3) throw usage_error("--grid expects NX,NY,NZ");
    for (int n : sizes)
        if (n < 2) throw usage_error("--grid sizes must be at least 2");
    GridSpec g;
    g.A = GridSpec::uniform(sizes[0]).A;
    g.B = GridSpec::uniform(sizes[1]).A;
    g.C = GridSpec::uniform(sizes[2]).A;
    return g;
}

json dual_cycle_json(const LpSolution& sol) {
    WeightedPointSet cycle = extract_dual_cycle(sol);
    json dc;
    dc["points"] = json::array();
    dc["weights"] = json::array();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        dc["points"].push_back(point_json(cycle.points[i]));
        dc["weights"].push_back(cycle.weights[i].to_double());
    }
    return dc;
}

int cmd_check(const std::string& fn_spec, int grid, double tol, bool no_timings) {
    StageTimer timer(!no_timings);
    FunctionSource f = parse_function_spec(fn_spec);
    json j;
    DeltaReport rep = timer.run("check", [&] { return run_check(f, grid, tol, j); });
    timer.attach(j);
    std::cout << j.dump(2) << "\n";
    return rep.satisfied_weak ? 0 : 2;
}

int cmd_error(const std::string& fn_spec, int scan, double refine_tol,
              const std::string& report_path, bool force, bool lp_check,
              bool no_timings) {
    StageTimer timer(!no_timings);
    FunctionSource f = parse_function_spec(fn_spec);

    json delta_json;
    if (!force) {
        DeltaReport rep =
            timer.run("check", [&] { return run_check(f, 16, -1.0, delta_json); });
        if (!rep.satisfied_weak) {
            std::cerr << "condition check failed (worst violation "
                      << rep.worst_violation << " for " << rep.worst_axes
                      << "); rerun with --force to skip the gate\n";
            return 2;
        }
    }

    OptimizerConfig cfg;
    cfg.scan = scan;
    cfg.refine_tol = refine_tol;
    CandidateSet cs =
        timer.run("candidate_set", [&] { return build_candidate_set(f, cfg); });
    CatalogEvaluation ev =
        timer.run("catalog", [&] { return evaluate_catalog(f, cs); });

    std::printf("E = %.15g\n", ev.best_ratio);
    std::printf("best entry: %s\n", ev.best_id.c_str());

    json lp_json;
    if (lp_check) {
        LpSolution sol = timer.run("lp_check", [&] {
            return grid_error(f, GridSpec::from_candidate_set(cs));
        });
        bool agree = std::abs(ev.best_ratio - sol.t) <= 1e-6;
        lp_json["t"] = sol.t;
        lp_json["agreement"] = agree;
        lp_json["grid_sizes"] = {cs.Ux.size(), cs.Uy.size(), cs.Uz.size()};
        lp_json["dual_cycle"] = dual_cycle_json(sol);
        std::printf("lp t* = %.15g (%s)\n", sol.t,
                    agree ? "agrees within 1e-6" : "DISAGREES beyond 1e-6");
    }

    if (!report_path.empty()) {
        json j;
        j["function"] = f.descriptor();
        if (!delta_json.is_null()) j["delta"] = delta_json;
        j["candidate_set"] = json::parse(candidate_set_to_json(cs));
        j["E_formula"] = ev.best_ratio;
        j["best_entry"] = ev.best_id;
        json ratios = json::array();
        for (const EntryRatio& r : ev.ratios)
            ratios.push_back({{"id", r.id}, {"ratio", r.ratio}});
        j["ratios"] = std::move(ratios);
        if (!lp_json.is_null()) j["lp_check"] = lp_json;
        timer.attach(j);
        write_file(report_path, j.dump(2));
    }
    return 0;
}

int cmd_error_lp(const std::string& fn_spec, const std::string& grid_sizes,
                 bool grid_from_u, const std::string& out_path, bool no_timings) {
    StageTimer timer(!no_timings);
    FunctionSource f = parse_function_spec(fn_spec);
    if (grid_sizes.empty() == !grid_from_u)
        throw usage_error("choose exactly one of --grid NX,NY,NZ or --grid-from-u");

    GridSpec g;
    if (grid_from_u) {
        CandidateSet cs =
            timer.run("candidate_set", [&] { return build_candidate_set(f); });
        g = GridSpec::from_candidate_set(cs);
    } else {
        g = parse_grid_sizes(grid_sizes);
    }

    LpSolution sol = timer.run("lp", [&] { return grid_error(f, g); });
    std::printf("t* = %.15g\n", sol.t);
    std::printf("grid: %zu x %zu x %zu, active constraints: %d, pivots: %d\n",
                g.A.size(), g.B.size(), g.C.size(), sol.active_constraints,
                sol.simplex_pivots);
    if (!out_path.empty()) {
        json j = json::parse(lp_solution_to_json(sol));
        timer.attach(j);
        write_file(out_path, j.dump(2));
    }
    return 0;
}

int cmd_catalog_verify() {
    MatrixReport report = verify_catalog_against_matrix();
    std::cout << matrix_report_to_json(report) << "\n";
    bool ok = report.circuit_count == 123 && report.mismatches.empty();
    return ok ? 0 : 3;
}

int cmd_cycle_verify(const std::string& path) {
    CycleFile cf = read_cycle_file(path);
    json j;
    j["file"] = path;

    std::vector<json> nonzero;
    for (const PlaneSum& ps : plane_sums(cf.set)) {
        if (ps.sum.is_zero()) continue;
        nonzero.push_back({{"axis", std::string(1, "xyz"[ps.axis])},
                           {"coordinate", ps.coordinate},
                           {"sum", ps.sum.str()}});
    }
    if (!nonzero.empty()) {
        j["valid"] = false;
        j["nonzero_plane_sums"] = nonzero;
        std::cout << j.dump(2) << "\n";
        return 4;
    }

    WeightedPointSet stripped = cf.set;
    stripped.strip_zeros();
    if (stripped.size() == 0) {
        j["valid"] = false;
        j["nonzero_plane_sums"] = json::array();
        j["note"] = "all weights are zero";
        std::cout << j.dump(2) << "\n";
        return 4;
    }
    CycleVector cycle = CycleVector::from_weighted(stripped);
    j["valid"] = true;
    j["weak"] = cf.has_zero_weight;
    j["minimal"] = is_minimal(cycle);
    j["structure_violations"] = structure_check(cycle);
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact best uniform approximation by sums of univariate functions"};
    app.require_subcommand(1);

    bool no_timings = false;
    app.add_flag("--no-timings", no_timings, "omit wall-clock timings from output");

    std::string fn_spec, report_path, grid_sizes, out_path, cycle_path;
    int check_grid = 16, scan = 33;
    double tol = -1.0, refine_tol = 1e-7;
    bool force = false, lp_check = false, grid_from_u = false;

    CLI::App* check = app.add_subcommand(
        "check", "verify the nonnegative second mixed-difference conditions");
    check->add_option("--fn", fn_spec, "builtin:NAME[:k=v,...] or grid:PATH")->required();
    check->add_option("--grid", check_grid, "check resolution per axis (default 16)");
    check->add_option("--tol", tol, "violation tolerance (default by source kind)");

    CLI::App* error = app.add_subcommand(
        "error", "exact approximation error via the candidate-set formula");
    error->add_option("--fn", fn_spec, "builtin:NAME[:k=v,...] or grid:PATH")->required();
    error->add_option("--scan", scan, "maximizer grid resolution (default 33)");
    error->add_option("--refine-tol", refine_tol,
                      "maximizer refinement tolerance (default 1e-7)");
    error->add_option("--report", report_path, "write a full JSON run report");
    error->add_flag("--force", force, "skip the condition-check gate");
    error->add_flag("--lp-check", lp_check,
                    "cross-check against the LP oracle on the candidate grid");

    CLI::App* error_lp = app.add_subcommand(
        "error-lp", "grid approximation error via the Chebyshev linear program");
    error_lp->add_option("--fn", fn_spec, "builtin:NAME[:k=v,...] or grid:PATH")
        ->required();
    error_lp->add_option("--grid", grid_sizes, "uniform grid sizes NX,NY,NZ");
    error_lp->add_flag("--grid-from-u", grid_from_u,
                       "use the candidate-set projections as the grid");
    error_lp->add_option("--out", out_path, "write the LP solution as JSON");

    CLI::App* catalog_verify = app.add_subcommand(
        "catalog-verify", "regenerate the 123-entry table from the face-count matrix");
    (void)catalog_verify;

    CLI::App* cycle_verify =
        app.add_subcommand("cycle-verify", "validate a cycle file and report structure");
    cycle_verify->add_option("--file", cycle_path, "cycle JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (*check) return cmd_check(fn_spec, check_grid, tol, no_timings);
        if (*error)
            return cmd_error(fn_spec, scan, refine_tol, report_path, force, lp_check,
                             no_timings);
        if (*error_lp)
            return cmd_error_lp(fn_spec, grid_sizes, grid_from_u, out_path, no_timings);
        if (*catalog_verify) return cmd_catalog_verify();
        if (*cycle_verify) return cmd_cycle_verify(cycle_path);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 64;
}
