#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "seplinf/catalog.hpp"
#include "seplinf/errors.hpp"
#include "seplinf/lp_oracle.hpp"

using namespace seplinf;

TEST_CASE("grid specs validate their axis lists") {
    GridSpec g = GridSpec::uniform(3);
    CHECK(g.A == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(g.point_count() == 27);
    g.validate();

    GridSpec bad;
    bad.A = {0.0, 1.0};
    bad.B = {0.0, 1.0};
    bad.C = {0.5, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.C = {0.0, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.C = {1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("corner grid recovers the product_xz error") {
    auto f = parse_function_spec("builtin:product_xz");
    auto sol = grid_error(f, GridSpec::uniform(2));
    CHECK(sol.t == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(sol.phi.size() == 2);
    CHECK(sol.phi[0] == doctest::Approx(0.0));
    CHECK(sol.psi[0] == doctest::Approx(0.0));
    CHECK(sol.outer_iterations >= 1);
}

TEST_CASE("corner grid recovers the product_xyz error") {
    auto f = parse_function_spec("builtin:product_xyz");
    auto sol = grid_error(f, GridSpec::uniform(2));
    CHECK(sol.t == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("separable functions fit exactly") {
    auto f = parse_function_spec("builtin:separable_mix:seed=6");
    auto sol = grid_error(f, GridSpec::uniform(5));
    CHECK(sol.t <= 1e-9);
    CHECK(extract_dual_cycle(sol).size() == 0);
}

TEST_CASE("fitted parts reproduce the reported error on the grid") {
    auto f = parse_function_spec("builtin:class_mix:seed=9");
    auto g = GridSpec::uniform(4);
    auto sol = grid_error(f, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.A.size(); ++i)
        for (std::size_t j = 0; j < g.B.size(); ++j)
            for (std::size_t k = 0; k < g.C.size(); ++k) {
                double r = f(g.A[i], g.B[j], g.C[k]) - sol.phi[i] - sol.psi[j] - sol.omega[k];
                worst = std::max(worst, std::abs(r));
            }
    CHECK(worst == doctest::Approx(sol.t).epsilon(1e-9));
}

TEST_CASE("dual cycle has unit mass and reproduces the error") {
    auto f = parse_function_spec("builtin:product_xz");
    auto sol = grid_error(f, GridSpec::uniform(2));
    auto cycle = extract_dual_cycle(sol);
    REQUIRE(cycle.size() >= 4);
    CHECK(cycle.weight_mass() == Rational(1));
    CHECK(is_weak_cycle(cycle));
    CHECK(golomb_ratio(cycle, f) == doctest::Approx(sol.t).epsilon(1e-7));

    for (const auto& p : cycle.points) {
        CHECK(std::count(sol.grid.A.begin(), sol.grid.A.end(), p.x) == 1);
        CHECK(std::count(sol.grid.B.begin(), sol.grid.B.end(), p.y) == 1);
        CHECK(std::count(sol.grid.C.begin(), sol.grid.C.end(), p.z) == 1);
    }
}

TEST_CASE("candidate grid matches the closed-form error on the piecewise builtin") {
    auto f = parse_function_spec("builtin:remark41_piecewise");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    auto sol = grid_error(f, GridSpec::from_candidate_set(cs));
    CHECK(std::abs(sol.t - eval.best_ratio) <= 1e-6);
}

TEST_CASE("weak duality holds between catalog ratios and the grid error") {
    auto f = parse_function_spec("builtin:class_mix:seed=12");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    auto sol = grid_error(f, GridSpec::from_candidate_set(cs));
    CHECK(eval.best_ratio <= sol.t + 1e-7);
    CHECK(std::abs(eval.best_ratio - sol.t) <= 1e-5);
}

TEST_CASE("refined nested grids give nondecreasing lower bounds") {
    auto f = parse_function_spec("builtin:class_mix:seed=8");
    std::vector<GridSpec> grids{GridSpec::uniform(3), GridSpec::uniform(5), GridSpec::uniform(9)};
    auto bounds = refine_and_bound(f, grids);
    REQUIRE(bounds.size() == 3);
    CHECK(bounds[0] <= bounds[1] + 1e-9);
    CHECK(bounds[1] <= bounds[2] + 1e-9);

    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    CHECK(bounds[2] <= eval.best_ratio + 1e-7);
}

TEST_CASE("refine_and_bound rejects non-nested sequences") {
    auto f = parse_function_spec("builtin:product_xz");
    std::vector<GridSpec> grids{GridSpec::uniform(3), GridSpec::uniform(4)};
    CHECK_THROWS_AS(refine_and_bound(f, grids), std::invalid_argument);
}

TEST_CASE("constant fits on refined grids stay put") {
    auto f = parse_function_spec("builtin:product_xz");
    auto bounds = refine_and_bound(
        f, {GridSpec::uniform(2), GridSpec::uniform(3), GridSpec::uniform(5)});
    for (double b : bounds) CHECK(b == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("grid guard rejects oversized products") {
    auto f = parse_function_spec("builtin:product_xz");
    CHECK_THROWS_AS(grid_error(f, GridSpec::uniform(101)), guard_error);
}

TEST_CASE("solution JSON carries the tables and the dual cycle") {
    auto f = parse_function_spec("builtin:product_xz");
    auto sol = grid_error(f, GridSpec::uniform(2));
    auto json = lp_solution_to_json(sol);
    CHECK(json.find("\"t\"") != std::string::npos);
    CHECK(json.find("\"phi\"") != std::string::npos);
    CHECK(json.find("\"dual_cycle\"") != std::string::npos);
    CHECK(json.find("\"stats\"") != std::string::npos);
}
