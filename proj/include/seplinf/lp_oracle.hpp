#pragma once

#include <string>
#include <vector>

#include "seplinf/candidate_set.hpp"
#include "seplinf/cycle.hpp"
#include "seplinf/function_model.hpp"
#include "seplinf/point.hpp"

namespace seplinf {

// Axis coordinate lists, each sorted, duplicate-free, containing 0 and 1.
struct GridSpec {
    std::vector<double> A, B, C;

    static GridSpec uniform(int n);
    static GridSpec from_candidate_set(const CandidateSet& cs);

    void validate() const; // throws std::invalid_argument
    std::size_t point_count() const { return A.size() * B.size() * C.size(); }
};

struct LpSolution {
    GridSpec grid;
    double t = 0.0;
    std::vector<double> phi, psi, omega; // aligned with grid.A / B / C

    struct DualTerm {
        Point3 point;
        double lambda; // signed multiplier; plane sums vanish within 1e-9
    };
    std::vector<DualTerm> dual;

    int outer_iterations = 0;
    int simplex_pivots = 0;
    int active_constraints = 0;
};

// Chebyshev fit of phi+psi+omega to f on the grid: minimize t subject to
// |f - phi - psi - omega| <= t, gauge phi(0)=psi(0)=0. Active-set outer loop
// over the 2|A||B||C| constraints, dense two-phase simplex inside.
// Guard: |A||B||C| <= 10^6.
LpSolution grid_error(const FunctionSource& f, const GridSpec& g);

// Signed dual multipliers normalized to total mass one; empty when t* = 0.
// The result is a weak projection cycle whose ratio reproduces t*.
WeightedPointSet extract_dual_cycle(const LpSolution& sol);

// Errors for a nested grid sequence; nondecreasing, each a lower bound for
// the cube error. Throws std::invalid_argument if the nesting fails.
std::vector<double> refine_and_bound(const FunctionSource& f,
                                     const std::vector<GridSpec>& grids);

std::string lp_solution_to_json(const LpSolution& sol);

} // namespace seplinf
