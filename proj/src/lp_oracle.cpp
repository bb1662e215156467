#include "seplinf/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seplinf/errors.hpp"
#include "seplinf/parallel.hpp"

namespace seplinf {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kOptTol = 1e-9;
constexpr double kViolationTol = 1e-10;

void validate_axis(const std::vector<double>& v, const char* name) {
    if (v.size() < 2)
        throw std::invalid_argument(std::string(name) + " needs at least two coordinates");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0 || v[i] > 1.0)
            throw std::invalid_argument(std::string(name) + " has a coordinate outside [0,1]");
        if (i > 0 && v[i] <= v[i - 1])
            throw std::invalid_argument(std::string(name) + " must be strictly increasing");
    }
    if (v.front() != 0.0 || v.back() != 1.0)
        throw std::invalid_argument(std::string(name) + " must contain 0 and 1");
}

// Dense two-phase tableau simplex for min cost.y s.t. Ey = q (q >= 0), y >= 0,
// with Bland's rule. Returns basic solution, objective and the multipliers
// pi_r read from the artificial columns' reduced costs.
struct SimplexResult {
    std::vector<double> y;
    std::vector<double> pi;
    double objective = 0.0;
    int pivots = 0;
};

class DenseSimplex {
public:
    DenseSimplex(std::vector<std::vector<double>> e, std::vector<double> q,
                 std::vector<double> cost)
        : rows_(e.size()), ycols_(cost.size()), e_(std::move(e)), q_(std::move(q)),
          cost_(std::move(cost)) {}

    SimplexResult solve() {
        build_tableau();
        run_phase(true);
        double infeas = tableau_[rows_][total_cols_];
        if (infeas > 1e-7)
            throw std::runtime_error("subproblem infeasible (phase 1 residual " +
                                     std::to_string(infeas) + ")");
        expel_artificials();
        run_phase(false);

        SimplexResult r;
        r.pivots = pivots_;
        r.y.assign(ycols_, 0.0);
        for (std::size_t row = 0; row < rows_; ++row)
            if (basis_[row] < ycols_) r.y[basis_[row]] = tableau_[row][total_cols_];
        r.pi.assign(rows_, 0.0);
        for (std::size_t row = 0; row < rows_; ++row)
            r.pi[row] = -tableau_[rows_][ycols_ + row];
        r.objective = -tableau_[rows_][total_cols_];
        return r;
    }

private:
    void build_tableau() {
        total_cols_ = ycols_ + rows_;
        tableau_.assign(rows_ + 1, std::vector<double>(total_cols_ + 1, 0.0));
        basis_.assign(rows_, 0);
        for (std::size_t row = 0; row < rows_; ++row) {
            for (std::size_t c = 0; c < ycols_; ++c) tableau_[row][c] = e_[row][c];
            tableau_[row][ycols_ + row] = 1.0;
            tableau_[row][total_cols_] = q_[row];
            basis_[row] = ycols_ + row;
        }
    }

    // Rebuilds the cost row for the phase, priced out against the basis.
    void price_out(bool phase1) {
        auto& z = tableau_[rows_];
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t c = 0; c < total_cols_; ++c) z[c] = col_cost(c, phase1);
        for (std::size_t row = 0; row < rows_; ++row) {
            double cb = col_cost(basis_[row], phase1);
            if (cb == 0.0) continue;
            for (std::size_t c = 0; c <= total_cols_; ++c)
                z[c] -= cb * tableau_[row][c];
        }
    }

    double col_cost(std::size_t c, bool phase1) const {
        if (phase1) return c >= ycols_ ? 1.0 : 0.0;
        return c < ycols_ ? cost_[c] : 0.0;
    }

    void run_phase(bool phase1) {
        price_out(phase1);
        const int cap = 50000;
        for (int iter = 0; iter < cap; ++iter) {
            // Bland: lowest-index improving column; artificials never re-enter
            // in phase 2.
            std::size_t enter = total_cols_;
            for (std::size_t c = 0; c < total_cols_; ++c) {
                if (!phase1 && c >= ycols_) break;
                if (is_basic(c)) continue;
                if (tableau_[rows_][c] < -kOptTol) {
                    enter = c;
                    break;
                }
            }
            if (enter == total_cols_) return;

            std::size_t leave = rows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t row = 0; row < rows_; ++row) {
                double a = tableau_[row][enter];
                if (a <= kPivotTol) continue;
                double ratio = tableau_[row][total_cols_] / a;
                if (ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 &&
                     (leave == rows_ || basis_[row] < basis_[leave]))) {
                    best_ratio = ratio;
                    leave = row;
                }
            }
            if (leave == rows_)
                throw std::runtime_error("subproblem unbounded");
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex stalled despite anti-cycling rule");
    }

    bool is_basic(std::size_t c) const {
        for (std::size_t row = 0; row < rows_; ++row)
            if (basis_[row] == c) return true;
        return false;
    }

    // Degenerate pivots that remove artificials left basic at zero after
    // phase 1; otherwise their values could grow again during phase 2. A row
    // with no usable coefficient is a redundant equality and stays inert.
    void expel_artificials() {
        for (std::size_t row = 0; row < rows_; ++row) {
            if (basis_[row] < ycols_) continue;
            for (std::size_t c = 0; c < ycols_; ++c) {
                if (std::abs(tableau_[row][c]) > kPivotTol && !is_basic(c)) {
                    pivot(row, c);
                    break;
                }
            }
        }
    }

    void pivot(std::size_t leave, std::size_t enter) {
        ++pivots_;
        double p = tableau_[leave][enter];
        for (std::size_t c = 0; c <= total_cols_; ++c) tableau_[leave][c] /= p;
        for (std::size_t row = 0; row <= rows_; ++row) {
            if (row == leave) continue;
            double factor = tableau_[row][enter];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= total_cols_; ++c)
                tableau_[row][c] -= factor * tableau_[leave][c];
        }
        basis_[leave] = enter;
    }

    std::size_t rows_, ycols_, total_cols_ = 0;
    std::vector<std::vector<double>> e_;
    std::vector<double> q_;
    std::vector<double> cost_;
    std::vector<std::vector<double>> tableau_;
    std::vector<std::size_t> basis_;
    int pivots_ = 0;
};

struct Constraint {
    int i, j, k; // grid indices
    int s;       // +1 or -1
};

} // namespace

GridSpec GridSpec::uniform(int n) {
    if (n < 2) throw std::invalid_argument("uniform grid needs n >= 2");
    GridSpec g;
    for (int i = 0; i < n; ++i) g.A.push_back(static_cast<double>(i) / (n - 1));
    g.A.back() = 1.0;
    g.B = g.A;
    g.C = g.A;
    return g;
}

GridSpec GridSpec::from_candidate_set(const CandidateSet& cs) {
    GridSpec g{cs.Ux, cs.Uy, cs.Uz};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    validate_axis(A, "A");
    validate_axis(B, "B");
    validate_axis(C, "C");
}

LpSolution grid_error(const FunctionSource& f, const GridSpec& g) {
    g.validate();
    if (g.point_count() > 1000000)
        throw guard_error("grid has " + std::to_string(g.point_count()) +
                          " points; the limit is 10^6");

    const std::size_t nA = g.A.size(), nB = g.B.size(), nC = g.C.size();
    const std::size_t nvar = 1 + (nA - 1) + (nB - 1) + nC;
    const std::size_t phi_base = 1, psi_base = phi_base + (nA - 1),
                      omega_base = psi_base + (nB - 1);

    // f cached over the grid; x outermost, z innermost.
    std::vector<double> fv(nA * nB * nC);
    parallel_for(nA, [&](std::size_t i) {
        for (std::size_t j = 0; j < nB; ++j)
            for (std::size_t k = 0; k < nC; ++k)
                fv[(i * nB + j) * nC + k] = evaluate(f, {g.A[i], g.B[j], g.C[k]});
    });
    auto fval = [&](int i, int j, int k) {
        return fv[(static_cast<std::size_t>(i) * nB + static_cast<std::size_t>(j)) * nC +
                  static_cast<std::size_t>(k)];
    };

    std::vector<Constraint> working;
    for (int i : {0, static_cast<int>(nA) - 1})
        for (int j : {0, static_cast<int>(nB) - 1})
            for (int k : {0, static_cast<int>(nC) - 1})
                for (int s : {1, -1}) working.push_back({i, j, k, s});

    LpSolution sol;
    sol.grid = g;
    std::vector<double> y, x(nvar, 0.0);
    int total_pivots = 0;

    const int outer_cap = 5000;
    int outer = 0;
    for (outer = 1; outer <= outer_cap; ++outer) {
        // Dual standard form: columns are working constraints, equality rows
        // are the primal variables; the t-row is flipped to make q >= 0.
        const std::size_t m = working.size();
        std::vector<std::vector<double>> e(nvar, std::vector<double>(m, 0.0));
        std::vector<double> cost(m);
        for (std::size_t c = 0; c < m; ++c) {
            const Constraint& w = working[c];
            double s = static_cast<double>(w.s);
            e[0][c] = 1.0; // t coefficient -1, flipped
            if (w.i > 0) e[phi_base + static_cast<std::size_t>(w.i) - 1][c] = -s;
            if (w.j > 0) e[psi_base + static_cast<std::size_t>(w.j) - 1][c] = -s;
            e[omega_base + static_cast<std::size_t>(w.k)][c] = -s;
            cost[c] = -s * fval(w.i, w.j, w.k);
        }
        std::vector<double> q(nvar, 0.0);
        q[0] = 1.0;

        SimplexResult res = DenseSimplex(std::move(e), std::move(q), std::move(cost)).solve();
        total_pivots += res.pivots;
        y = std::move(res.y);
        x = std::move(res.pi);
        x[0] = -x[0]; // undo the t-row flip

        // Deterministic most-violated constraint scan (lowest index wins ties).
        std::vector<double> best_v(nA, -std::numeric_limits<double>::infinity());
        std::vector<std::size_t> best_at(nA, 0);
        parallel_for(nA, [&](std::size_t i) {
            double phi_i = i > 0 ? x[phi_base + i - 1] : 0.0;
            for (std::size_t j = 0; j < nB; ++j) {
                double psi_j = j > 0 ? x[psi_base + j - 1] : 0.0;
                for (std::size_t k = 0; k < nC; ++k) {
                    double r = fv[(i * nB + j) * nC + k] - phi_i - psi_j -
                               x[omega_base + k];
                    double v = std::abs(r) - x[0];
                    if (v > best_v[i]) {
                        best_v[i] = v;
                        best_at[i] = j * nC + k;
                    }
                }
            }
        });
        std::size_t bi = 0;
        for (std::size_t i = 1; i < nA; ++i)
            if (best_v[i] > best_v[bi]) bi = i;
        if (best_v[bi] <= kViolationTol) break;

        int vi = static_cast<int>(bi);
        int vj = static_cast<int>(best_at[bi] / nC);
        int vk = static_cast<int>(best_at[bi] % nC);
        double phi_i = vi > 0 ? x[phi_base + static_cast<std::size_t>(vi) - 1] : 0.0;
        double psi_j = vj > 0 ? x[psi_base + static_cast<std::size_t>(vj) - 1] : 0.0;
        double r = fval(vi, vj, vk) - phi_i - psi_j - x[omega_base + static_cast<std::size_t>(vk)];
        int s = r >= 0 ? 1 : -1;
        for (const Constraint& w : working)
            if (w.i == vi && w.j == vj && w.k == vk && w.s == s)
                throw std::runtime_error("active-set loop stalled on a repeated constraint");
        working.push_back({vi, vj, vk, s});
    }
    if (outer > outer_cap)
        throw std::runtime_error("active-set loop failed to converge");

    sol.t = std::max(x[0], 0.0);
    sol.phi.assign(nA, 0.0);
    sol.psi.assign(nB, 0.0);
    sol.omega.assign(nC, 0.0);
    for (std::size_t i = 1; i < nA; ++i) sol.phi[i] = x[phi_base + i - 1];
    for (std::size_t j = 1; j < nB; ++j) sol.psi[j] = x[psi_base + j - 1];
    for (std::size_t k = 0; k < nC; ++k) sol.omega[k] = x[omega_base + k];
    for (std::size_t c = 0; c < working.size(); ++c) {
        if (y[c] <= 1e-12) continue;
        const Constraint& w = working[c];
        sol.dual.push_back({{g.A[static_cast<std::size_t>(w.i)],
                             g.B[static_cast<std::size_t>(w.j)],
                             g.C[static_cast<std::size_t>(w.k)]},
                            static_cast<double>(w.s) * y[c]});
    }
    sol.outer_iterations = outer;
    sol.simplex_pivots = total_pivots;
    sol.active_constraints = static_cast<int>(working.size());
    return sol;
}

WeightedPointSet extract_dual_cycle(const LpSolution& sol) {
    WeightedPointSet s;
    if (sol.t <= kOptTol) return s;
    for (const LpSolution::DualTerm& d : sol.dual)
        s.add(d.point, Rational::from_double(d.lambda));
    s.strip_zeros();
    Rational mass = s.weight_mass();
    if (mass.is_zero()) return s;
    for (Rational& w : s.weights) w /= mass;
    return s;
}

std::vector<double> refine_and_bound(const FunctionSource& f,
                                     const std::vector<GridSpec>& grids) {
    auto contains = [](const std::vector<double>& small, const std::vector<double>& big) {
        for (double v : small) {
            bool found = false;
            for (double w : big)
                if (std::abs(v - w) <= 1e-12) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    };
    for (std::size_t i = 1; i < grids.size(); ++i) {
        if (!contains(grids[i - 1].A, grids[i].A) || !contains(grids[i - 1].B, grids[i].B) ||
            !contains(grids[i - 1].C, grids[i].C))
            throw std::invalid_argument("grid sequence is not nested at step " +
                                        std::to_string(i));
    }
    std::vector<double> out;
    for (const GridSpec& g : grids) out.push_back(grid_error(f, g).t);
    return out;
}

std::string lp_solution_to_json(const LpSolution& sol) {
    nlohmann::json j;
    j["t"] = sol.t;
    auto table = [](const std::vector<double>& coords, const std::vector<double>& vals) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            std::ostringstream key;
            key.precision(17);
            key << coords[i];
            o[key.str()] = vals[i];
        }
        return o;
    };
    j["phi"] = table(sol.grid.A, sol.phi);
    j["psi"] = table(sol.grid.B, sol.psi);
    j["omega"] = table(sol.grid.C, sol.omega);

    WeightedPointSet cycle = extract_dual_cycle(sol);
    nlohmann::json dc;
    dc["points"] = nlohmann::json::array();
    dc["weights"] = nlohmann::json::array();
    auto fits = [](const BigInt& b) {
        return b >= std::numeric_limits<long long>::min() &&
               b <= std::numeric_limits<long long>::max();
    };
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        dc["points"].push_back({cycle.points[i].x, cycle.points[i].y, cycle.points[i].z});
        const Rational& w = cycle.weights[i];
        if (fits(w.num()) && fits(w.den()))
            dc["weights"].push_back({{"num", static_cast<long long>(w.num())},
                                     {"den", static_cast<long long>(w.den())}});
        else
            dc["weights"].push_back({{"num", w.num().str()}, {"den", w.den().str()}});
    }
    j["dual_cycle"] = std::move(dc);
    j["stats"] = {{"outer_iterations", sol.outer_iterations},
                  {"simplex_pivots", sol.simplex_pivots},
                  {"active_constraints", sol.active_constraints}};
    return j.dump(2);
}

} // namespace seplinf
