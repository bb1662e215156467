#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seplinf/function_model.hpp"
#include "seplinf/point.hpp"
#include "seplinf/rational.hpp"

namespace seplinf {

inline constexpr double kMergeTol = 1e-9;

// Weighted point set without the plane-sum invariant; zero weights allowed.
struct WeightedPointSet {
    std::vector<Point3> points;
    std::vector<Rational> weights;

    std::size_t size() const { return points.size(); }
    int find(const Point3& p, double tol = kMergeTol) const;
    // Merges into an existing point within tol, otherwise appends.
    void add(const Point3& p, const Rational& w, double tol = kMergeTol);
    void strip_zeros();
    Rational weight_mass() const; // sum of |weights|
};

struct PlaneSum {
    int axis;
    double coordinate;
    Rational sum;
};

// One entry per (axis, attained coordinate), coordinates clustered within tol.
std::vector<PlaneSum> plane_sums(const WeightedPointSet& s, double tol = kMergeTol);
bool is_weak_cycle(const WeightedPointSet& s, double tol = kMergeTol);

// Plane-sum-zero invariant holds; points pairwise distinct; weights nonzero.
class CycleVector {
public:
    // Strips zero weights, then validates every plane sum is exactly zero;
    // throws std::invalid_argument with the nonzero sums otherwise.
    static CycleVector from_weighted(WeightedPointSet s, double tol = kMergeTol);

    const std::vector<Point3>& points() const { return s_.points; }
    const std::vector<Rational>& weights() const { return s_.weights; }
    const WeightedPointSet& set() const { return s_; }
    std::size_t size() const { return s_.size(); }

private:
    WeightedPointSet s_;
};

// Union of supports with summed weights; zero-sum points are retained.
WeightedPointSet add_cycle_vectors(const CycleVector& a, const CycleVector& b);

// Sum of w_i f(p_i) divided by sum of |w_i|; weights exact, f floating point.
double golomb_ratio(const CycleVector& c, const FunctionSource& f);
double golomb_ratio(const WeightedPointSet& s, const FunctionSource& f);

// 0/1 incidence of points against every attained (axis, coordinate) plane.
struct ConstraintMatrix {
    std::vector<std::pair<int, double>> rows; // (axis, coordinate)
    std::size_t cols = 0;
    std::vector<signed char> data; // row-major

    int entry(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

ConstraintMatrix build_constraint_matrix(const std::vector<Point3>& points,
                                         double tol = kMergeTol);

// All circuits (minimal dependent column sets) with support <= max_support,
// weights scaled to coprime integers, lexicographically smallest support
// point weighted positive. Guard: C(|points|, max_support) <= 10^7.
std::vector<CycleVector> enumerate_minimal_cycles(const std::vector<Point3>& points,
                                                  int max_support);

// True iff the support is a circuit of its constraint matrix.
bool is_minimal(const CycleVector& c);

// f(min(p,q)) + f(max(p,q)) - f(p) - f(q); zero iff p,q well-ordered for
// functions with strictly positive second mixed differences.
double lattice_inequality_gap(const FunctionSource& f, const Point3& p, const Point3& q);

// Structural conditions an optimal cycle satisfies: (a) positive points
// pairwise well-ordered, (b) well-ordered pairs sharing an interior plane are
// both positive, (c) negative points lie on the six edges avoiding (0,0,0)
// and (1,1,1), (d) any edge point other than those two corners is negative,
// (e) both corners present with positive weight. Returns violations.
std::vector<std::string> structure_check(const CycleVector& c);

struct CycleFile {
    WeightedPointSet set;
    bool has_zero_weight = false;
};

// JSON {"points":[[x,y,z],...], "weights":[{"num":..,"den":..},...]}.
CycleFile read_cycle_file(const std::string& path);
std::string cycle_to_json(const WeightedPointSet& s);

} // namespace seplinf
