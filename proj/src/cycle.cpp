#include "seplinf/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seplinf/errors.hpp"
#include "seplinf/exact_linalg.hpp"

namespace seplinf {

namespace {

std::string point_str(const Point3& p) {
    std::ostringstream os;
    os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
    return os.str();
}

char axis_name(int axis) { return axis == 0 ? 'x' : (axis == 1 ? 'y' : 'z'); }

} // namespace

int WeightedPointSet::find(const Point3& p, double tol) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (approx_equal(points[i], p, tol)) return static_cast<int>(i);
    return -1;
}

void WeightedPointSet::add(const Point3& p, const Rational& w, double tol) {
    int i = find(p, tol);
    if (i >= 0) {
        weights[static_cast<std::size_t>(i)] += w;
    } else {
        points.push_back(p);
        weights.push_back(w);
    }
}

void WeightedPointSet::strip_zeros() {
    std::size_t out = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (weights[i].is_zero()) continue;
        points[out] = points[i];
        weights[out] = weights[i];
        ++out;
    }
    points.resize(out);
    weights.resize(out);
}

Rational WeightedPointSet::weight_mass() const {
    Rational m;
    for (const Rational& w : weights) m += w.abs();
    return m;
}

std::vector<PlaneSum> plane_sums(const WeightedPointSet& s, double tol) {
    std::vector<PlaneSum> out;
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<std::size_t> order(s.points.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return s.points[a][axis] < s.points[b][axis];
        });
        std::size_t i = 0;
        while (i < order.size()) {
            double coord = s.points[order[i]][axis];
            Rational sum;
            std::size_t j = i;
            while (j < order.size() && s.points[order[j]][axis] - coord <= tol) {
                sum += s.weights[order[j]];
                ++j;
            }
            out.push_back({axis, coord, sum});
            i = j;
        }
    }
    return out;
}

bool is_weak_cycle(const WeightedPointSet& s, double tol) {
    for (const PlaneSum& ps : plane_sums(s, tol))
        if (!ps.sum.is_zero()) return false;
    return true;
}

CycleVector CycleVector::from_weighted(WeightedPointSet s, double tol) {
    s.strip_zeros();
    std::vector<std::string> bad;
    for (const PlaneSum& ps : plane_sums(s, tol)) {
        if (!ps.sum.is_zero()) {
            std::ostringstream os;
            os << axis_name(ps.axis) << " = " << ps.coordinate << " sums to " << ps.sum.str();
            bad.push_back(os.str());
        }
    }
    if (!bad.empty()) {
        std::string msg = "not a cycle; nonzero plane sums:";
        for (const std::string& b : bad) msg += " [" + b + "]";
        throw std::invalid_argument(msg);
    }
    if (s.points.empty()) throw std::invalid_argument("empty cycle");
    CycleVector c;
    c.s_ = std::move(s);
    return c;
}

WeightedPointSet add_cycle_vectors(const CycleVector& a, const CycleVector& b) {
    WeightedPointSet s = a.set();
    for (std::size_t i = 0; i < b.size(); ++i) s.add(b.points()[i], b.weights()[i]);
    return s;
}

double golomb_ratio(const WeightedPointSet& s, const FunctionSource& f) {
    Rational mass = s.weight_mass();
    if (mass.is_zero()) throw std::invalid_argument("zero total weight");
    double num = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        num += s.weights[i].to_double() * evaluate(f, s.points[i]);
    return num / mass.to_double();
}

double golomb_ratio(const CycleVector& c, const FunctionSource& f) {
    return golomb_ratio(c.set(), f);
}

ConstraintMatrix build_constraint_matrix(const std::vector<Point3>& points, double tol) {
    ConstraintMatrix m;
    m.cols = points.size();
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> coords;
        for (const Point3& p : points) coords.push_back(p[axis]);
        std::sort(coords.begin(), coords.end());
        std::vector<double> reps;
        for (double c : coords)
            if (reps.empty() || c - reps.back() > tol) reps.push_back(c);
        for (double rep : reps) m.rows.push_back({axis, rep});
    }
    m.data.assign(m.rows.size() * m.cols, 0);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        auto [axis, coord] = m.rows[r];
        for (std::size_t c = 0; c < m.cols; ++c)
            if (std::abs(points[c][axis] - coord) <= tol) m.data[r * m.cols + c] = 1;
    }
    return m;
}

std::vector<CycleVector> enumerate_minimal_cycles(const std::vector<Point3>& points,
                                                  int max_support) {
    if (max_support < 2) throw std::invalid_argument("max_support must be at least 2");
    const std::size_t n = points.size();

    double combos = 1.0;
    for (int i = 0; i < max_support; ++i) {
        if (static_cast<std::size_t>(i) >= n) {
            combos = 0.0;
            break;
        }
        combos = combos * static_cast<double>(n - static_cast<std::size_t>(i)) /
                 static_cast<double>(i + 1);
    }
    if (combos > 1e7)
        throw guard_error("subset count C(" + std::to_string(n) + ", " +
                          std::to_string(max_support) + ") exceeds 10^7");

    ConstraintMatrix full = build_constraint_matrix(points);
    std::vector<CycleVector> out;

    int limit = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(max_support)));
    for (int k = 2; k <= limit; ++k) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            // Rows restricted to planes touched by the subset.
            std::vector<std::vector<std::int64_t>> sub;
            for (std::size_t r = 0; r < full.rows.size(); ++r) {
                std::vector<std::int64_t> row(static_cast<std::size_t>(k));
                bool nonzero = false;
                for (int c = 0; c < k; ++c) {
                    row[static_cast<std::size_t>(c)] =
                        full.entry(r, idx[static_cast<std::size_t>(c)]);
                    nonzero = nonzero || row[static_cast<std::size_t>(c)] != 0;
                }
                if (nonzero) sub.push_back(std::move(row));
            }
            if (integer_matrix_rank(sub) == k - 1) {
                if (auto kv = integer_matrix_unit_kernel(sub)) {
                    bool full_support = true;
                    for (const BigInt& b : *kv)
                        if (b == 0) { full_support = false; break; }
                    if (full_support) {
                        std::size_t lead = 0;
                        for (std::size_t c = 1; c < kv->size(); ++c)
                            if (lex_less(points[idx[c]], points[idx[lead]])) lead = c;
                        if ((*kv)[lead] < 0)
                            for (BigInt& b : *kv) b = -b;
                        WeightedPointSet s;
                        for (int c = 0; c < k; ++c)
                            s.add(points[idx[static_cast<std::size_t>(c)]],
                                  Rational((*kv)[static_cast<std::size_t>(c)]));
                        out.push_back(CycleVector::from_weighted(std::move(s)));
                    }
                }
            }
            // Next combination in lexicographic order.
            int pos = k - 1;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] ==
                       n - static_cast<std::size_t>(k - pos)) {
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int c = pos + 1; c < k; ++c)
                idx[static_cast<std::size_t>(c)] = idx[static_cast<std::size_t>(c - 1)] + 1;
        }
    }

    std::sort(out.begin(), out.end(), [](const CycleVector& a, const CycleVector& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!(a.points()[i] == b.points()[i]))
                return lex_less(a.points()[i], b.points()[i]);
        }
        return false;
    });
    return out;
}

bool is_minimal(const CycleVector& c) {
    const std::size_t k = c.size();
    ConstraintMatrix m = build_constraint_matrix(c.points());
    std::vector<std::vector<std::int64_t>> im(m.rows.size(),
                                              std::vector<std::int64_t>(k));
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t col = 0; col < k; ++col) im[r][col] = m.entry(r, col);
    if (integer_matrix_rank(im) != static_cast<int>(k) - 1) return false;
    auto kv = integer_matrix_unit_kernel(im);
    if (!kv) return false;
    for (const BigInt& b : *kv)
        if (b == 0) return false;
    return true;
}

double lattice_inequality_gap(const FunctionSource& f, const Point3& p, const Point3& q) {
    Point3 lo = componentwise_min(p, q);
    Point3 hi = componentwise_max(p, q);
    return evaluate(f, lo) + evaluate(f, hi) - evaluate(f, p) - evaluate(f, q);
}

namespace {

constexpr double kGeomTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kGeomTol; }

bool is_main_corner(const Point3& p) {
    return (near(p.x, 0) && near(p.y, 0) && near(p.z, 0)) ||
           (near(p.x, 1) && near(p.y, 1) && near(p.z, 1));
}

// The six cube edges avoiding (0,0,0) and (1,1,1).
bool on_negative_edge(const Point3& p) {
    return (near(p.y, 0) && near(p.z, 1)) || (near(p.x, 1) && near(p.y, 0)) ||
           (near(p.x, 1) && near(p.z, 0)) || (near(p.y, 1) && near(p.z, 0)) ||
           (near(p.x, 0) && near(p.y, 1)) || (near(p.x, 0) && near(p.z, 1));
}

bool on_any_edge(const Point3& p) {
    int extreme = 0;
    for (int axis = 0; axis < 3; ++axis)
        if (near(p[axis], 0) || near(p[axis], 1)) ++extreme;
    return extreme >= 2;
}

} // namespace

std::vector<std::string> structure_check(const CycleVector& c) {
    std::vector<std::string> violations;
    const auto& pts = c.points();
    const auto& ws = c.weights();
    const std::size_t n = pts.size();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (ws[i].sign() > 0 && ws[j].sign() > 0 && !well_ordered(pts[i], pts[j]))
                violations.push_back("(a) positive points " + point_str(pts[i]) + " and " +
                                     point_str(pts[j]) + " are not well-ordered");
            bool share_interior = false;
            for (int axis = 0; axis < 3; ++axis) {
                double a = pts[i][axis], b = pts[j][axis];
                if (std::abs(a - b) <= kMergeTol && a > kGeomTol && a < 1.0 - kGeomTol)
                    share_interior = true;
            }
            if (share_interior && well_ordered(pts[i], pts[j]) &&
                !(ws[i].sign() > 0 && ws[j].sign() > 0))
                violations.push_back("(b) well-ordered points " + point_str(pts[i]) + " and " +
                                     point_str(pts[j]) +
                                     " share an interior plane but are not both positive");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (ws[i].sign() < 0 && !on_negative_edge(pts[i]))
            violations.push_back("(c) negative point " + point_str(pts[i]) +
                                 " is not on an admissible edge");
        if (ws[i].sign() > 0 && on_any_edge(pts[i]) && !is_main_corner(pts[i]))
            violations.push_back("(d) edge point " + point_str(pts[i]) +
                                 " should carry negative weight");
    }
    bool has_origin = false, has_far = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (ws[i].sign() > 0 && near(pts[i].x, 0) && near(pts[i].y, 0) && near(pts[i].z, 0))
            has_origin = true;
        if (ws[i].sign() > 0 && near(pts[i].x, 1) && near(pts[i].y, 1) && near(pts[i].z, 1))
            has_far = true;
    }
    if (!has_origin)
        violations.push_back("(e) (0, 0, 0) is missing or not positive");
    if (!has_far)
        violations.push_back("(e) (1, 1, 1) is missing or not positive");
    return violations;
}

CycleFile read_cycle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open cycle file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw usage_error("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j.contains("weights"))
        throw usage_error("cycle file must contain \"points\" and \"weights\" arrays");
    const auto& jp = j["points"];
    const auto& jw = j["weights"];
    if (!jp.is_array() || !jw.is_array() || jp.size() != jw.size())
        throw usage_error("\"points\" and \"weights\" must be arrays of equal length");
    if (jp.empty()) throw usage_error("cycle file has no points");

    CycleFile out;
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const auto& pe = jp[i];
        if (!pe.is_array() || pe.size() != 3)
            throw usage_error("each point must be an array of three coordinates");
        Point3 p{pe[0].get<double>(), pe[1].get<double>(), pe[2].get<double>()};
        if (!in_unit_cube(p, kMergeTol))
            throw usage_error("point " + point_str(p) + " lies outside the unit cube");
        const auto& we = jw[i];
        if (!we.is_object() || !we.contains("num") || !we.contains("den"))
            throw usage_error("each weight must be an object with \"num\" and \"den\"");
        long long num = we["num"].get<long long>();
        long long den = we["den"].get<long long>();
        if (den == 0) throw usage_error("weight denominator must be nonzero");
        if (num == 0) out.has_zero_weight = true;
        out.set.add(p, Rational(BigInt(num), BigInt(den)));
    }
    for (const Rational& w : out.set.weights)
        if (w.is_zero()) out.has_zero_weight = true;
    return out;
}

std::string cycle_to_json(const WeightedPointSet& s) {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    j["weights"] = nlohmann::json::array();
    auto fits = [](const BigInt& b) {
        return b >= std::numeric_limits<long long>::min() &&
               b <= std::numeric_limits<long long>::max();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        j["points"].push_back({s.points[i].x, s.points[i].y, s.points[i].z});
        const Rational& w = s.weights[i];
        if (fits(w.num()) && fits(w.den()))
            j["weights"].push_back({{"num", static_cast<long long>(w.num())},
                                    {"den", static_cast<long long>(w.den())}});
        else
            j["weights"].push_back({{"num", w.num().str()}, {"den", w.den().str()}});
    }
    return j.dump(2);
}

} // namespace seplinf
