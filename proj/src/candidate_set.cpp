#include "seplinf/candidate_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "seplinf/parallel.hpp"

namespace seplinf {

namespace {

// A substituted f-argument: per coordinate either keep the input (-1) or pin
// to the constant 0/1.
struct Term {
    std::array<int, 3> pick;
};

struct AuxDef {
    int face_axis;     // -1 for the cube functions
    double face_value; // meaningful only when face_axis >= 0
    std::vector<Term> terms;
};

const AuxDef& aux_def(AuxId id) {
    static const std::array<AuxDef, 14> defs = {{
        // g1..g8
        {-1, 0, {{{-1, 0, 1}}, {{1, -1, 0}}, {{0, 1, -1}}}},
        {-1, 0, {{{1, 0, -1}}, {{-1, 1, 0}}, {{0, -1, 1}}}},
        {-1, 0, {{{-1, 0, 1}}, {{1, 0, -1}}, {{1, -1, 0}}}},
        {-1, 0, {{{1, 0, -1}}, {{1, -1, 0}}, {{-1, 1, 0}}}},
        {-1, 0, {{{1, -1, 0}}, {{-1, 1, 0}}, {{0, 1, -1}}}},
        {-1, 0, {{{-1, 1, 0}}, {{0, 1, -1}}, {{0, -1, 1}}}},
        {-1, 0, {{{0, 1, -1}}, {{0, -1, 1}}, {{-1, 0, 1}}}},
        {-1, 0, {{{0, -1, 1}}, {{-1, 0, 1}}, {{1, 0, -1}}}},
        // h1..h6 on faces z=0, z=1, y=0, y=1, x=0, x=1
        {2, 0.0, {{{0, -1, 1}}, {{-1, 0, 1}}}},
        {2, 1.0, {{{1, -1, 0}}, {{-1, 1, 0}}}},
        {1, 0.0, {{{0, 1, -1}}, {{-1, 1, 0}}}},
        {1, 1.0, {{{1, 0, -1}}, {{-1, 0, 1}}}},
        {0, 0.0, {{{1, 0, -1}}, {{1, -1, 0}}}},
        {0, 1.0, {{{0, 1, -1}}, {{0, -1, 1}}}},
    }};
    return defs[static_cast<std::size_t>(id)];
}

Point3 apply_term(const Term& t, const Point3& p) {
    Point3 q;
    for (int axis = 0; axis < 3; ++axis)
        q[axis] = t.pick[static_cast<std::size_t>(axis)] < 0
                      ? p[axis]
                      : static_cast<double>(t.pick[static_cast<std::size_t>(axis)]);
    return q;
}

constexpr double kFaceTol = 1e-12;

// Maximize a 1-D slice by golden-section; assumes the bracket already
// contains the best known node.
double golden_max(const std::function<double(double)>& fn, double lo, double hi,
                  double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::string aux_name(AuxId id) {
    int i = static_cast<int>(id);
    return i < 8 ? "g" + std::to_string(i + 1) : "h" + std::to_string(i - 7);
}

std::optional<std::pair<int, double>> aux_face(AuxId id) {
    const AuxDef& d = aux_def(id);
    if (d.face_axis < 0) return std::nullopt;
    return std::make_pair(d.face_axis, d.face_value);
}

std::vector<Point3> aux_projection_points(AuxId id, const Point3& p) {
    std::vector<Point3> out;
    for (const Term& t : aux_def(id).terms) out.push_back(apply_term(t, p));
    return out;
}

double eval_auxiliary(AuxId id, const FunctionSource& f, const Point3& p) {
    const AuxDef& d = aux_def(id);
    if (d.face_axis >= 0 && std::abs(p[d.face_axis] - d.face_value) > kFaceTol)
        throw std::domain_error(aux_name(id) + " evaluated off its face " +
                                std::string(1, "xyz"[d.face_axis]) + " = " +
                                std::to_string(d.face_value));
    double v = evaluate(f, p);
    for (const Term& t : d.terms) v -= evaluate(f, apply_term(t, p));
    return v;
}

MaximizeResult maximize_auxiliary(AuxId id, const FunctionSource& f,
                                  const OptimizerConfig& cfg) {
    if (cfg.scan < 2) throw std::invalid_argument("scan resolution must be at least 2");
    const AuxDef& d = aux_def(id);
    std::vector<int> active;
    Point3 base{0, 0, 0};
    for (int axis = 0; axis < 3; ++axis) {
        if (axis == d.face_axis)
            base[axis] = d.face_value;
        else
            active.push_back(axis);
    }

    auto value_at = [&](const Point3& p) { return eval_auxiliary(id, f, p); };

    // Lexicographic scan; strict improvement keeps the first (lex-least) tie.
    MaximizeResult best{base, value_at(base)};
    const double step = 1.0 / (cfg.scan - 1);
    std::vector<int> counter(active.size(), 0);
    while (true) {
        Point3 p = base;
        for (std::size_t a = 0; a < active.size(); ++a)
            p[active[a]] = std::min(1.0, counter[a] * step);
        double v = value_at(p);
        if (v > best.value + cfg.tie_tol) best = {p, v};
        std::size_t pos = active.size();
        while (pos > 0 && counter[pos - 1] == cfg.scan - 1) {
            counter[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++counter[pos - 1];
    }

    // Coordinate-wise golden-section polish around the incumbent.
    bool adopted = true;
    while (adopted) {
        adopted = false;
        for (int axis : active) {
            double lo = std::max(0.0, best.point[axis] - step);
            double hi = std::min(1.0, best.point[axis] + step);
            auto slice = [&](double t) {
                Point3 p = best.point;
                p[axis] = t;
                return value_at(p);
            };
            double t = golden_max(slice, lo, hi, cfg.refine_tol);
            Point3 p = best.point;
            p[axis] = t;
            double v = value_at(p);
            if (v > best.value + cfg.tie_tol) {
                best = {p, v};
                adopted = true;
            }
        }
    }
    return best;
}

const std::array<Point3, 8>& cube_corners() {
    static const std::array<Point3, 8> corners = {{
        {0, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 0, 0},
        {1, 1, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1},
    }};
    return corners;
}

CandidateSet build_candidate_set(const FunctionSource& f, const OptimizerConfig& cfg) {
    CandidateSet cs;
    cs.T = cube_corners();

    std::array<MaximizeResult, 14> slots;
    parallel_for(14, [&](std::size_t i) {
        slots[i] = maximize_auxiliary(kAllAux[i], f, cfg);
    });
    for (int i = 0; i < 8; ++i) {
        cs.M[static_cast<std::size_t>(i)] = slots[static_cast<std::size_t>(i)].point;
        cs.M_value[static_cast<std::size_t>(i)] = slots[static_cast<std::size_t>(i)].value;
    }
    for (int k = 0; k < 6; ++k) {
        cs.F[static_cast<std::size_t>(k)] = slots[static_cast<std::size_t>(8 + k)].point;
        cs.F_value[static_cast<std::size_t>(k)] = slots[static_cast<std::size_t>(8 + k)].value;
    }

    auto merge_in = [&](const Point3& p) {
        for (const Point3& q : cs.U)
            if (approx_equal(q, p, 1e-9)) return;
        cs.U.push_back(p);
    };
    for (const Point3& p : cs.T) merge_in(p);
    for (const Point3& p : cs.M) merge_in(p);
    for (const Point3& p : cs.F) merge_in(p);
    std::sort(cs.U.begin(), cs.U.end(), lex_less);

    auto collect = [&](int axis) {
        std::vector<double> vals = {0.0, 1.0};
        for (const Point3& p : cs.U) vals.push_back(p[axis]);
        std::sort(vals.begin(), vals.end());
        std::vector<double> out;
        for (double v : vals)
            if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
        return out;
    };
    cs.Ux = collect(0);
    cs.Uy = collect(1);
    cs.Uz = collect(2);
    return cs;
}

std::string candidate_set_to_json(const CandidateSet& cs) {
    nlohmann::json j;
    auto pt = [](const Point3& p) { return nlohmann::json::array({p.x, p.y, p.z}); };
    j["T"] = nlohmann::json::array();
    for (const Point3& p : cs.T) j["T"].push_back(pt(p));
    j["M"] = nlohmann::json::array();
    for (const Point3& p : cs.M) j["M"].push_back(pt(p));
    j["F"] = nlohmann::json::array();
    for (const Point3& p : cs.F) j["F"].push_back(pt(p));
    j["Mval"] = cs.M_value;
    j["Fval"] = cs.F_value;
    j["Ux"] = cs.Ux;
    j["Uy"] = cs.Uy;
    j["Uz"] = cs.Uz;
    return j.dump(2);
}

} // namespace seplinf
