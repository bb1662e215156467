#include "seplinf/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "seplinf/errors.hpp"

namespace seplinf {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Uniform draw in [0,1) that does not depend on std::uniform_real_distribution
// internals, so sequences are reproducible across standard libraries.
double rnd01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double rnd_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * rnd01(rng);
}

int rnd_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double remark41_eval(double x, double y, double z) {
    if (x <= 0.5 && z <= 0.5) return x * z;
    if (x >= 0.5 && z <= 0.5) return z / 2 + (2 * x - 1) * y / 4;
    if (x <= 0.5 && z >= 0.5) return x / 2 + (2 * z - 1) * y / 4;
    return 0.25 + (2 * x - 1) * y / 4 + (2 * z - 1) * y / 4;
}

struct MixTerm {
    double coef;
    int kind; // 0: x^a y^b, 1: y^a z^b, 2: x^a z^b
    int a, b;
};

// Positive combination of two-variable monomials plus separable quadratic
// noise; every second mixed difference is a nonnegative sum of monomial terms.
std::function<double(double, double, double)> make_class_mix(std::uint64_t seed) {
    std::mt19937_64 rng(0x5eb1a6f00dULL ^ (seed * 0x9e3779b97f4a7c15ULL));
    int nterms = rnd_int(rng, 1, 4);
    std::vector<MixTerm> terms;
    for (int t = 0; t < nterms; ++t) {
        MixTerm m;
        m.coef = rnd_range(rng, 0.2, 1.5);
        m.kind = rnd_int(rng, 0, 2);
        m.a = rnd_int(rng, 1, 3);
        m.b = rnd_int(rng, 1, 3);
        terms.push_back(m);
    }
    std::array<double, 6> sep{};
    for (auto& c : sep) c = rnd_range(rng, -0.5, 0.5);
    return [terms, sep](double x, double y, double z) {
        double v = 0.0;
        for (const auto& m : terms) {
            double u = m.kind == 1 ? y : x;
            double w = m.kind == 0 ? y : z;
            v += m.coef * std::pow(u, m.a) * std::pow(w, m.b);
        }
        v += sep[0] * x + sep[1] * x * x + sep[2] * y + sep[3] * y * y + sep[4] * z + sep[5] * z * z;
        return v;
    };
}

std::function<double(double, double, double)> make_separable_mix(std::uint64_t seed) {
    std::mt19937_64 rng(0x0ddba11c0ffeeULL ^ (seed * 0x9e3779b97f4a7c15ULL));
    std::array<double, 9> c{};
    for (auto& v : c) v = rnd_range(rng, -1.0, 1.0);
    return [c](double x, double y, double z) {
        return c[0] + c[1] * x + c[2] * x * x + c[3] * y + c[4] * y * y + c[5] * z +
               c[6] * z * z + c[7] * std::sin(3 * x) + c[8] * std::exp(z);
    };
}

double get_param(const std::map<std::string, std::string>& params, const std::string& key,
                 double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw usage_error("bad numeric parameter " + key);
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (...) {
        throw usage_error("bad numeric parameter " + key + "=" + it->second);
    }
}

std::uint64_t get_seed(const std::map<std::string, std::string>& params) {
    auto it = params.find("seed");
    if (it == params.end()) throw usage_error("missing required parameter seed=N");
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw usage_error("bad seed parameter: " + it->second);
    }
}

} // namespace

double GridData::interpolate(const Point3& p) const {
    auto cell = [](const std::vector<double>& axis, double v) {
        auto it = std::upper_bound(axis.begin(), axis.end(), v);
        int hi = static_cast<int>(it - axis.begin());
        if (hi <= 0) hi = 1;
        if (hi >= static_cast<int>(axis.size())) hi = static_cast<int>(axis.size()) - 1;
        return hi - 1;
    };
    int i = cell(xs, p.x), j = cell(ys, p.y), k = cell(zs, p.z);
    double tx = (p.x - xs[i]) / (xs[i + 1] - xs[i]);
    double ty = (p.y - ys[j]) / (ys[j + 1] - ys[j]);
    double tz = (p.z - zs[k]) / (zs[k + 1] - zs[k]);
    double acc = 0.0;
    for (int di = 0; di <= 1; ++di)
        for (int dj = 0; dj <= 1; ++dj)
            for (int dk = 0; dk <= 1; ++dk) {
                double w = (di ? tx : 1 - tx) * (dj ? ty : 1 - ty) * (dk ? tz : 1 - tz);
                if (w != 0.0) acc += w * at(i + di, j + dj, k + dk);
            }
    return acc;
}

FunctionSource FunctionSource::builtin(const std::string& name,
                                       const std::map<std::string, std::string>& params) {
    FunctionSource f;
    f.kind_ = Kind::Builtin;
    std::string desc = "builtin:" + name;
    for (const auto& [k, v] : params) desc += (desc.find(':', 8) == std::string::npos ? ":" : ",") + k + "=" + v;
    f.descriptor_ = desc;
    if (name == "product_xz") {
        f.eval_ = [](double x, double, double z) { return x * z; };
    } else if (name == "product_xy") {
        f.eval_ = [](double x, double y, double) { return x * y; };
    } else if (name == "product_xyz") {
        f.eval_ = [](double x, double y, double z) { return x * y * z; };
    } else if (name == "bilinear_sum") {
        f.eval_ = [](double x, double y, double z) { return x * y + x * z + y * z; };
    } else if (name == "neg_xy") {
        f.eval_ = [](double x, double y, double) { return -x * y; };
    } else if (name == "remark41_piecewise") {
        f.eval_ = remark41_eval;
    } else if (name == "affine") {
        auto it = params.find("of");
        if (it == params.end()) throw usage_error("affine builtin requires of=NAME");
        FunctionSource inner = builtin(it->second, {});
        double a = get_param(params, "a", 1.0), b = get_param(params, "b", 0.0);
        double c = get_param(params, "c", 0.0), d = get_param(params, "d", 0.0);
        double e = get_param(params, "e", 0.0);
        f.eval_ = [inner, a, b, c, d, e](double x, double y, double z) {
            return a * inner(x, y, z) + b * x + c * y + d * z + e;
        };
    } else if (name == "class_mix") {
        f.eval_ = make_class_mix(get_seed(params));
    } else if (name == "separable_mix") {
        f.eval_ = make_separable_mix(get_seed(params));
    } else {
        throw usage_error("unknown builtin: " + name);
    }
    return f;
}

FunctionSource FunctionSource::grid(GridData data, const std::string& descriptor) {
    FunctionSource f;
    f.kind_ = Kind::Grid;
    f.descriptor_ = descriptor;
    auto shared = std::make_shared<GridData>(std::move(data));
    f.eval_ = [shared](double x, double y, double z) {
        return shared->interpolate({x, y, z});
    };
    return f;
}

FunctionSource FunctionSource::callable(const std::string& descriptor,
                                        std::function<double(double, double, double)> fn) {
    FunctionSource f;
    f.kind_ = Kind::Builtin;
    f.descriptor_ = descriptor;
    f.eval_ = std::move(fn);
    return f;
}

double evaluate(const FunctionSource& f, const Point3& p) {
    if (!in_unit_cube(p, 1e-12)) {
        std::ostringstream os;
        os << "point (" << p.x << ", " << p.y << ", " << p.z << ") outside the unit cube";
        throw std::domain_error(os.str());
    }
    return f(clamp01(p.x), clamp01(p.y), clamp01(p.z));
}

DeltaReport check_delta_conditions(const FunctionSource& f, int n, double tol) {
    if (n < 2) throw usage_error("delta check needs grid resolution >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);

    DeltaReport rep;
    double worst = std::numeric_limits<double>::infinity();
    auto consider = [&](double d, const char* axes, double x, double y, double z) {
        if (d < worst) {
            worst = d;
            rep.worst_axes = axes;
            rep.worst_location = {x, y, z};
        }
    };
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j)
            for (int k = 0; k < n; ++k) {
                double dxy = f(g[i + 1], g[j + 1], g[k]) - f(g[i + 1], g[j], g[k]) -
                             f(g[i], g[j + 1], g[k]) + f(g[i], g[j], g[k]);
                consider(dxy, "xy", g[i], g[j], g[k]);
                double dxz = f(g[i + 1], g[k], g[j + 1]) - f(g[i + 1], g[k], g[j]) -
                             f(g[i], g[k], g[j + 1]) + f(g[i], g[k], g[j]);
                consider(dxz, "xz", g[i], g[k], g[j]);
                double dyz = f(g[k], g[i + 1], g[j + 1]) - f(g[k], g[i + 1], g[j]) -
                             f(g[k], g[i], g[j + 1]) + f(g[k], g[i], g[j]);
                consider(dyz, "yz", g[k], g[i], g[j]);
            }
    rep.worst_violation = worst;
    rep.satisfied_weak = worst >= -tol;
    rep.satisfied_strict = worst > tol;
    return rep;
}

double default_delta_tol(const FunctionSource& f) {
    return f.kind() == FunctionSource::Kind::Grid ? 1e-9 : 1e-12;
}

FunctionSource load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open grid file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw usage_error("malformed grid file " + path + ": " + e.what());
    }
    GridData g;
    try {
        g.nx = j.at("nx").get<int>();
        g.ny = j.at("ny").get<int>();
        g.nz = j.at("nz").get<int>();
        g.xs = j.at("xs").get<std::vector<double>>();
        g.ys = j.at("ys").get<std::vector<double>>();
        g.zs = j.at("zs").get<std::vector<double>>();
        g.values = j.at("values").get<std::vector<double>>();
    } catch (const std::exception& e) {
        throw usage_error("grid file " + path + " missing fields: " + e.what());
    }
    auto check_axis = [&](const std::vector<double>& a, int n, const char* name) {
        if (static_cast<int>(a.size()) != n)
            throw usage_error(std::string("grid axis ") + name + " length mismatch");
        if (n < 2) throw usage_error(std::string("grid axis ") + name + " needs >= 2 nodes");
        if (a.front() != 0.0 || a.back() != 1.0)
            throw usage_error(std::string("grid axis ") + name + " must start at 0 and end at 1");
        for (std::size_t i = 1; i < a.size(); ++i)
            if (!(a[i] > a[i - 1]))
                throw usage_error(std::string("grid axis ") + name + " not strictly increasing");
    };
    check_axis(g.xs, g.nx, "xs");
    check_axis(g.ys, g.ny, "ys");
    check_axis(g.zs, g.nz, "zs");
    if (g.values.size() != static_cast<std::size_t>(g.nx) * g.ny * g.nz)
        throw usage_error("grid values length mismatch");
    return FunctionSource::grid(std::move(g), "grid:" + path);
}

FunctionSource parse_function_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw usage_error("bad function spec: " + spec);
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "grid") {
        if (rest.empty()) throw usage_error("grid spec needs a path");
        return load_grid(rest);
    }
    if (head != "builtin") throw usage_error("bad function spec kind: " + head);
    std::string name = rest;
    std::map<std::string, std::string> params;
    auto colon2 = rest.find(':');
    if (colon2 != std::string::npos) {
        name = rest.substr(0, colon2);
        std::string plist = rest.substr(colon2 + 1);
        std::istringstream ps(plist);
        std::string item;
        while (std::getline(ps, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw usage_error("bad builtin parameter: " + item);
            params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    if (name.empty()) throw usage_error("builtin spec needs a name");
    return FunctionSource::builtin(name, params);
}

} // namespace seplinf
