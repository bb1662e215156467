#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "seplinf/point.hpp"

namespace seplinf {

struct GridData {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> xs, ys, zs;
    std::vector<double> values; // x index outermost, z innermost

    double at(int i, int j, int k) const {
        return values[static_cast<std::size_t>((i * ny + j)) * nz + k];
    }
    double interpolate(const Point3& p) const;
};

class FunctionSource {
public:
    enum class Kind { Builtin, Grid };

    static FunctionSource builtin(const std::string& name,
                                  const std::map<std::string, std::string>& params = {});
    static FunctionSource grid(GridData data, const std::string& descriptor);
    // Library-level escape hatch for constructed test functions.
    static FunctionSource callable(const std::string& descriptor,
                                   std::function<double(double, double, double)> fn);

    Kind kind() const { return kind_; }
    const std::string& descriptor() const { return descriptor_; }

    double operator()(double x, double y, double z) const { return eval_(x, y, z); }

private:
    Kind kind_ = Kind::Builtin;
    std::string descriptor_;
    std::function<double(double, double, double)> eval_;
};

// Bounds-checked evaluation; throws std::domain_error outside the unit cube.
double evaluate(const FunctionSource& f, const Point3& p);

struct DeltaReport {
    bool satisfied_weak = false;
    bool satisfied_strict = false;
    double worst_violation = 0.0; // most negative adjacent mixed difference
    std::string worst_axes;       // "xy", "xz" or "yz"
    Point3 worst_location;        // lower corner of the offending cell pair
};

// Checks all three second mixed differences over adjacent cells of the
// uniform n^3 grid; larger-step differences telescope into adjacent ones.
DeltaReport check_delta_conditions(const FunctionSource& f, int n, double tol);

double default_delta_tol(const FunctionSource& f); // 1e-12 analytic, 1e-9 grid

FunctionSource load_grid(const std::string& path);

// "builtin:NAME[:k=v,...]" or "grid:PATH"; throws usage_error on bad input.
FunctionSource parse_function_spec(const std::string& spec);

} // namespace seplinf
