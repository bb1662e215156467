#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seplinf/function_model.hpp"
#include "seplinf/point.hpp"

namespace seplinf {

// Eight auxiliary cube functions followed by six face functions.
enum class AuxId {
    G1, G2, G3, G4, G5, G6, G7, G8,
    H1, H2, H3, H4, H5, H6,
};

constexpr std::array<AuxId, 14> kAllAux = {
    AuxId::G1, AuxId::G2, AuxId::G3, AuxId::G4, AuxId::G5, AuxId::G6,
    AuxId::G7, AuxId::G8, AuxId::H1, AuxId::H2, AuxId::H3, AuxId::H4,
    AuxId::H5, AuxId::H6,
};

std::string aux_name(AuxId id);

// Face functions restrict to one face: (axis, coordinate value); g's are free.
std::optional<std::pair<int, double>> aux_face(AuxId id);

// The f-arguments subtracted from f(p) in the auxiliary definition; these are
// also the replacement points a weighted candidate projects to.
std::vector<Point3> aux_projection_points(AuxId id, const Point3& p);

// f(p) minus the sum of f over the projection points; face functions throw
// std::domain_error off their face.
double eval_auxiliary(AuxId id, const FunctionSource& f, const Point3& p);

struct OptimizerConfig {
    int scan = 33;            // grid nodes per active axis
    double refine_tol = 1e-7; // golden-section interval target
    double tie_tol = 1e-10;   // improvements below this keep the earlier point
};

struct MaximizeResult {
    Point3 point;
    double value = 0.0;
};

// Dense lexicographic grid scan, then coordinate-wise golden-section sweeps;
// ties resolve to the lexicographically smallest point.
MaximizeResult maximize_auxiliary(AuxId id, const FunctionSource& f,
                                  const OptimizerConfig& cfg = {});

// T1..T8 in the fixed corner naming.
const std::array<Point3, 8>& cube_corners();

struct CandidateSet {
    std::array<Point3, 8> T;
    std::array<Point3, 8> M;
    std::array<Point3, 6> F;
    std::array<double, 8> M_value{};
    std::array<double, 6> F_value{};
    std::vector<Point3> U;  // corners + maximizers, merged and lex-sorted
    std::vector<double> Ux, Uy, Uz;
};

CandidateSet build_candidate_set(const FunctionSource& f, const OptimizerConfig& cfg = {});

std::string candidate_set_to_json(const CandidateSet& cs);

} // namespace seplinf
