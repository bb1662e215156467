#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seplinf/rational.hpp"

namespace seplinf {

// Fraction-free Bareiss elimination; exact for any integer matrix whose
// minors fit in int64 (trivially true for the small 0/±2 matrices here).
int integer_matrix_rank(std::vector<std::vector<std::int64_t>> m);

// Kernel vector of an integer matrix with nullity exactly one, scaled to
// coprime integers; nullopt when the nullity differs from one.
std::optional<std::vector<BigInt>>
integer_matrix_unit_kernel(const std::vector<std::vector<std::int64_t>>& m);

} // namespace seplinf
