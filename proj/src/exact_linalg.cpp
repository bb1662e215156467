#include "seplinf/exact_linalg.hpp"

#include <algorithm>

namespace seplinf {

int integer_matrix_rank(std::vector<std::vector<std::int64_t>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::int64_t prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::optional<std::vector<BigInt>>
integer_matrix_unit_kernel(const std::vector<std::vector<std::int64_t>>& im) {
    std::size_t rows = im.size(), cols = im.empty() ? 0 : im[0].size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = Rational(im[r][c]);

    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        Rational inv = Rational(1) / m[rank][col];
        for (std::size_t c = col; c < cols; ++c) m[rank][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Rational factor = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    if (rank + 1 != cols) return std::nullopt;

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;

    std::vector<Rational> v(cols);
    v[free_col] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r)
        v[static_cast<std::size_t>(pivot_col[r])] = -m[r][free_col];

    BigInt lcm = 1;
    for (const Rational& q : v) lcm = boost::multiprecision::lcm(lcm, q.den());
    std::vector<BigInt> ints(cols);
    BigInt g = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        ints[c] = v[c].num() * (lcm / v[c].den());
        g = boost::multiprecision::gcd(g, ints[c] < 0 ? BigInt(-ints[c]) : ints[c]);
    }
    if (g > 1)
        for (BigInt& b : ints) b /= g;
    return ints;
}

} // namespace seplinf
