#include "seplinf/catalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seplinf/exact_linalg.hpp"
#include "seplinf/parallel.hpp"

namespace seplinf {

namespace {

AuxId g_aux(int i) { return static_cast<AuxId>(i - 1); }
AuxId h_aux(int k) { return static_cast<AuxId>(7 + k); }

} // namespace

CycleVector instantiate_entry(const CatalogEntry& entry, const CandidateSet& cs) {
    WeightedPointSet s;
    for (const CatalogTerm& t : entry.terms) {
        Rational w(t.weight);
        std::size_t idx = static_cast<std::size_t>(t.index - 1);
        switch (t.kind) {
        case 'T':
            s.add(cs.T[idx], w);
            break;
        case 'M':
            s.add(cs.M[idx], w);
            for (const Point3& q : aux_projection_points(g_aux(t.index), cs.M[idx]))
                s.add(q, -w);
            break;
        case 'F':
            s.add(cs.F[idx], w);
            for (const Point3& q : aux_projection_points(h_aux(t.index), cs.F[idx]))
                s.add(q, -w);
            break;
        default:
            throw std::logic_error("unknown catalog term kind");
        }
    }
    try {
        return CycleVector::from_weighted(std::move(s));
    } catch (const std::invalid_argument& e) {
        throw std::logic_error(std::string("entry ") + entry.id +
                               " failed to instantiate: " + e.what());
    }
}

CatalogEvaluation evaluate_catalog(const FunctionSource& f, const CandidateSet& cs) {
    const auto& entries = catalog_entries();
    std::vector<double> ratio(entries.size());
    std::vector<CycleVector> cycles(entries.size());
    parallel_for(entries.size(), [&](std::size_t i) {
        cycles[i] = instantiate_entry(entries[i], cs);
        ratio[i] = golomb_ratio(cycles[i], f);
    });

    CatalogEvaluation out;
    out.ratios.reserve(entries.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out.ratios.push_back({entries[i].id, ratio[i]});
        if (ratio[i] > ratio[best]) best = i;
    }
    out.best_id = entries[best].id;
    out.best_ratio = ratio[best];
    out.best_cycle = cycles[best];
    return out;
}

std::string catalog_table_to_json(const FunctionSource& f, const CandidateSet& cs) {
    const auto& entries = catalog_entries();
    std::vector<double> ratio(entries.size());
    std::vector<CycleVector> cycles(entries.size());
    parallel_for(entries.size(), [&](std::size_t i) {
        cycles[i] = instantiate_entry(entries[i], cs);
        ratio[i] = golomb_ratio(cycles[i], f);
    });

    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });

    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i : order) {
        nlohmann::json e;
        e["id"] = entries[i].id;
        e["ratio"] = ratio[i];
        e["points"] = nlohmann::json::array();
        e["weights"] = nlohmann::json::array();
        for (std::size_t p = 0; p < cycles[i].size(); ++p) {
            const Point3& pt = cycles[i].points()[p];
            e["points"].push_back({pt.x, pt.y, pt.z});
            e["weights"].push_back(
                {{"num", static_cast<long long>(cycles[i].weights()[p].num())},
                 {"den", static_cast<long long>(cycles[i].weights()[p].den())}});
        }
        arr.push_back(std::move(e));
    }
    return arr.dump(2);
}

namespace {

// Face-count matrix: rows are the faces x=0, x=1, y=0, y=1, z=0, z=1 and
// columns follow the fixed label order T1, T8, M1..M8, T2..T7, F1..F6.
constexpr int kMatrixRows = 6;
constexpr int kMatrixCols = 22;

const std::array<std::array<std::int64_t, kMatrixCols>, kMatrixRows>& face_matrix() {
    static const std::array<std::array<std::int64_t, kMatrixCols>, kMatrixRows> m = {{
        {1, 0, -1, -1, 0, 0, -1, -2, -2, -1, 1, 0, 0, 0, 1, 1, -1, 0, -1, 0, 1, -2},
        {0, 1, -1, -1, -2, -2, -1, 0, 0, -1, 0, 1, 1, 1, 0, 0, 0, -1, 0, -1, -2, 1},
        {1, 0, -1, -1, -2, -1, 0, 0, -1, -2, 1, 1, 1, 0, 0, 0, -1, 0, 1, -2, -1, 0},
        {0, 1, -1, -1, 0, -1, -2, -2, -1, 0, 0, 0, 0, 1, 1, 1, 0, -1, -2, 1, 0, -1},
        {1, 0, -1, -1, -1, -2, -2, -1, 0, 0, 0, 0, 1, 1, 1, 0, 1, -2, -1, 0, -1, 0},
        {0, 1, -1, -1, -1, 0, 0, -1, -2, -2, 1, 1, 0, 0, 0, 1, -2, 1, 0, -1, 0, -1},
    }};
    return m;
}

std::string column_label(int c) {
    if (c == 0) return "T1";
    if (c == 1) return "T8";
    if (c < 10) return "M" + std::to_string(c - 1);
    if (c < 16) return "T" + std::to_string(c - 8);
    return "F" + std::to_string(c - 15);
}

using Canonical = std::map<std::string, long long>;

Canonical canonical_entry(const CatalogEntry& e) {
    Canonical c;
    for (const CatalogTerm& t : e.terms)
        c[std::string(1, t.kind) + std::to_string(t.index)] = t.weight;
    return c;
}

std::string canonical_str(const Canonical& c) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [label, w] : c) {
        if (!first) os << ", ";
        first = false;
        os << label << ": " << w;
    }
    os << "}";
    return os.str();
}

// Sign pattern: anchors positive, maximizer and face columns positive,
// remaining corners negative, no two face columns of equal index parity.
bool admissible(const std::vector<int>& cols, const std::vector<BigInt>& lam) {
    std::vector<int> faces;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        int c = cols[i];
        const BigInt& w = lam[i];
        if (c <= 1) {
            if (w <= 0) return false;
        } else if (c < 10) {
            if (w <= 0) return false;
        } else if (c < 16) {
            if (w >= 0) return false;
        } else {
            if (w <= 0) return false;
            faces.push_back(c - 15);
        }
    }
    for (std::size_t a = 0; a < faces.size(); ++a)
        for (std::size_t b = a + 1; b < faces.size(); ++b)
            if ((faces[a] - faces[b]) % 2 == 0) return false;
    return true;
}

} // namespace

MatrixReport verify_catalog_against_matrix() {
    const auto& m = face_matrix();
    MatrixReport report;

    std::vector<std::vector<std::int64_t>> full(kMatrixRows,
                                                std::vector<std::int64_t>(kMatrixCols));
    for (int r = 0; r < kMatrixRows; ++r)
        for (int c = 0; c < kMatrixCols; ++c)
            full[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    report.rank = integer_matrix_rank(full);

    std::vector<Canonical> generated;
    std::vector<int> combo;
    // Supports always include both anchor columns; up to four more columns.
    for (int extra = 1; extra <= 4; ++extra) {
        combo.assign(static_cast<std::size_t>(extra), 0);
        for (int i = 0; i < extra; ++i) combo[static_cast<std::size_t>(i)] = 2 + i;
        while (true) {
            std::vector<int> cols = {0, 1};
            cols.insert(cols.end(), combo.begin(), combo.end());
            std::vector<std::vector<std::int64_t>> sub(
                kMatrixRows, std::vector<std::int64_t>(cols.size()));
            for (int r = 0; r < kMatrixRows; ++r)
                for (std::size_t c = 0; c < cols.size(); ++c)
                    sub[static_cast<std::size_t>(r)][c] =
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols[c])];
            if (auto kv = integer_matrix_unit_kernel(sub)) {
                if ((*kv)[0] < 0)
                    for (BigInt& b : *kv) b = -b;
                if (admissible(cols, *kv)) {
                    Canonical c;
                    for (std::size_t i = 0; i < cols.size(); ++i)
                        c[column_label(cols[i])] = static_cast<long long>((*kv)[i]);
                    generated.push_back(std::move(c));
                }
            }
            int pos = extra - 1;
            while (pos >= 0 && combo[static_cast<std::size_t>(pos)] ==
                                   kMatrixCols - (extra - pos)) {
                --pos;
            }
            if (pos < 0) break;
            ++combo[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < extra; ++i)
                combo[static_cast<std::size_t>(i)] =
                    combo[static_cast<std::size_t>(i - 1)] + 1;
        }
    }

    report.circuit_count = static_cast<int>(generated.size());

    std::map<Canonical, std::string> table;
    for (const CatalogEntry& e : catalog_entries()) table[canonical_entry(e)] = e.id;

    std::map<Canonical, bool> seen;
    for (const Canonical& g : generated) {
        if (!table.count(g))
            report.mismatches.push_back("generated circuit missing from the table: " +
                                        canonical_str(g));
        seen[g] = true;
    }
    for (const auto& [c, id] : table)
        if (!seen.count(c))
            report.mismatches.push_back("table entry " + id +
                                        " not generated from the matrix: " +
                                        canonical_str(c));
    return report;
}

std::string matrix_report_to_json(const MatrixReport& report) {
    nlohmann::json j;
    j["circuit_count"] = report.circuit_count;
    j["rank"] = report.rank;
    j["mismatches"] = report.mismatches;
    return j.dump(2);
}

} // namespace seplinf
