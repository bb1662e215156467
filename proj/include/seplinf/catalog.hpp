#pragma once

#include <string>
#include <vector>

#include "seplinf/candidate_set.hpp"
#include "seplinf/cycle.hpp"
#include "seplinf/function_model.hpp"

namespace seplinf {

// One symbolic term: kind 'T', 'M' or 'F', 1-based index, integer weight.
struct CatalogTerm {
    char kind;
    int index;
    int weight;
};

struct CatalogEntry {
    const char* id;
    int group;
    std::vector<CatalogTerm> terms;
};

// The 123 configuration families in document order ("1.1" .. "9.6").
const std::vector<CatalogEntry>& catalog_entries();

// Substitute the candidate points for the labels, apply the weighted
// projections, merge coincident points (1e-9) and drop zero sums. The result
// is a plane-sum-zero cycle by construction; a violation is an internal error.
CycleVector instantiate_entry(const CatalogEntry& entry, const CandidateSet& cs);

struct EntryRatio {
    std::string id;
    double ratio = 0.0;
};

struct CatalogEvaluation {
    std::string best_id;
    double best_ratio = 0.0;
    CycleVector best_cycle;
    std::vector<EntryRatio> ratios; // document order
};

// Evaluates every entry; the maximum ratio is the approximation error, with
// ties resolved to the earliest entry in document order.
CatalogEvaluation evaluate_catalog(const FunctionSource& f, const CandidateSet& cs);

// JSON array of {"id","ratio","points","weights"}, descending ratio.
std::string catalog_table_to_json(const FunctionSource& f, const CandidateSet& cs);

struct MatrixReport {
    int circuit_count = 0;
    int rank = 0;
    std::vector<std::string> mismatches;
};

// Regenerates the catalog from the face-count matrix: enumerates circuits
// through the two anchor columns, applies the sign and face-parity
// constraints, and matches the result against the stored table both ways.
MatrixReport verify_catalog_against_matrix();

std::string matrix_report_to_json(const MatrixReport& report);

} // namespace seplinf
