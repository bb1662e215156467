#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "seplinf/catalog.hpp"

using namespace seplinf;

namespace {

const CatalogEntry& entry_by_id(const std::string& id) {
    for (const auto& e : catalog_entries())
        if (id == e.id) return e;
    REQUIRE(false);
    return catalog_entries().front();
}

Rational weight_at(const CycleVector& c, const Point3& p) {
    int i = c.set().find(p);
    REQUIRE(i >= 0);
    return c.weights()[i];
}

} // namespace

TEST_CASE("catalog holds 123 entries in document order with matching groups") {
    const auto& entries = catalog_entries();
    CHECK(entries.size() == 123);
    CHECK(std::string(entries.front().id) == "1.1");
    CHECK(std::string(entries.back().id) == "9.6");
    std::set<std::string> ids;
    for (const auto& e : entries) {
        ids.insert(e.id);
        CHECK(e.group == std::stoi(std::string(e.id).substr(0, std::string(e.id).find('.'))));
        int t1 = 0, t8 = 0;
        for (const auto& t : e.terms) {
            if (t.kind == 'T' && t.index == 1) t1 = t.weight;
            if (t.kind == 'T' && t.index == 8) t8 = t.weight;
        }
        CHECK(t1 > 0);
        CHECK(t8 > 0);
    }
    CHECK(ids.size() == 123);
}

TEST_CASE("entry 1.1 instantiates to the four-corner cycle") {
    auto f = parse_function_spec("builtin:product_xz");
    auto cs = build_candidate_set(f);
    auto c = instantiate_entry(entry_by_id("1.1"), cs);
    REQUIRE(c.size() == 4);
    CHECK(weight_at(c, {0, 0, 0}) == Rational(1));
    CHECK(weight_at(c, {1, 1, 1}) == Rational(1));
    CHECK(weight_at(c, {0, 0, 1}) == Rational(-1));
    CHECK(weight_at(c, {1, 1, 0}) == Rational(-1));
}

TEST_CASE("entry 4.1 weights the three even maximizers against the anchors") {
    const auto& e = entry_by_id("4.1");
    std::map<std::string, int> got;
    for (const auto& t : e.terms) got[t.kind + std::to_string(t.index)] = t.weight;
    std::map<std::string, int> want{{"T1", 3}, {"T8", 3}, {"M3", 1}, {"M5", 1}, {"M7", 1}};
    CHECK(got == want);
}

TEST_CASE("instantiating an M entry expands the weighted projections") {
    // A generic interior M3 so no projected point merges away.
    CandidateSet cs;
    auto corners = cube_corners();
    std::copy(corners.begin(), corners.end(), cs.T.begin());
    for (auto& m : cs.M) m = {0.5, 0.5, 0.5};
    cs.M[2] = {0.3, 0.6, 0.7}; // M3
    for (auto& fp : cs.F) fp = {0, 0, 0};

    auto c = instantiate_entry(entry_by_id("2.3"), cs);
    // 2.3 carries T1(3), T8(2), M3(1), T2(-1), T6(-2) plus the g3 projections
    // (x,0,1), (1,0,z), (1,y,0) of M3 at weight -1.
    REQUIRE(c.size() == 8);
    CHECK(weight_at(c, {0, 0, 0}) == Rational(3));
    CHECK(weight_at(c, {1, 1, 1}) == Rational(2));
    CHECK(weight_at(c, {0.3, 0.6, 0.7}) == Rational(1));
    CHECK(weight_at(c, {0, 0, 1}) == Rational(-1));
    CHECK(weight_at(c, {0, 1, 0}) == Rational(-2));
    CHECK(weight_at(c, {0.3, 0, 1}) == Rational(-1));
    CHECK(weight_at(c, {1, 0, 0.7}) == Rational(-1));
    CHECK(weight_at(c, {1, 0.6, 0}) == Rational(-1));
    CHECK(is_weak_cycle(c.set()));
}

TEST_CASE("every entry instantiates to a balanced cycle for a generic function") {
    auto f = parse_function_spec("builtin:class_mix:seed=1");
    auto cs = build_candidate_set(f);
    for (const auto& e : catalog_entries()) {
        auto c = instantiate_entry(e, cs);
        CHECK(is_weak_cycle(c.set()));
        CHECK(c.size() >= 4);
    }
}

TEST_CASE("catalog evaluation recovers the product_xz error") {
    auto f = parse_function_spec("builtin:product_xz");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    CHECK(eval.best_ratio == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(eval.best_id == "1.1");
    CHECK(eval.ratios.size() == 123);
    CHECK(eval.ratios.front().id == "1.1");
}

TEST_CASE("catalog evaluation recovers the product_xyz error through entry 1.5") {
    auto f = parse_function_spec("builtin:product_xyz");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    CHECK(eval.best_ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(eval.best_id == "1.5");
    std::multiset<long long> weights;
    for (const auto& w : eval.best_cycle.weights())
        weights.insert(static_cast<long long>(w.num()));
    CHECK(weights == std::multiset<long long>{-1, -1, -1, 1, 2});
}

TEST_CASE("catalog evaluation on the piecewise builtin peaks at entry 5.2") {
    auto f = parse_function_spec("builtin:remark41_piecewise");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    CHECK(eval.best_ratio == doctest::Approx(0.15625).epsilon(1e-7));
    CHECK(eval.best_id == "5.2");
    CHECK(approx_equal(cs.M[4], {0.5, 0.0, 0.5}, 1e-6));
    CHECK(cs.M_value[4] == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("separable functions score zero on every entry") {
    auto f = parse_function_spec("builtin:separable_mix:seed=2");
    auto cs = build_candidate_set(f);
    auto eval = evaluate_catalog(f, cs);
    for (const auto& r : eval.ratios) CHECK(std::abs(r.ratio) <= 1e-10);
    CHECK(std::abs(eval.best_ratio) <= 1e-10);
}

TEST_CASE("matrix regeneration reproduces the catalog exactly") {
    auto report = verify_catalog_against_matrix();
    CHECK(report.circuit_count == 123);
    CHECK(report.rank == 4);
    CHECK(report.mismatches.empty());
}

TEST_CASE("catalog table serializes in descending ratio order") {
    auto f = parse_function_spec("builtin:product_xyz");
    auto cs = build_candidate_set(f);
    auto json = catalog_table_to_json(f, cs);
    auto first = json.find("\"1.5\"");
    CHECK(first != std::string::npos);
    CHECK(first < json.find("\"1.1\""));
}

TEST_CASE("a coarse scan still recovers a corner-attained error exactly") {
    auto f = parse_function_spec("builtin:product_xz");
    auto cs = build_candidate_set(f, {5, 1e-7, 1e-10});
    auto eval = evaluate_catalog(f, cs);
    CHECK(eval.best_ratio == doctest::Approx(0.25).epsilon(1e-6));
}
