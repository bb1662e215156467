#include <doctest.h>

#include <algorithm>
#include <random>

#include "seplinf/candidate_set.hpp"

using namespace seplinf;

namespace {

const FunctionSource& zero_fn() {
    static FunctionSource f = FunctionSource::callable(
        "test:zero", [](double, double, double) { return 0.0; });
    return f;
}

} // namespace

TEST_CASE("corner naming is the fixed T1..T8 walk") {
    const auto& T = cube_corners();
    CHECK(approx_equal(T[0], {0, 0, 0}, 0.0));
    CHECK(approx_equal(T[1], {0, 0, 1}, 0.0));
    CHECK(approx_equal(T[2], {1, 0, 1}, 0.0));
    CHECK(approx_equal(T[3], {1, 0, 0}, 0.0));
    CHECK(approx_equal(T[4], {1, 1, 0}, 0.0));
    CHECK(approx_equal(T[5], {0, 1, 0}, 0.0));
    CHECK(approx_equal(T[6], {0, 1, 1}, 0.0));
    CHECK(approx_equal(T[7], {1, 1, 1}, 0.0));
}

TEST_CASE("auxiliary evaluations match hand-computed values for product_xz") {
    auto f = parse_function_spec("builtin:product_xz");
    // g1 subtracts f(x,0,1), f(1,y,0), f(0,1,z).
    CHECK(eval_auxiliary(AuxId::G1, f, {0, 0, 1}) == doctest::Approx(0.0));
    CHECK(eval_auxiliary(AuxId::G1, f, {1, 1, 1}) == doctest::Approx(0.0));
    // h1 lives on z=0 and subtracts f(0,y,1), f(x,0,1).
    CHECK(eval_auxiliary(AuxId::H1, f, {1, 1, 0}) == doctest::Approx(-1.0));
    CHECK(eval_auxiliary(AuxId::G4, zero_fn(), {0.3, 0.4, 0.5}) == doctest::Approx(0.0));
}

TEST_CASE("face functions reject points off their face") {
    auto f = parse_function_spec("builtin:product_xz");
    CHECK_THROWS_AS(eval_auxiliary(AuxId::H1, f, {0.5, 0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(eval_auxiliary(AuxId::H6, f, {0.0, 0.5, 0.5}), std::domain_error);
    CHECK(aux_face(AuxId::H1) == std::pair<int, double>{2, 0.0});
    CHECK(aux_face(AuxId::H6) == std::pair<int, double>{0, 1.0});
    CHECK_FALSE(aux_face(AuxId::G3).has_value());
}

TEST_CASE("projection points follow the auxiliary definitions") {
    Point3 p{0.2, 0.4, 0.8};
    auto g1 = aux_projection_points(AuxId::G1, p);
    REQUIRE(g1.size() == 3);
    CHECK(approx_equal(g1[0], {0.2, 0, 1}, 0.0));
    CHECK(approx_equal(g1[1], {1, 0.4, 0}, 0.0));
    CHECK(approx_equal(g1[2], {0, 1, 0.8}, 0.0));
    auto h5 = aux_projection_points(AuxId::H5, {0, 0.4, 0.8});
    REQUIRE(h5.size() == 2);
    CHECK(approx_equal(h5[0], {1, 0, 0.8}, 0.0));
    CHECK(approx_equal(h5[1], {1, 0.4, 0}, 0.0));
}

TEST_CASE("maximizer returns the lexicographically smallest argmax for flat input") {
    auto r = maximize_auxiliary(AuxId::G1, zero_fn());
    CHECK(r.value == doctest::Approx(0.0));
    CHECK(approx_equal(r.point, {0, 0, 0}, 0.0));
    auto rh = maximize_auxiliary(AuxId::H2, zero_fn());
    CHECK(approx_equal(rh.point, {0, 0, 1}, 0.0)); // lex-least point of the z=1 face
}

TEST_CASE("maximizer finds the interior face optimum of product_xz") {
    auto f = parse_function_spec("builtin:product_xz");
    // On y=0: h3 subtracts f(0,1,z) + f(x,1,0) = 0, so h3 = xz, maximal at (1,0,1).
    auto r = maximize_auxiliary(AuxId::H3, f);
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(approx_equal(r.point, {1, 0, 1}, 1e-9));
}

TEST_CASE("maximizer dominates a random audit sample") {
    auto f = parse_function_spec("builtin:class_mix:seed=5");
    std::mt19937_64 rng(42);
    auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    for (AuxId id : {AuxId::G2, AuxId::G7, AuxId::H4}) {
        auto r = maximize_auxiliary(id, f);
        auto face = aux_face(id);
        for (int i = 0; i < 10000; ++i) {
            Point3 p{draw(), draw(), draw()};
            if (face) p[face->first] = face->second;
            CHECK(eval_auxiliary(id, f, p) <= r.value + 1e-6);
        }
    }
}

TEST_CASE("candidate set for the zero function collapses to the corners") {
    auto cs = build_candidate_set(zero_fn());
    CHECK(cs.U.size() == 8);
    for (const auto& p : cs.U) {
        CHECK((p.x == 0.0 || p.x == 1.0));
        CHECK((p.y == 0.0 || p.y == 1.0));
        CHECK((p.z == 0.0 || p.z == 1.0));
    }
    CHECK(std::is_sorted(cs.U.begin(), cs.U.end(), lex_less));
    CHECK(cs.Ux == std::vector<double>{0.0, 1.0});
    CHECK(cs.Uy == std::vector<double>{0.0, 1.0});
    CHECK(cs.Uz == std::vector<double>{0.0, 1.0});
}

TEST_CASE("candidate set for product_xz contains the corners and stays small") {
    auto f = parse_function_spec("builtin:product_xz");
    auto cs = build_candidate_set(f);
    for (const auto& corner : cube_corners()) {
        bool found = false;
        for (const auto& p : cs.U) found = found || approx_equal(p, corner, 1e-9);
        CHECK(found);
    }
    CHECK(cs.U.size() >= 8);
    CHECK(cs.Ux.size() <= 16);
    CHECK(cs.Uy.size() <= 16);
    CHECK(cs.Uz.size() <= 16);
    for (const auto& axis : {cs.Ux, cs.Uy, cs.Uz}) {
        CHECK(axis.front() == 0.0);
        CHECK(axis.back() == 1.0);
        CHECK(std::is_sorted(axis.begin(), axis.end()));
    }
}

TEST_CASE("maximizer values are recorded alongside the maximizer points") {
    auto f = parse_function_spec("builtin:product_xz");
    auto cs = build_candidate_set(f);
    for (int i = 0; i < 8; ++i) {
        AuxId id = static_cast<AuxId>(i);
        CHECK(cs.M_value[i] ==
              doctest::Approx(eval_auxiliary(id, f, cs.M[i])).epsilon(1e-7));
    }
    for (int k = 0; k < 6; ++k) {
        AuxId id = static_cast<AuxId>(8 + k);
        CHECK(cs.F_value[k] ==
              doctest::Approx(eval_auxiliary(id, f, cs.F[k])).epsilon(1e-7));
    }
}

TEST_CASE("aux names enumerate g1..g8 then h1..h6") {
    CHECK(aux_name(AuxId::G1) == "g1");
    CHECK(aux_name(AuxId::G8) == "g8");
    CHECK(aux_name(AuxId::H1) == "h1");
    CHECK(aux_name(AuxId::H6) == "h6");
}
