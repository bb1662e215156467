#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "seplinf/errors.hpp"
#include "seplinf/function_model.hpp"

using namespace seplinf;

TEST_CASE("builtin product_xz evaluates x times z") {
    auto f = parse_function_spec("builtin:product_xz");
    CHECK(f(0.25, 0.9, 0.5) == doctest::Approx(0.125));
    CHECK(f(1.0, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(f(0.0, 1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("builtin product_xy and product_xyz evaluate their monomials") {
    auto fxy = parse_function_spec("builtin:product_xy");
    auto fxyz = parse_function_spec("builtin:product_xyz");
    CHECK(fxy(0.5, 0.5, 0.0) == doctest::Approx(0.25));
    CHECK(fxy(0.5, 0.5, 1.0) == doctest::Approx(0.25));
    CHECK(fxyz(0.5, 0.5, 0.5) == doctest::Approx(0.125));
    CHECK(fxyz(1.0, 1.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("builtin bilinear_sum evaluates the symmetric pair sum") {
    auto f = parse_function_spec("builtin:bilinear_sum");
    CHECK(f(1.0, 1.0, 1.0) == doctest::Approx(3.0));
    CHECK(f(0.5, 0.5, 0.0) == doctest::Approx(0.25));
}

TEST_CASE("remark41_piecewise branches agree on their shared boundaries") {
    auto f = parse_function_spec("builtin:remark41_piecewise");
    for (double y : {0.0, 0.3, 1.0}) {
        for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            double below = f(0.5 - 1e-12, y, t);
            double above = f(0.5 + 1e-12, y, t);
            CHECK(below == doctest::Approx(above).epsilon(1e-9));
            below = f(t, y, 0.5 - 1e-12);
            above = f(t, y, 0.5 + 1e-12);
            CHECK(below == doctest::Approx(above).epsilon(1e-9));
        }
    }
    CHECK(f(0.25, 0.7, 0.25) == doctest::Approx(0.0625));
    CHECK(f(1.0, 1.0, 1.0) == doctest::Approx(0.75));
    CHECK(f(1.0, 0.0, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("affine builtin applies scale and separable shifts") {
    auto f = parse_function_spec("builtin:affine:of=product_xz,a=2,b=1,e=-0.5");
    CHECK(f(0.5, 0.0, 0.5) == doctest::Approx(2 * 0.25 + 0.5 - 0.5));
    CHECK(f(0.0, 1.0, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("delta check accepts product_xz weakly but not strictly") {
    auto f = parse_function_spec("builtin:product_xz");
    auto rep = check_delta_conditions(f, 9, 1e-12);
    CHECK(rep.satisfied_weak);
    CHECK_FALSE(rep.satisfied_strict);
    CHECK(rep.worst_violation == doctest::Approx(0.0));
}

TEST_CASE("delta check accepts bilinear_sum strictly") {
    auto f = parse_function_spec("builtin:bilinear_sum");
    auto rep = check_delta_conditions(f, 9, 1e-12);
    CHECK(rep.satisfied_weak);
    CHECK(rep.satisfied_strict);
    CHECK(rep.worst_violation > 0.0);
}

TEST_CASE("delta check rejects neg_xy and reports the failing axes") {
    auto f = parse_function_spec("builtin:neg_xy");
    auto rep = check_delta_conditions(f, 9, 1e-12);
    CHECK_FALSE(rep.satisfied_weak);
    CHECK(rep.worst_axes == "xy");
    CHECK(rep.worst_violation < 0.0);
}

TEST_CASE("class_mix is deterministic per seed and passes the delta check") {
    auto a = parse_function_spec("builtin:class_mix:seed=3");
    auto b = parse_function_spec("builtin:class_mix:seed=3");
    auto c = parse_function_spec("builtin:class_mix:seed=4");
    CHECK(a(0.3, 0.7, 0.9) == b(0.3, 0.7, 0.9));
    CHECK(a(0.3, 0.7, 0.9) != c(0.3, 0.7, 0.9));
    auto rep = check_delta_conditions(a, 9, 1e-12);
    CHECK(rep.satisfied_weak);
}

TEST_CASE("separable_mix is deterministic per seed") {
    auto a = parse_function_spec("builtin:separable_mix:seed=11");
    auto b = parse_function_spec("builtin:separable_mix:seed=11");
    CHECK(a(0.1, 0.2, 0.3) == b(0.1, 0.2, 0.3));
    auto rep = check_delta_conditions(a, 9, 1e-9);
    CHECK(rep.satisfied_weak);
}

TEST_CASE("parse_function_spec rejects malformed input") {
    CHECK_THROWS_AS(parse_function_spec("product_xz"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:no_such_fn"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("oracle:product_xz"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:class_mix"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:class_mix:seed=abc"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:affine:a=2"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:affine:of=product_xz,a=two"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("builtin:product_xz:=3"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("grid:"), usage_error);
    CHECK_THROWS_AS(parse_function_spec("grid:/no/such/file.json"), usage_error);
}

TEST_CASE("evaluate rejects points outside the unit cube") {
    auto f = parse_function_spec("builtin:product_xz");
    CHECK_THROWS_AS(evaluate(f, {1.5, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(evaluate(f, {0.0, -0.1, 0.0}), std::domain_error);
    CHECK(evaluate(f, {1.0 + 1e-13, 1.0, 1.0}) == doctest::Approx(1.0));
}

namespace {

std::string write_grid_fixture() {
    nlohmann::json j;
    j["nx"] = 3;
    j["ny"] = 2;
    j["nz"] = 2;
    j["xs"] = {0.0, 0.5, 1.0};
    j["ys"] = {0.0, 1.0};
    j["zs"] = {0.0, 1.0};
    std::vector<double> vals;
    for (double x : {0.0, 0.5, 1.0})
        for (double y : {0.0, 1.0})
            for (double z : {0.0, 1.0}) vals.push_back(x * y + z);
    j["values"] = vals;
    std::string path = "/tmp/seplinf_test_grid.json";
    std::ofstream out(path);
    out << j.dump();
    return path;
}

} // namespace

TEST_CASE("grid source interpolates node values exactly and trilinearly between") {
    std::string path = write_grid_fixture();
    auto f = parse_function_spec("grid:" + path);
    CHECK(f.kind() == FunctionSource::Kind::Grid);
    CHECK(f(0.5, 1.0, 0.0) == doctest::Approx(0.5));
    CHECK(f(1.0, 1.0, 1.0) == doctest::Approx(2.0));
    CHECK(f(0.25, 0.5, 0.5) == doctest::Approx(0.25 * 0.5 + 0.5));
    auto rep = check_delta_conditions(f, 9, 1e-9);
    CHECK(rep.satisfied_weak);
    std::remove(path.c_str());
}

TEST_CASE("grid loader rejects inconsistent files") {
    std::string path = "/tmp/seplinf_bad_grid.json";
    {
        std::ofstream out(path);
        out << R"({"nx":2,"ny":2,"nz":2,"xs":[0.0,0.5],"ys":[0.0,1.0],"zs":[0.0,1.0],)"
            << R"("values":[0,0,0,0,0,0,0,0]})";
    }
    CHECK_THROWS_AS(parse_function_spec("grid:" + path), usage_error);
    {
        std::ofstream out(path);
        out << R"({"nx":2,"ny":2,"nz":2,"xs":[0.0,1.0],"ys":[0.0,1.0],"zs":[0.0,1.0],)"
            << R"("values":[0,0,0]})";
    }
    CHECK_THROWS_AS(parse_function_spec("grid:" + path), usage_error);
    {
        std::ofstream out(path);
        out << "not json";
    }
    CHECK_THROWS_AS(parse_function_spec("grid:" + path), usage_error);
    std::remove(path.c_str());
}

TEST_CASE("descriptor strings record the parsed spec") {
    CHECK(parse_function_spec("builtin:product_xz").descriptor() == "builtin:product_xz");
    auto f = parse_function_spec("builtin:class_mix:seed=7");
    CHECK(f.descriptor() == "builtin:class_mix:seed=7");
}
