#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "catalog.hpp"
#include "cesaro/io.hpp"

using namespace cesaro;
using doctest::Approx;

TEST_CASE("measure specs round-trip") {
    for (const auto& name : fixtures::catalog_names()) {
        const auto m = fixtures::measure(name);
        const auto j = io::measure_to_json(m);
        const auto m2 = io::measure_from_json(j);
        CHECK(io::measure_to_json(m2) == j);
        CHECK(moment(m2, 17) == moment(m, 17));
    }
}

TEST_CASE("malformed measure specs are input errors") {
    using io::json;
    CHECK_THROWS_AS(io::measure_from_json(json::array()), io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json{{"components", json::array()}}), io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"components":[{"kind":"spline"}]})")), io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"components":[{"kind":"point","w":1}]})")), io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"components":[{"kind":"point","w":1,"t0":0.5,"x":1}]})")),
                    io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"components":[{"kind":"point","w":"1","t0":0.5}]})")),
                    io::SpecError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"components":[{"kind":"point","w":1,"t0":1.0}]})")),
                    io::SpecError);
    CHECK_THROWS_AS(io::load_measure("/nonexistent/measure.json"), io::SpecError);
}

TEST_CASE("function specs") {
    const auto ones = io::load_function(fixtures::function_path("ones"));
    CHECK(ones.degree() == 0);
    CHECK(ones[0] == cplx(1.0));
    const auto lg = io::load_function(fixtures::function_path("log"));
    CHECK(lg.degree() == 4096);
    CHECK(lg[4].real() == 0.25);
    const auto ft = io::load_function(fixtures::function_path("ft09"));
    CHECK(ft[1].real() == Approx(0.9 / std::sqrt(1.0 + std::log(10.0))).epsilon(1e-14));
    const auto c = io::function_from_json(io::json::parse(R"({"coeffs_re":[1,2],"coeffs_im":[0,-1]})"));
    CHECK(c[1] == cplx(2.0, -1.0));
    CHECK(io::function_from_json(io::json::parse(R"({"builtin":"log_one_over_one_minus_z"})"), 12).degree() == 12);
    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"({"coeffs_re":[1,2],"coeffs_im":[0]})")), io::SpecError);
    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"({"builtin":"sin"})")), io::SpecError);
    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"({"builtin":"test_function","t":0.2,"p":2})")),
                    io::SpecError);
}

TEST_CASE("CSV uses 17 significant digits") {
    CHECK(io::fmt(0.1) == "0.10000000000000001");
    CHECK(io::fmt(0.25) == "0.25");
    const auto csv = io::moments_csv(moments(RadialMeasure::point(1.0, 0.9), 2));
    CHECK(csv.rfind("n,mu_n,tolerance\n", 0) == 0);
    CHECK(csv.find("\n2,0.81000000000000005,") != std::string::npos);
}

TEST_CASE("non-finite numbers are spelled out in JSON") {
    CHECK(io::number(INFINITY) == "inf");
    CHECK(io::number(NAN) == "nan");
    CHECK(io::number(1.5) == 1.5);
}

TEST_CASE("verdict JSON carries ladders and labels") {
    const auto v = classify(RadialMeasure::lebesgue(), {1.0, 0.5});
    const auto j = io::to_json(v);
    CHECK(j["label"] == "diverging");
    CHECK(j["agreement"] == true);
    CHECK(j["per_criterion"]["tail"]["values"].size() == 15);
    CHECK(j["probes"].size() == 3);
}

TEST_CASE("atomic writes replace the target") {
    const auto path = (std::filesystem::temp_directory_path() / "cesaro_io_test.txt").string();
    io::write_output(path, "first\n");
    io::write_output(path, "second\n");
    CHECK(io::read_file(path) == "second\n");
    CHECK(!std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(io::write_output("/nonexistent/dir/out.txt", "x"), io::SpecError);
}
