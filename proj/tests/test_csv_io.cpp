#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fcprog/csv_io.hpp"
#include "fcprog/errors.hpp"
#include "fcprog/rng.hpp"
#include "fcprog/timeseries.hpp"

namespace {

namespace fs = std::filesystem;

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) {
        path = fs::temp_directory_path() / ("fcprog_test_" + name);
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
    void write(const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
};

}  // namespace

TEST_CASE("write then read reproduces the series exactly") {
    fcprog::Rng rng(3);
    std::vector<double> v(100);
    for (auto& x : v) x = rng.normal() * 1e3;
    fcprog::TimeSeries s(0.125, 0.5, v);

    TempFile f("roundtrip.csv");
    fcprog::write_timeseries_csv(f.path.string(), s);
    fcprog::TimeSeries back = fcprog::read_timeseries_csv(f.path.string());

    REQUIRE(back.size() == s.size());
    CHECK(back.t0() == doctest::Approx(s.t0()).epsilon(1e-12));
    CHECK(back.dt() == doctest::Approx(s.dt()).epsilon(1e-12));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back[i] == s[i]);
}

TEST_CASE("malformed header names line 1") {
    TempFile f("header.csv");
    f.write("time,value\n0,1\n1,2\n");
    try {
        fcprog::read_timeseries_csv(f.path.string());
        FAIL("expected ParseError");
    } catch (const fcprog::ParseError& e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("bad number reports its line") {
    TempFile f("badnum.csv");
    f.write("time_h,value\n0,1\n1,oops\n");
    try {
        fcprog::read_timeseries_csv(f.path.string());
        FAIL("expected ParseError");
    } catch (const fcprog::ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("non-finite value text is rejected") {
    TempFile f("nonfinite.csv");
    f.write("time_h,value\n0,1\n1,nan\n");
    CHECK_THROWS_AS(fcprog::read_timeseries_csv(f.path.string()), fcprog::ParseError);
}

TEST_CASE("non-increasing time is rejected") {
    TempFile f("nonmono.csv");
    f.write("time_h,value\n0,1\n2,2\n1,3\n");
    CHECK_THROWS_AS(fcprog::read_timeseries_csv(f.path.string()), fcprog::ParseError);
}

TEST_CASE("empty file is a parse error") {
    TempFile f("empty.csv");
    f.write("");
    CHECK_THROWS_AS(fcprog::read_timeseries_csv(f.path.string()), fcprog::ParseError);
}

TEST_CASE("single data row is too short") {
    TempFile f("short.csv");
    f.write("time_h,value\n0,1\n");
    CHECK_THROWS_AS(fcprog::read_timeseries_csv(f.path.string()), fcprog::ParseError);
}

TEST_CASE("irregular times resample by linear interpolation") {
    TempFile f("irregular.csv");
    f.write("time_h,value\n0,0\n1,10\n2.5,25\n3,30\n");
    fcprog::TimeSeries s = fcprog::read_timeseries_csv(f.path.string());
    // Fitted grid: t0 = 0, dt = (3-0)/3 = 1. Sample at t=2 interpolates
    // between (1,10) and (2.5,25).
    REQUIRE(s.size() == 4);
    CHECK(s.dt() == doctest::Approx(1.0));
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(10.0));
    CHECK(s[2] == doctest::Approx(20.0));
    CHECK(s[3] == doctest::Approx(30.0));
}

TEST_CASE("format_double round-trips the shortest representation") {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        const std::string text = fcprog::format_double(x);
        CHECK(std::stod(text) == x);
    }
}
