#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "qotto/csvio.hpp"

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = "/tmp/qotto_test_csvio_" + std::to_string(counter++) + ".cfg";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double round-trips through parsing") {
    for (double x : {1.0, -0.1, 3.141592653589793, 1.0546e-27, 6e9, 5.0 / 6.0,
                     -4.023697083589328e-27, 0.0}) {
        const std::string s = qotto::format_double(x);
        CHECK(std::stod(s) == x);
        CHECK(s.find('e') != std::string::npos);
    }
}

TEST_CASE("format_double uses 17 significant digits") {
    const std::string s = qotto::format_double(5.0 / 6.0);
    CHECK(s == "8.3333333333333337e-01");
    CHECK(qotto::format_double(1.0) == "1.0000000000000000e+00");
}

TEST_CASE("format_double handles non-finite values") {
    CHECK(qotto::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(qotto::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(qotto::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("parse_grid expands start:stop:count") {
    const auto g = qotto::parse_grid("0:1:5");
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.25);
    CHECK(g[2] == 0.5);
    CHECK(g[3] == 0.75);
    CHECK(g[4] == 1.0);
    const auto single = qotto::parse_grid("2.5:2.5:1");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 2.5);
    const auto descending = qotto::parse_grid("1:-1:3");
    CHECK(descending[1] == 0.0);
}

TEST_CASE("parse_grid rejects malformed input") {
    CHECK_THROWS_AS((void)qotto::parse_grid("0:1"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_grid("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_grid("0:1:-2"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_grid("0:1:1"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_grid("a:1:3"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_grid("0:1:2.5"), std::invalid_argument);
}

TEST_CASE("parse_list splits on commas") {
    const auto v = qotto::parse_list("1, 2.5 ,-3");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 2.5);
    CHECK(v[2] == -3.0);
    CHECK_THROWS_AS((void)qotto::parse_list(""), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_list("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::parse_list("1,2,"), std::invalid_argument);
}

TEST_CASE("parse_config_file reads key=value lines") {
    const TempFile f("# comment\n\nalpha-rad = 0.5\nlambda=0.25\n  # indented comment\n");
    const auto entries = qotto::parse_config_file(f.path);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].first == "alpha-rad");
    CHECK(entries[0].second == "0.5");
    CHECK(entries[1].first == "lambda");
    CHECK(entries[1].second == "0.25");
}

TEST_CASE("parse_config_file rejects malformed files") {
    CHECK_THROWS_AS((void)qotto::parse_config_file("/nonexistent/qotto.cfg"),
                    std::invalid_argument);
    const TempFile dup("lambda=1\nlambda=2\n");
    CHECK_THROWS_AS((void)qotto::parse_config_file(dup.path), std::invalid_argument);
    const TempFile noeq("lambda 1\n");
    CHECK_THROWS_AS((void)qotto::parse_config_file(noeq.path), std::invalid_argument);
    const TempFile nokey("=1\n");
    CHECK_THROWS_AS((void)qotto::parse_config_file(nokey.path), std::invalid_argument);
}
