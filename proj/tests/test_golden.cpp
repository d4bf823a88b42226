#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string env_or_fail(const char* name) {
    const char* v = std::getenv(name);
    REQUIRE_MESSAGE(v != nullptr, name, " must be set");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("sweep output matches the locked golden file byte for byte") {
    const std::string cli = env_or_fail("QOTTO_CLI");
    const std::string golden_dir = env_or_fail("QOTTO_GOLDEN_DIR");
    const std::string out = "/tmp/qotto_test_golden.csv";
    const std::string cmd =
        cli +
        " sweep --lambda-grid 0:1:41"
        " --alpha-list 0,0.20943951023931953,0.5235987755982988,0.7853981633974483"
        " --out " +
        out;
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string fresh = read_file(out);
    const std::string locked = read_file(golden_dir + "/sweep_small.csv");
    CHECK(fresh.size() == locked.size());
    CHECK(fresh == locked);
    std::remove(out.c_str());
}
