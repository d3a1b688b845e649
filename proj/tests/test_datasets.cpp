#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "mokw/datasets.hpp"
#include "mokw/errors.hpp"

using namespace mokw;

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<double> strtod_all(const std::string& s) {
    std::vector<double> v;
    const char* p = s.c_str();
    char* end = nullptr;
    for (;;) {
        while (*p == ',' || *p == ' ') ++p;
        if (!*p) break;
        v.push_back(std::strtod(p, &end));
        p = end;
    }
    return v;
}

}  // namespace

TEST_CASE("embedded listings match the reference listings byte for byte") {
    CHECK(fnv1a(embedded_text("nicotine")) == 0xddf39429f782ba50ULL);
    CHECK(fnv1a(embedded_text("carbon")) == 0x1933002329ce2e55ULL);
}

TEST_CASE("embedded nicotine") {
    const auto d = embedded_dataset("nicotine");
    REQUIRE(d.values.size() == 346);
    CHECK(d.values.front() == 1.3);
    CHECK(d.values.back() == 0.9);
    const auto ref = strtod_all(std::string(embedded_text("nicotine")));
    double sum = 0.0;
    for (double x : ref) sum += x;
    double mean = 0.0;
    for (double x : d.values) mean += x / 346.0;
    CHECK(mean == doctest::Approx(sum / 346.0).epsilon(1e-14));
    CHECK(mean == doctest::Approx(0.852).epsilon(1e-3));
    CHECK(d.source == "embedded");
    CHECK(ingest("nicotine").values == d.values);
}

TEST_CASE("embedded carbon") {
    const auto d = embedded_dataset("carbon");
    REQUIRE(d.values.size() == 100);
    CHECK(d.values.front() == 3.70);
    CHECK(d.values.back() == 3.65);
    CHECK_THROWS_AS((void)embedded_dataset("iris"), DomainError);
}

TEST_CASE("parse_values layouts") {
    CHECK(parse_values("1.3, 1.0\n0.9") == std::vector<double>{1.3, 1.0, 0.9});
    CHECK(parse_values("\n\n  2 3\t4,5,,6 \r\n\n7e-1\n") == std::vector<double>{2, 3, 4, 5, 6, 0.7});
    CHECK(parse_values("").empty());
    CHECK(parse_values(" \n\t\n").empty());
}

TEST_CASE("parse errors carry line and column") {
    try {
        (void)parse_values("1.0 2.0\n3.0 x4 5");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS((void)parse_values("1.0 nan"), ParseError);
    CHECK_THROWS_AS((void)parse_values("1.0 inf"), ParseError);
    CHECK_THROWS_AS((void)parse_values("1.0.2"), ParseError);
}

TEST_CASE("ingest files") {
    const auto dir = std::filesystem::temp_directory_path() / "mokw_datasets_test";
    std::filesystem::create_directories(dir);
    const auto good = dir / "sample.txt", empty = dir / "empty.txt";
    std::ofstream(good) << "1.3, 1.0\n0.9\n";
    std::ofstream(empty) << "\n  \n";
    const auto d = ingest(good.string());
    CHECK(d.values == std::vector<double>{1.3, 1.0, 0.9});
    CHECK(d.name == "sample");
    CHECK(d.source == good.string());
    CHECK_THROWS_AS((void)ingest(empty.string()), DomainError);
    CHECK_THROWS_AS((void)ingest((dir / "missing.txt").string()), DomainError);
    std::filesystem::remove_all(dir);
}
