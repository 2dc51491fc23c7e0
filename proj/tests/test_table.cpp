#include <doctest.h>

#include "pathwaykit/errors.hpp"
#include "pathwaykit/table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace pathwaykit;
using namespace pathwaykit::table;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("pathwaykit_table_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("identity matrix round trip") {
    Table t{{"c1", "c2", "c3"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    const auto path = temp_file("identity.csv");
    const std::size_t bytes = write_table(t, path);
    CHECK(bytes == std::filesystem::file_size(path));
    const Table back = load_table(path);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    std::filesystem::remove(path);
}

TEST_CASE("values survive to 15 significant digits") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    Table t{{"v"}, {}};
    for (int i = 0; i < 2000; ++i) t.rows.push_back({mant(rng) * std::pow(10.0, expo(rng))});
    const Table back = parse_table(format_table(t));
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(std::abs(back.rows[i][0] - t.rows[i][0]) <= 5e-15 * std::abs(t.rows[i][0]));
    }
    CHECK(format_number(2.0 / 27.0) == "0.0740740740740741");
    CHECK(format_number(1e300) == "1e+300");
    CHECK(format_number(-0.5) == "-0.5");
}

TEST_CASE("parser tolerates blank lines, spaces and CRLF") {
    const Table t = parse_table("a, b\r\n\r\n 1 , 2.5\r\n-3,+4e2\r\n");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1] == std::vector<double>{-3.0, 400.0});
}

TEST_CASE("ragged row names the row") {
    try {
        parse_table("a,b\n1,2\n3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("malformed cell names row and column") {
    try {
        parse_table("a,b\n1,2\n3,x7\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(parse_table("a\n\n,\n"), ParseError);
    CHECK_THROWS_AS(parse_table("a\n1.5.2\n"), ParseError);
}

TEST_CASE("empty input") {
    CHECK_THROWS_AS(parse_table(""), ParseError);
    CHECK_THROWS_AS(parse_table("\n \n"), ParseError);
    const auto path = temp_file("empty.csv");
    write_text(path, "");
    CHECK_THROWS_AS(load_table(path), ParseError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_table(temp_file("does-not-exist.csv")), ParseError);
    // header only: valid, no rows
    CHECK(parse_table("x,y\n").rows.empty());
}
