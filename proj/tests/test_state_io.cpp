#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>

#include "spinforge/multiplets.hpp"
#include "spinforge/state_io.hpp"

using namespace spinforge;

namespace {

SpinState get_spin(const ParsedState& p) {
    REQUIRE(std::holds_alternative<SpinState>(p));
    return std::get<SpinState>(p);
}

TotalState get_total(const ParsedState& p) {
    REQUIRE(std::holds_alternative<TotalState>(p));
    return std::get<TotalState>(p);
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column,
                        const std::string& needle) {
    try {
        parse_state_text(text);
        FAIL("expected ParseError for:\n", text);
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

void expect_code(ErrorCode code, const std::string& text) {
    try {
        parse_state_text(text);
        FAIL("expected error for:\n", text);
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("spin state round trip") {
    SpinState x(2);
    x.set_amp(1, QuadraticScalar::from_parts(0, 1, 0, 0, 2));
    x.set_amp(2, QuadraticScalar::from_parts(0, -1, 0, 0, 2));
    std::string text = write_state_text(x);
    CHECK(text == "SPINSTATE v1 n=2\n(0 1 0 0)/2 ud\n(0 -1 0 0)/2 du\n");
    CHECK(get_spin(parse_state_text(text)) == x);
    // write -> parse -> write is the identity on the text.
    CHECK(write_state_text(get_spin(parse_state_text(text))) == text);
}

TEST_CASE("total state round trip") {
    TotalState x(3);
    x.add_term({{ "n", "n", "l" }, pattern_to_index("udu")},
               QuadraticScalar::from_parts(0, 0, 0, 1, 6));
    x.add_term({{ "l", "n", "n" }, pattern_to_index("uud")},
               -QuadraticScalar::from_parts(0, 0, 0, 1, 6));
    std::string text = write_state_text(x);
    CHECK(text ==
          "TOTALSTATE v1 n=3\n(0 0 0 -1)/6 l,n,n|uud\n(0 0 0 1)/6 n,n,l|udu\n");
    CHECK(get_total(parse_state_text(text)) == x);
    CHECK(write_state_text(get_total(parse_state_text(text))) == text);
}

TEST_CASE("every derivation state survives the round trip") {
    for (const auto& ls : two_electron_states()) {
        CHECK(get_spin(parse_state_text(write_state_text(ls.state))) == ls.state);
    }
    for (const auto& ls : three_particle_states()) {
        CHECK(get_spin(parse_state_text(write_state_text(ls.state))) == ls.state);
    }
}

TEST_CASE("comments, blank lines, CRLF, and unordered terms are accepted") {
    std::string text =
        "# leading comment\r\n"
        "\r\n"
        "SPINSTATE v1 n=2\r\n"
        "  # indented comment\r\n"
        "(0 -1 0 0)/2 du\r\n"
        "(0 1 0 0)/2 ud\r\n";
    SpinState x = get_spin(parse_state_text(text));
    CHECK(x.amp("ud") == QuadraticScalar::from_parts(0, 1, 0, 0, 2));
    CHECK(x.amp("du") == QuadraticScalar::from_parts(0, -1, 0, 0, 2));
    // Writers normalize the order.
    CHECK(write_state_text(x) == "SPINSTATE v1 n=2\n(0 1 0 0)/2 ud\n(0 -1 0 0)/2 du\n");
}

TEST_CASE("header errors carry line and column") {
    expect_parse_error("WAVESTATE v1 n=2\n(1 0 0 0)/1 uu\n", 1, 1, "expected header");
    expect_parse_error("# only comments\n\n", 3, 1, "no header");
    expect_parse_error("SPINSTATE v1 n=\n", 1, 16, "missing particle count");
    expect_parse_error("SPINSTATE v1 n=x\n", 1, 16, "particle count");
    expect_parse_error("SPINSTATE v1 n=0\n", 1, 16, "1..12");
    expect_parse_error("SPINSTATE v1 n=13\n(1 0 0 0)/1 u\n", 1, 16, "1..12");
    // 12 particles is the cap and still parses.
    std::string big = "SPINSTATE v1 n=12\n(1 0 0 0)/1 uuuuuuuuuuuu\n";
    CHECK(get_spin(parse_state_text(big)).particles() == 12);
}

TEST_CASE("term errors carry line and column") {
    std::string head = "SPINSTATE v1 n=2\n";
    expect_parse_error(head + "1 uu\n", 2, 1, "expected '('");
    expect_parse_error(head + "(1 2)/0 uu\n", 2, 7, "ZeroDenominator");
    expect_parse_error(head + "(1 0 0 0)/1\n", 2, 12, "missing its basis");
    expect_parse_error(head + "(1 0 0 0)/1 ux\n", 2, 14, "only 'u' and 'd'");
    expect_parse_error(head + "(1 0 0 0)/1 u\n", 2, 13, "exactly 2");
    expect_parse_error(head + "(1 0 0 0)/1 uuu\n", 2, 13, "exactly 2");
    std::string thead = "TOTALSTATE v1 n=2\n";
    expect_parse_error(thead + "(1 0 0 0)/1 uu\n", 2, 13, "'orbitals|pattern'");
    expect_parse_error(thead + "(1 0 0 0)/1 n,|uu\n", 2, 15, "empty orbital label");
    expect_parse_error(thead + "(1 0 0 0)/1 n,m,l|uu\n", 2, 13, "exactly 2");
    expect_parse_error(thead + "(1 0 0 0)/1 n m|uu\n", 2, 14, "reserved character");
}

TEST_CASE("duplicate and zero states are rejected") {
    std::string head = "SPINSTATE v1 n=2\n";
    expect_code(ErrorCode::DuplicateTerm, head + "(1 0 0 0)/1 uu\n(1 0 0 0)/1 uu\n");
    expect_code(ErrorCode::ZeroState, head);
    expect_code(ErrorCode::ZeroState, head + "(0 0 0 0)/1 uu\n");
    std::string thead = "TOTALSTATE v1 n=2\n";
    expect_code(ErrorCode::DuplicateTerm,
                thead + "(1 0 0 0)/1 n,m|uu\n(2 0 0 0)/1 n,m|uu\n");
    expect_code(ErrorCode::ZeroState, thead + "(0 0 0 0)/1 n,m|uu\n");
}

TEST_CASE("parse_state_file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "spinforge_io_test";
    fs::create_directories(dir);
    fs::path file = dir / "state.txt";
    {
        std::ofstream out(file, std::ios::binary);
        out << "SPINSTATE v1 n=2\n(0 1 0 0)/2 ud\n(0 -1 0 0)/2 du\n";
    }
    SpinState x = get_spin(parse_state_file(file));
    CHECK(x.particles() == 2);
    CHECK(x.is_normalized());
    fs::remove(file);

    try {
        parse_state_file(dir / "missing.txt");
        FAIL("expected ParseError for missing file");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
    }
}
