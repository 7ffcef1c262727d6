#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "spinforge/report.hpp"
#include "spinforge/state_io.hpp"

using namespace spinforge;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

QuadraticScalar inv_sqrt(int n) {
    switch (n) {
        case 1: return QuadraticScalar(1);
        case 2: return QuadraticScalar::from_parts(0, 1, 0, 0, 2);
        case 3: return QuadraticScalar::from_parts(0, 0, 1, 0, 3);
        case 6: return QuadraticScalar::from_parts(0, 0, 0, 1, 6);
    }
    throw std::logic_error("unsupported radical");
}

}  // namespace

TEST_CASE("format_float uses nine significant digits") {
    CHECK(format_float(1.0) == "1");
    CHECK(format_float(0.5) == "0.5");
    CHECK(format_float(2.0 / 3.0) == "0.666666667");
    CHECK(format_float(2.31952283e-16) == "2.31952283e-16");
}

TEST_CASE("format_scalar picks compact exact forms") {
    CHECK(format_scalar(QuadraticScalar(0)) == "0");
    CHECK(format_scalar(QuadraticScalar(2)) == "2");
    CHECK(format_scalar(QuadraticScalar::rational(4, 3)) == "4/3");
    CHECK(format_scalar(QuadraticScalar(3) * inv_sqrt(3)) == "sqrt3");
    CHECK(format_scalar(QuadraticScalar(2) * inv_sqrt(3)) == "2*sqrt3/3");
    CHECK(format_scalar(-QuadraticScalar(6) * inv_sqrt(6) *
                        QuadraticScalar::rational(1, 3)) == "-sqrt6/3");
    // Mixed-radical values fall back to the canonical text.
    QuadraticScalar mixed = inv_sqrt(2) + inv_sqrt(3);
    CHECK(format_scalar(mixed) == mixed.to_text());
}

TEST_CASE("pretty forms") {
    CHECK(pretty_spin(SpinState(2)) == "0");
    CHECK(pretty_spin(SpinState::basis("uu")) == "uu");
    SpinState bell = inv_sqrt(2) * (SpinState::basis("uu") + SpinState::basis("dd"));
    CHECK(pretty_spin(bell) == "(uu + dd)/sqrt2");
    SpinState doublet = inv_sqrt(6) * (QuadraticScalar(2) * SpinState::basis("uud") -
                                       SpinState::basis("udu") - SpinState::basis("duu"));
    CHECK(pretty_spin(doublet) == "(2 uud - udu - duu)/sqrt6");
    SpinState halves = QuadraticScalar::rational(1, 2) *
                       (SpinState::basis("uu") - SpinState::basis("dd"));
    CHECK(pretty_spin(halves) == "(uu - dd)/2");

    // Space terms render in map order: tuples sort lexicographically.
    SpaceState space = symmetric_space({"n", "n", "l"});
    CHECK(pretty_space(space) == "((l,n,n) + (n,l,n) + (n,n,l))/sqrt3");
    CHECK(pretty_space(SpaceState::single({"o", "o"})) == "(o,o)");

    TotalState total = combine(SpaceState::single({"n", "m"}),
                               inv_sqrt(2) * (SpinState::basis("ud") - SpinState::basis("du")));
    CHECK(pretty_total(total) == "((n,m)ud - (n,m)du)/sqrt2");
}

TEST_CASE("state tables carry every derivation row") {
    auto rows = build_state_tables();
    std::set<std::string> tags;
    for (const auto& row : rows) tags.insert(row.tag);
    for (const char* tag :
         {"eq7", "eq8", "eq9", "eq10", "eq17", "eq18", "eq23", "eq24", "eq27", "eq28",
          "eq30", "eq31", "eq32", "eq33", "eq34", "eq35", "eq36", "eq37", "eq38",
          "eq39", "eq40", "eq41", "eq42:1/2", "eq42:-1/2", "eq43:3/2", "eq43:1/2",
          "eq43:-1/2", "eq43:-3/2"}) {
        CHECK_MESSAGE(tags.count(tag) == 1, "missing tag ", tag);
    }

    // Non-empty state_file text must reparse to a state whose writer emits the
    // identical text.
    int reparsed = 0;
    for (const auto& row : rows) {
        if (row.state_file.empty()) continue;
        ParsedState parsed = parse_state_text(row.state_file);
        std::string again = std::visit(
            [](const auto& state) { return write_state_text(state); }, parsed);
        CHECK(again == row.state_file);
        ++reparsed;
    }
    CHECK(reparsed >= 20);
}

TEST_CASE("rendered tables pin the derivation text") {
    std::string text = render_tables_text(build_state_tables());
    CHECK(contains(text, "spinforge state tables"));
    CHECK(contains(text, "[eq10] chi(0,0) = (ud - du)/sqrt2"));
    CHECK(contains(text, "[eq27] chi(1,1/2,1/2) = (2 uud - udu - duu)/sqrt6"));
    CHECK(contains(text, "[eq18] chi(1,3/2,1/2) = (uud + udu + duu)/sqrt3"));

    // JSON variant parses and carries the same rows.
    auto json = nlohmann::json::parse(render_tables_json(build_state_tables()));
    REQUIRE(json.contains("states"));
    CHECK(json["states"].size() == build_state_tables().size());
}

TEST_CASE("verify report passes and renders deterministically") {
    VerifyOptions opts;
    AnalysisReport report = build_verify_report(opts);
    CHECK(report.seed == 42);
    CHECK(report.all_checks_pass());
    CHECK(report.exit_code() == 0);
    REQUIRE(report.sections.size() == 11);

    std::string text = render_text(report);
    CHECK(contains(text, "spinforge verify report"));
    CHECK(contains(text, "seed = 42"));
    CHECK(contains(text, "eq28_sum_norm2 = 0"));
    CHECK(contains(text, "antisymmetric_subspace_dim = 0"));
    CHECK(contains(text, "rank_oracle_disagreements = 0"));
    CHECK(contains(text, "result: PASS"));
    CHECK(!contains(text, "[fail]"));

    // Identical inputs must render byte-identically.
    CHECK(render_text(build_verify_report(opts)) == text);

    auto json = nlohmann::json::parse(render_json(report));
    CHECK(json["tool"] == "spinforge");
    CHECK(json["seed"] == 42);
    CHECK(json["all_pass"] == true);
    CHECK(json["sections"].size() == 11);
}

TEST_CASE("verify options are validated") {
    VerifyOptions bad;
    bad.steps = 0;
    CHECK_THROWS_AS(build_verify_report(bad), Error);
    VerifyOptions neg;
    neg.sigma = -1.0;
    CHECK_THROWS_AS(build_verify_report(neg), Error);
}

TEST_CASE("decay rendering") {
    ScanParams params = default_scan_params(1.0);
    std::vector<double> ds;
    for (int i = 0; i <= 12; ++i) ds.push_back(i);
    auto rows = separation_scan(params, ds);

    std::string csv = render_decay_csv(rows);
    CHECK(csv.rfind("d,overlap,sv1,sv2,sv3plus,p_same\n", 0) == 0);
    CHECK(contains(csv, "\n0,1,1,"));

    DecaySummary summary = summarize_decay(rows, 1.0, 12.0, 12);
    REQUIRE(summary.threshold_distance.has_value());
    CHECK(*summary.threshold_distance == 9.0);
    CHECK(summary.final_overlap < 1e-8);
    CHECK(summary.final_p_same < 1e-6);
    CHECK(summary.max_sv_square_error < 1e-6);
    CHECK(summary.antisym_rank2_persists);

    std::string text = render_decay_summary(summary);
    CHECK(contains(text, "a0"));
    CHECK(contains(text, "overlap first < 1e-08 at d = 9"));
}
