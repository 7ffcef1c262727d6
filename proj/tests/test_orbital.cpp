#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "spinforge/orbital.hpp"

using namespace spinforge;

namespace {

struct Rng {
    std::uint64_t s = 0x5a5a5a5a5a5a5a5aull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

QuadraticScalar inv_sqrt(int n) {
    switch (n) {
        case 1: return QuadraticScalar(1);
        case 2: return QuadraticScalar::from_parts(0, 1, 0, 0, 2);
        case 3: return QuadraticScalar::from_parts(0, 0, 1, 0, 3);
        case 6: return QuadraticScalar::from_parts(0, 0, 0, 1, 6);
    }
    throw std::logic_error("unsupported radical");
}

SpaceState random_space(Rng& rng, int n) {
    const OrbitalLabel pool[] = {"n", "m", "l"};
    SpaceState x(n);
    for (int t = 0; t < 4; ++t) {
        OrbitalTuple tuple;
        for (int i = 0; i < n; ++i) tuple.push_back(pool[rng.range(0, 2)]);
        x.add_term(tuple, QuadraticScalar::rational(rng.range(-4, 4), rng.range(1, 3)));
    }
    return x;
}

}  // namespace

TEST_CASE("orbital label validation") {
    CHECK_NOTHROW(validate_orbital_label("n"));
    CHECK_NOTHROW(validate_orbital_label("2s"));
    CHECK_NOTHROW(validate_orbital_label("psi_100"));
    for (const std::string bad : {"", " ", "a b", "a,b", "a|b", "a#b", "\t", "x "}) {
        try {
            validate_orbital_label(bad);
            FAIL("expected ParseError for label: '", bad, "'");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
}

TEST_CASE("tuple text") {
    CHECK(tuple_to_text({"n", "m", "l"}) == "(n,m,l)");
    CHECK(tuple_to_text({"n"}) == "(n)");
}

TEST_CASE("space state term accumulation drops zeros") {
    SpaceState x(2);
    CHECK(x.is_zero());
    x.add_term({"n", "m"}, QuadraticScalar(2));
    x.add_term({"n", "m"}, QuadraticScalar(-2));
    CHECK(x.is_zero());
    CHECK(x.terms().empty());
    x.add_term({"n", "m"}, QuadraticScalar(1));
    x.add_term({"m", "n"}, QuadraticScalar(1));
    CHECK(x.terms().size() == 2);
    CHECK(x.norm_squared() == QuadraticScalar(2));
}

TEST_CASE("space inner product is diagonal on tuples") {
    SpaceState a = SpaceState::single({"n", "m"});
    SpaceState b = SpaceState::single({"m", "n"});
    CHECK(space_inner(a, a).is_one());
    CHECK(space_inner(a, b).is_zero());
    CHECK(space_inner(a + b, a + b) == QuadraticScalar(2));
    CHECK_THROWS_AS(space_inner(a, SpaceState::single({"n"})), Error);
}

TEST_CASE("symmetric products") {
    // All distinct: six orderings, prefactor 1/sqrt6.
    SpaceState nml = symmetric_space({"n", "m", "l"});
    CHECK(nml.terms().size() == 6);
    for (const auto& [tuple, amp] : nml.terms()) CHECK(amp == inv_sqrt(6));
    CHECK(nml.is_normalized());

    // One repeat: three orderings, prefactor 1/sqrt3.
    SpaceState nnl = symmetric_space({"n", "n", "l"});
    CHECK(nnl.terms().size() == 3);
    for (const auto& [tuple, amp] : nnl.terms()) CHECK(amp == inv_sqrt(3));
    CHECK(nnl.is_normalized());
    CHECK(nnl.terms().count({"n", "n", "l"}) == 1);
    CHECK(nnl.terms().count({"n", "l", "n"}) == 1);
    CHECK(nnl.terms().count({"l", "n", "n"}) == 1);

    // All equal: a single ordering, amplitude 1.
    SpaceState nnn = symmetric_space({"n", "n", "n"});
    CHECK(nnn == SpaceState::single({"n", "n", "n"}));

    // The result is fully symmetric regardless of multiplicity.
    for (const auto& s : {nml, nnl, nnn}) {
        CHECK(space_parity_table(s).verdict() == ExchangeVerdict::FullySymmetric);
    }
}

TEST_CASE("slater determinants") {
    SlaterResult det = slater_space({"n", "m", "l"});
    CHECK(!det.pauli_excluded);
    CHECK(det.state.terms().size() == 6);
    CHECK(det.state.is_normalized());
    // Even orderings carry +1/sqrt6, odd orderings -1/sqrt6.
    CHECK(det.state.terms().at({"n", "m", "l"}) == inv_sqrt(6));
    CHECK(det.state.terms().at({"m", "l", "n"}) == inv_sqrt(6));
    CHECK(det.state.terms().at({"l", "n", "m"}) == inv_sqrt(6));
    CHECK(det.state.terms().at({"m", "n", "l"}) == -inv_sqrt(6));
    CHECK(det.state.terms().at({"n", "l", "m"}) == -inv_sqrt(6));
    CHECK(det.state.terms().at({"l", "m", "n"}) == -inv_sqrt(6));
    CHECK(space_parity_table(det.state).verdict() == ExchangeVerdict::FullyAntisymmetric);

    // Any transposition of the input labels flips the overall sign.
    SlaterResult swapped = slater_space({"m", "n", "l"});
    CHECK(swapped.state == -QuadraticScalar(1) * det.state);

    // A repeated label makes the determinant vanish.
    SlaterResult repeated = slater_space({"n", "n", "l"});
    CHECK(repeated.pauli_excluded);
    CHECK(repeated.state.is_zero());
}

TEST_CASE("space permute is a left group action") {
    Rng rng;
    for (int trial = 0; trial < 40; ++trial) {
        SpaceState x = random_space(rng, 3);
        auto all = Permutation::all(3);
        const Permutation& pi = all[static_cast<std::size_t>(rng.range(0, 5))];
        const Permutation& rho = all[static_cast<std::size_t>(rng.range(0, 5))];
        CHECK(space_permute(rho, space_permute(pi, x)) ==
              space_permute(compose(rho, pi), x));
        CHECK(space_permute(Permutation::identity(3), x) == x);
    }
    // Spot check the index convention: dest[pi(i)] = src[i].
    SpaceState x = SpaceState::single({"n", "m", "l"});
    SpaceState moved = space_permute(Permutation::cycle(3), x);
    CHECK(moved == SpaceState::single({"l", "n", "m"}));
}

TEST_CASE("space normalization") {
    SpaceState x = SpaceState::single({"n", "m"}) + SpaceState::single({"m", "n"});
    SpaceState unit = space_normalize(x);
    CHECK(unit.is_normalized());
    CHECK(unit == inv_sqrt(2) * x);

    try {
        // Norm squared 5: no square root in the field.
        SpaceState bad(1);
        bad.add_term({"n"}, QuadraticScalar(2));
        bad.add_term({"m"}, QuadraticScalar(1));
        space_normalize(bad);
        FAIL("expected NormOutsideField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NormOutsideField);
    }
    try {
        space_normalize(SpaceState(2));
        FAIL("expected ZeroState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroState);
    }
}

TEST_CASE("space parity table rejects the zero state") {
    CHECK_THROWS_AS(space_parity_table(SpaceState(3)), Error);
}
