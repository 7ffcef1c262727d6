#include "spinforge/multiplets.hpp"

#include <utility>

namespace spinforge {

namespace {

std::string render_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

// Flips the global sign so the lowest-index nonzero amplitude is positive.
SpinState canonical_sign(SpinState x) {
    for (int idx = 0; idx < x.dimension(); ++idx) {
        int s = x.amp(idx).sign();
        if (s > 0) return x;
        if (s < 0) {
            x *= QuadraticScalar(-1);
            return x;
        }
    }
    return x;
}

const QuadraticScalar& inv_sqrt2() {
    static const QuadraticScalar k = QuadraticScalar::from_parts(0, 1, 0, 0, 2);
    return k;
}

const QuadraticScalar& inv_sqrt3() {
    static const QuadraticScalar k = QuadraticScalar::from_parts(0, 0, 1, 0, 3);
    return k;
}

}  // namespace

std::string MultipletLabel::to_text() const {
    if (n_particles == 2) {
        return "chi(" + render_half(twice_s) + "," + render_half(twice_m) + ")";
    }
    return "chi(" + render_half(twice_s_prime) + "," + render_half(twice_s) + "," +
           render_half(twice_m) + ")";
}

std::array<LabeledState, 4> two_electron_states() {
    LabeledState top{{2, 2, 2, 2}, "eq7", SpinState::basis("uu"), "maximal weight"};
    SpinState lowered = apply_ladder(Ladder::Lower, {1, 2}, top.state);
    LabeledState mid{{2, 2, 2, 0}, "eq8", normalize(lowered), "ladder descent from chi(1,1)"};
    LabeledState bottom{{2, 2, 2, -2}, "eq9",
                        normalize(apply_ladder(Ladder::Lower, {1, 2}, mid.state)),
                        "ladder descent from chi(1,0)"};
    SpinState singlet = SpinState::basis("ud") - SpinState::basis("du");
    singlet *= inv_sqrt2();
    LabeledState chi00{{2, 0, 0, 0}, "eq10", std::move(singlet),
                       "orthogonal complement at M = 0, leading amplitude positive"};
    return {std::move(top), std::move(mid), std::move(bottom), std::move(chi00)};
}

QuadrupletResult quadruplet() {
    std::array<QuadraticScalar, 3> norms;
    auto lower = [&norms](const SpinState& x, std::size_t k) {
        SpinState lowered = apply_ladder(Ladder::Lower, {1, 2, 3}, x);
        norms[k] = lowered.norm_squared().try_sqrt();
        lowered *= QuadraticScalar(1) / norms[k];
        return lowered;
    };
    SpinState m3 = SpinState::basis("uuu");
    SpinState m1 = lower(m3, 0);
    SpinState mm1 = lower(m1, 1);
    SpinState mm3 = lower(mm1, 2);
    return QuadrupletResult{
        {LabeledState{{3, 2, 3, 3}, "eq17", std::move(m3), "maximal weight"},
         LabeledState{{3, 2, 3, 1}, "eq18", std::move(m1), "ladder descent"},
         LabeledState{{3, 2, 3, -1}, "eq23", std::move(mm1), "ladder descent"},
         LabeledState{{3, 2, 3, -3}, "eq24", std::move(mm3), "ladder descent"}},
        std::move(norms)};
}

namespace {

// Orthogonal complement of `v` inside span{p1, p2} (orthonormal basis),
// sign-fixed. This is how the S'=1 doublets drop out of each M sector.
SpinState complement_in_plane(const SpinState& v, const SpinState& p1, const SpinState& p2) {
    QuadraticScalar alpha = inner(v, p1);
    QuadraticScalar beta = inner(v, p2);
    SpinState w = beta * p1;
    w -= alpha * p2;
    return canonical_sign(std::move(w));
}

}  // namespace

std::array<LabeledState, 2> pair_triplet_doublets() {
    auto two = two_electron_states();
    const SpinState& chi11 = two[0].state;
    const SpinState& chi10 = two[1].state;
    const SpinState& chi1m1 = two[2].state;
    auto quad = quadruplet();

    SpinState up = complement_in_plane(quad.states[1].state,
                                       tensor(chi11, SpinState::basis("d")),
                                       tensor(chi10, SpinState::basis("u")));
    SpinState down = complement_in_plane(quad.states[2].state,
                                         tensor(chi10, SpinState::basis("d")),
                                         tensor(chi1m1, SpinState::basis("u")));
    return {LabeledState{{3, 2, 1, 1}, "eq27", std::move(up),
                         "orthogonal complement of the quadruplet, M = +1/2 sector"},
            LabeledState{{3, 2, 1, -1}, "eq30", std::move(down),
                         "orthogonal complement of the quadruplet, M = -1/2 sector"}};
}

std::array<LabeledState, 2> pair_singlet_doublets() {
    auto two = two_electron_states();
    const SpinState& chi00 = two[3].state;
    return {LabeledState{{3, 0, 1, 1}, "eq32", tensor(chi00, SpinState::basis("u")),
                         "pair singlet times spectator up"},
            LabeledState{{3, 0, 1, -1}, "eq34", tensor(chi00, SpinState::basis("d")),
                         "pair singlet times spectator down"}};
}

std::vector<LabeledState> three_particle_states() {
    std::vector<LabeledState> states;
    auto quad = quadruplet();
    for (auto& ls : quad.states) states.push_back(std::move(ls));
    for (auto& ls : pair_triplet_doublets()) states.push_back(std::move(ls));
    for (auto& ls : pair_singlet_doublets()) states.push_back(std::move(ls));
    return states;
}

std::vector<EigenCheck> verify_quantum_numbers(const LabeledState& ls) {
    int n = ls.state.particles();
    ParticleSet everyone;
    for (int p = 1; p <= n; ++p) everyone.push_back(p);

    auto casimir = [](int twice_s) {
        // S(S+1) = (2S)(2S+2)/4
        return QuadraticScalar::rational(BigInt(twice_s) * (twice_s + 2), 4);
    };

    std::vector<EigenCheck> checks;
    auto push = [&](std::string name, const SpinState& applied, QuadraticScalar expected) {
        SpinState residual = applied;
        residual -= expected * ls.state;
        QuadraticScalar r2 = residual.norm_squared();
        bool pass = r2.is_zero();
        checks.push_back({std::move(name), std::move(expected), std::move(r2), pass});
    };

    push("S2_total", apply_s_squared(everyone, ls.state), casimir(ls.label.twice_s));
    push("S2_pair12", apply_s_squared({1, 2}, ls.state), casimir(ls.label.twice_s_prime));
    push("Sz_total", apply_sz(everyone, ls.state),
         QuadraticScalar::rational(ls.label.twice_m, 2));
    return checks;
}

std::vector<std::vector<QuadraticScalar>> gram_matrix(const std::vector<LabeledState>& states) {
    std::vector<std::vector<QuadraticScalar>> gram(states.size());
    for (std::size_t r = 0; r < states.size(); ++r) {
        gram[r].resize(states.size());
        for (std::size_t c = 0; c < states.size(); ++c) {
            gram[r][c] = inner(states[r].state, states[c].state);
        }
    }
    return gram;
}

namespace {

SymmetrizationVariant make_variant(const SpinState& seed, bool alternating) {
    SpinState x13 = permute(Permutation::transposition(3, 2, 3), seed);
    SpinState x23 = permute(Permutation::transposition(3, 1, 3), seed);
    SpinState sum(3);
    if (alternating) {
        sum = seed;
        sum -= x13;
        sum -= x23;
        sum *= inv_sqrt3();
    } else {
        sum = pairwise_sum(seed, x13, x23);
    }

    QuadraticScalar norm2 = sum.norm_squared();
    std::optional<ParityTable> parity;
    std::optional<QuadraticScalar> parallel;
    if (!sum.is_zero()) {
        parity = parity_table(sum);
        for (int idx = 0; idx < seed.dimension(); ++idx) {
            if (!seed.amp(idx).is_zero()) {
                QuadraticScalar k = sum.amp(idx) / seed.amp(idx);
                SpinState scaled = k * seed;
                if (scaled == sum) parallel = std::move(k);
                break;
            }
        }
    }
    return SymmetrizationVariant{std::move(sum), std::move(norm2), std::move(parity),
                                 std::move(parallel)};
}

}  // namespace

std::array<SymmetrizationRecord, 4> symmetrization_audit() {
    auto triplet_side = pair_triplet_doublets();
    auto singlet_side = pair_singlet_doublets();
    auto record = [](const char* sum_tag, const LabeledState& seed) {
        return SymmetrizationRecord{sum_tag, seed.tag, seed,
                                    make_variant(seed.state, false),
                                    make_variant(seed.state, true)};
    };
    return {record("eq28", triplet_side[0]), record("eq31", triplet_side[1]),
            record("eq33", singlet_side[0]), record("eq35", singlet_side[1])};
}

}  // namespace spinforge
