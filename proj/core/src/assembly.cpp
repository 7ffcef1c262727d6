#include "spinforge/assembly.hpp"

#include <algorithm>
#include <set>

#include "spinforge/multiplets.hpp"

namespace spinforge {

namespace {

void check_same_particles(const TotalState& x, const TotalState& y) {
    if (x.particles() != y.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "states have " + std::to_string(x.particles()) + " and " +
                        std::to_string(y.particles()) + " particles");
    }
}

const QuadraticScalar& inv_sqrt3() {
    static const QuadraticScalar k = QuadraticScalar::from_parts(0, 0, 1, 0, 3);
    return k;
}

}  // namespace

TotalState::TotalState(int n_particles) : n_(n_particles) {
    if (n_particles < 1) {
        throw Error(ErrorCode::DimensionMismatch, "particle count must be positive");
    }
}

void TotalState::add_term(TotalKey key, const QuadraticScalar& amp) {
    if (static_cast<int>(key.orbitals.size()) != n_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "orbital tuple has " + std::to_string(key.orbitals.size()) +
                        " entries, state has " + std::to_string(n_) + " particles");
    }
    for (const auto& label : key.orbitals) validate_orbital_label(label);
    if (key.spin_index < 0 || key.spin_index >= (1 << n_)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "spin index " + std::to_string(key.spin_index) + " outside 0.." +
                        std::to_string((1 << n_) - 1));
    }
    if (amp.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(key), amp);
    if (!inserted) {
        it->second += amp;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QuadraticScalar TotalState::norm_squared() const {
    QuadraticScalar total;
    for (const auto& [key, amp] : terms_) total += amp * amp;
    return total;
}

TotalState& TotalState::operator+=(const TotalState& rhs) {
    check_same_particles(*this, rhs);
    for (const auto& [key, amp] : rhs.terms_) add_term(key, amp);
    return *this;
}

TotalState& TotalState::operator-=(const TotalState& rhs) {
    check_same_particles(*this, rhs);
    for (const auto& [key, amp] : rhs.terms_) add_term(key, -amp);
    return *this;
}

TotalState& TotalState::operator*=(const QuadraticScalar& k) {
    if (k.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, amp] : terms_) amp *= k;
    return *this;
}

std::string TotalState::dump_text() const {
    std::string text;
    for (const auto& [key, amp] : terms_) {
        text += amp.to_text();
        text += " ";
        text += tuple_to_text(key.orbitals);
        text += " ";
        text += index_to_pattern(key.spin_index, n_);
        text += "\n";
    }
    return text;
}

TotalState combine(const SpaceState& space, const SpinState& spin) {
    if (space.particles() != spin.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "space part has " + std::to_string(space.particles()) +
                        " particles, spin part has " + std::to_string(spin.particles()));
    }
    TotalState result(space.particles());
    for (const auto& [tuple, samp] : space.terms()) {
        for (int idx = 0; idx < spin.dimension(); ++idx) {
            if (spin.amp(idx).is_zero()) continue;
            result.add_term({tuple, idx}, samp * spin.amp(idx));
        }
    }
    return result;
}

QuadraticScalar total_inner(const TotalState& x, const TotalState& y) {
    check_same_particles(x, y);
    QuadraticScalar total;
    for (const auto& [key, amp] : x.terms()) {
        auto it = y.terms().find(key);
        if (it != y.terms().end()) total += amp * it->second;
    }
    return total;
}

TotalState total_normalize(const TotalState& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "cannot normalize the zero state");
    }
    QuadraticScalar n2 = x.norm_squared();
    QuadraticScalar norm;
    try {
        norm = n2.try_sqrt();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotRepresentable) {
            throw Error(ErrorCode::NormOutsideField,
                        "norm^2 = " + n2.to_text() + " has no square root in the field");
        }
        throw;
    }
    TotalState result = x;
    result *= QuadraticScalar(1) / norm;
    return result;
}

TotalState total_permute(const Permutation& pi, const TotalState& x) {
    if (pi.size() != x.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "permutation on " + std::to_string(pi.size()) + " particles applied to " +
                        std::to_string(x.particles()) + "-particle state");
    }
    int n = x.particles();
    TotalState result(n);
    for (const auto& [key, amp] : x.terms()) {
        OrbitalTuple dest_tuple(key.orbitals.size());
        int dest_idx = 0;
        for (int p = 1; p <= n; ++p) {
            dest_tuple[static_cast<std::size_t>(pi(p)) - 1] = key.orbitals[p - 1];
            if ((key.spin_index >> (n - p)) & 1) dest_idx |= 1 << (n - pi(p));
        }
        result.add_term({std::move(dest_tuple), dest_idx}, amp);
    }
    return result;
}

ParityTable pauli_parity_report(const TotalState& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "parity of the zero state is undefined");
    }
    int n = x.particles();
    ParityTable table;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            TotalState swapped = total_permute(Permutation::transposition(n, i, j), x);
            TranspositionCheck check;
            check.i = i;
            check.j = j;
            check.sym_residual2 = (swapped - x).norm_squared();
            check.anti_residual2 = (swapped + x).norm_squared();
            if (check.sym_residual2.is_zero()) {
                check.parity = TranspositionParity::Plus;
            } else if (check.anti_residual2.is_zero()) {
                check.parity = TranspositionParity::Minus;
            } else {
                check.parity = TranspositionParity::NotEigenstate;
            }
            table.checks.push_back(std::move(check));
        }
    }
    return table;
}

namespace {

// The literal pairwise-sum spin states feeding the symmetrized assemblies.
SpinState literal_sum_spin(int twice_m) {
    if (twice_m != 1 && twice_m != -1) {
        throw Error(ErrorCode::LabelPatternMismatch,
                    "symmetrized assembly needs twice_m = +1 or -1, got " +
                        std::to_string(twice_m));
    }
    auto audit = symmetrization_audit();
    return twice_m == 1 ? audit[2].literal.state : audit[3].literal.state;
}

int distinct_count(const std::array<OrbitalLabel, 3>& labels) {
    std::set<OrbitalLabel> unique(labels.begin(), labels.end());
    return static_cast<int>(unique.size());
}

}  // namespace

TotalState assemble(AssemblyCase which, const std::array<OrbitalLabel, 3>& labels,
                    int twice_m) {
    for (const auto& label : labels) validate_orbital_label(label);
    int distinct = distinct_count(labels);

    switch (which) {
        case AssemblyCase::UniformSymmetrized: {
            if (distinct != 1) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "uniform assembly needs one repeated label, got " +
                                std::to_string(distinct) + " distinct");
            }
            return combine(symmetric_space(labels), literal_sum_spin(twice_m));
        }
        case AssemblyCase::DistinctSymmetrized: {
            if (distinct != 3) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "distinct assembly needs three distinct labels, got " +
                                std::to_string(distinct));
            }
            return combine(symmetric_space(labels), literal_sum_spin(twice_m));
        }
        case AssemblyCase::PairSinglet: {
            if (distinct != 2) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "pair assembly needs exactly one repeated label, got " +
                                std::to_string(distinct) + " distinct");
            }
            if (twice_m != 1 && twice_m != -1) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "pair assembly needs twice_m = +1 or -1, got " +
                                std::to_string(twice_m));
            }
            // Normalize the input to (repeated, repeated, other).
            OrbitalLabel repeated, other;
            if (labels[0] == labels[1]) {
                repeated = labels[0];
                other = labels[2];
            } else if (labels[0] == labels[2]) {
                repeated = labels[0];
                other = labels[1];
            } else {
                repeated = labels[1];
                other = labels[0];
            }
            SpinState spin = twice_m == 1 ? pair_singlet_doublets()[0].state
                                          : pair_singlet_doublets()[1].state;
            TotalState term = combine(SpaceState::single({repeated, repeated, other}), spin);
            Permutation cyc = Permutation::cycle(3);
            TotalState sum = term;
            term = total_permute(cyc, term);
            sum += term;
            sum += total_permute(cyc, term);
            sum *= inv_sqrt3();
            return sum;
        }
        case AssemblyCase::SlaterQuadruplet: {
            if (distinct != 3) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "Slater assembly needs three distinct labels, got " +
                                std::to_string(distinct) + " (repeats are Pauli-excluded)");
            }
            auto quad = quadruplet();
            const SpinState* spin = nullptr;
            for (const auto& ls : quad.states) {
                if (ls.label.twice_m == twice_m) spin = &ls.state;
            }
            if (spin == nullptr) {
                throw Error(ErrorCode::LabelPatternMismatch,
                            "quadruplet has no member with twice_m = " +
                                std::to_string(twice_m));
            }
            return combine(slater_space(labels).state, *spin);
        }
    }
    throw Error(ErrorCode::LabelPatternMismatch, "unknown assembly case");
}

}  // namespace spinforge
