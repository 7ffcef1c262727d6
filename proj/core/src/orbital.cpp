#include "spinforge/orbital.hpp"

#include <cctype>
#include <set>

namespace spinforge {

void validate_orbital_label(const OrbitalLabel& label) {
    if (label.empty()) {
        throw Error(ErrorCode::ParseError, "orbital label must be nonempty");
    }
    for (char ch : label) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '|' ||
            ch == '#') {
            throw Error(ErrorCode::ParseError,
                        "orbital label \"" + label + "\" contains a reserved character");
        }
    }
}

std::string tuple_to_text(const OrbitalTuple& tuple) {
    std::string text = "(";
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (k > 0) text += ",";
        text += tuple[k];
    }
    text += ")";
    return text;
}

namespace {

void check_tuple(int n, const OrbitalTuple& tuple) {
    if (static_cast<int>(tuple.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "orbital tuple has " + std::to_string(tuple.size()) + " entries, state has " +
                        std::to_string(n) + " particles");
    }
    for (const auto& label : tuple) validate_orbital_label(label);
}

void check_same_particles(const SpaceState& x, const SpaceState& y) {
    if (x.particles() != y.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "states have " + std::to_string(x.particles()) + " and " +
                        std::to_string(y.particles()) + " particles");
    }
}

}  // namespace

SpaceState::SpaceState(int n_particles) : n_(n_particles) {
    if (n_particles < 1) {
        throw Error(ErrorCode::DimensionMismatch, "particle count must be positive");
    }
}

SpaceState SpaceState::single(OrbitalTuple tuple) {
    SpaceState x(static_cast<int>(tuple.size()));
    check_tuple(x.n_, tuple);
    x.terms_.emplace(std::move(tuple), QuadraticScalar(1));
    return x;
}

void SpaceState::add_term(const OrbitalTuple& tuple, const QuadraticScalar& amp) {
    check_tuple(n_, tuple);
    if (amp.is_zero()) return;
    auto [it, inserted] = terms_.emplace(tuple, amp);
    if (!inserted) {
        it->second += amp;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QuadraticScalar SpaceState::norm_squared() const {
    QuadraticScalar total;
    for (const auto& [tuple, amp] : terms_) total += amp * amp;
    return total;
}

SpaceState& SpaceState::operator+=(const SpaceState& rhs) {
    check_same_particles(*this, rhs);
    for (const auto& [tuple, amp] : rhs.terms_) add_term(tuple, amp);
    return *this;
}

SpaceState& SpaceState::operator-=(const SpaceState& rhs) {
    check_same_particles(*this, rhs);
    for (const auto& [tuple, amp] : rhs.terms_) add_term(tuple, -amp);
    return *this;
}

SpaceState& SpaceState::operator*=(const QuadraticScalar& k) {
    if (k.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [tuple, amp] : terms_) amp *= k;
    return *this;
}

QuadraticScalar space_inner(const SpaceState& x, const SpaceState& y) {
    check_same_particles(x, y);
    QuadraticScalar total;
    for (const auto& [tuple, amp] : x.terms()) {
        auto it = y.terms().find(tuple);
        if (it != y.terms().end()) total += amp * it->second;
    }
    return total;
}

SpaceState space_permute(const Permutation& pi, const SpaceState& x) {
    if (pi.size() != x.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "permutation on " + std::to_string(pi.size()) + " particles applied to " +
                        std::to_string(x.particles()) + "-particle state");
    }
    SpaceState result(x.particles());
    for (const auto& [tuple, amp] : x.terms()) {
        OrbitalTuple dest(tuple.size());
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            dest[static_cast<std::size_t>(pi(static_cast<int>(k) + 1)) - 1] = tuple[k];
        }
        result.add_term(dest, amp);
    }
    return result;
}

SpaceState space_normalize(const SpaceState& x) {
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
    SpaceState result = x;
    result *= QuadraticScalar(1) / norm;
    return result;
}

ParityTable space_parity_table(const SpaceState& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "parity of the zero state is undefined");
    }
    int n = x.particles();
    ParityTable table;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            SpaceState swapped = space_permute(Permutation::transposition(n, i, j), x);
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

SpaceState symmetric_space(const std::array<OrbitalLabel, 3>& labels) {
    OrbitalTuple base(labels.begin(), labels.end());
    check_tuple(3, base);
    std::set<OrbitalTuple> orderings;
    for (const Permutation& pi : Permutation::all(3)) {
        OrbitalTuple dest(3);
        for (std::size_t k = 0; k < 3; ++k) {
            dest[static_cast<std::size_t>(pi(static_cast<int>(k) + 1)) - 1] = base[k];
        }
        orderings.insert(std::move(dest));
    }
    QuadraticScalar coeff =
        QuadraticScalar(1) / QuadraticScalar(BigInt(orderings.size())).try_sqrt();
    SpaceState result(3);
    for (const auto& tuple : orderings) result.add_term(tuple, coeff);
    return result;
}

SlaterResult slater_space(const std::array<OrbitalLabel, 3>& labels) {
    OrbitalTuple base(labels.begin(), labels.end());
    check_tuple(3, base);
    SlaterResult result{SpaceState(3), false};
    if (labels[0] == labels[1] || labels[0] == labels[2] || labels[1] == labels[2]) {
        result.pauli_excluded = true;
        return result;
    }
    QuadraticScalar coeff = QuadraticScalar(1) / QuadraticScalar(6).try_sqrt();
    SpaceState sum(3);
    for (const Permutation& pi : Permutation::all(3)) {
        SpaceState term = space_permute(pi, SpaceState::single(base));
        term *= pi.parity() < 0 ? -coeff : coeff;
        sum += term;
    }
    result.state = std::move(sum);
    return result;
}

}  // namespace spinforge
