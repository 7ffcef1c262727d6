#pragma once

#include <vector>

#include "spinforge/radical.hpp"

namespace spinforge {

enum class TranspositionParity { Plus, Minus, NotEigenstate };

enum class ExchangeVerdict { FullySymmetric, FullyAntisymmetric, Neither };

// Result of testing one transposition P(i,j) against a state x.
// The residual norms are exact: sym_residual2 = |P x - x|^2 vanishes iff
// eigenvalue +1, anti_residual2 = |P x + x|^2 vanishes iff eigenvalue -1.
struct TranspositionCheck {
    int i = 0;
    int j = 0;
    TranspositionParity parity = TranspositionParity::NotEigenstate;
    QuadraticScalar sym_residual2;
    QuadraticScalar anti_residual2;
};

struct ParityTable {
    std::vector<TranspositionCheck> checks;  // all pairs i < j, ordered (1,2),(1,3),...

    bool all(TranspositionParity p) const {
        for (const auto& check : checks) {
            if (check.parity != p) return false;
        }
        return true;
    }

    ExchangeVerdict verdict() const {
        if (all(TranspositionParity::Plus)) return ExchangeVerdict::FullySymmetric;
        if (all(TranspositionParity::Minus)) return ExchangeVerdict::FullyAntisymmetric;
        return ExchangeVerdict::Neither;
    }
};

inline const char* to_string(TranspositionParity p) {
    switch (p) {
        case TranspositionParity::Plus: return "+1";
        case TranspositionParity::Minus: return "-1";
        case TranspositionParity::NotEigenstate: return "not_eigenstate";
    }
    return "?";
}

inline const char* to_string(ExchangeVerdict v) {
    switch (v) {
        case ExchangeVerdict::FullySymmetric: return "fully_symmetric";
        case ExchangeVerdict::FullyAntisymmetric: return "fully_antisymmetric";
        case ExchangeVerdict::Neither: return "neither";
    }
    return "?";
}

}  // namespace spinforge
