#pragma once

#include <array>
#include <map>
#include <string>

#include "spinforge/orbital.hpp"
#include "spinforge/spin.hpp"

namespace spinforge {

struct TotalKey {
    OrbitalTuple orbitals;
    int spin_index = 0;

    auto operator<=>(const TotalKey&) const = default;
};

// Sparse space-spin product state with exact amplitudes. Term order (and the
// dump) is lexicographic: orbital tuple first, then spin basis index.
class TotalState {
public:
    explicit TotalState(int n_particles);

    int particles() const { return n_; }
    const std::map<TotalKey, QuadraticScalar>& terms() const { return terms_; }

    void add_term(TotalKey key, const QuadraticScalar& amp);

    bool is_zero() const { return terms_.empty(); }
    QuadraticScalar norm_squared() const;
    bool is_normalized() const { return norm_squared().is_one(); }

    TotalState& operator+=(const TotalState& rhs);
    TotalState& operator-=(const TotalState& rhs);
    TotalState& operator*=(const QuadraticScalar& k);

    friend TotalState operator+(TotalState lhs, const TotalState& rhs) { return lhs += rhs; }
    friend TotalState operator-(TotalState lhs, const TotalState& rhs) { return lhs -= rhs; }
    friend TotalState operator*(const QuadraticScalar& k, TotalState x) { return x *= k; }

    bool operator==(const TotalState&) const = default;

    // One line per term: "(a b c d)/den (orb,orb,orb) pattern".
    std::string dump_text() const;

private:
    int n_;
    std::map<TotalKey, QuadraticScalar> terms_;
};

// Tensor product over matching particle counts.
TotalState combine(const SpaceState& space, const SpinState& spin);

QuadraticScalar total_inner(const TotalState& x, const TotalState& y);
TotalState total_normalize(const TotalState& x);

// Simultaneous relabeling of orbitals and spins.
TotalState total_permute(const Permutation& pi, const TotalState& x);

// Exchange audit under simultaneous transpositions; ZeroState on the zero vector.
ParityTable pauli_parity_report(const TotalState& x);

// The four assembly recipes for three electrons. `labels` fixes the spatial
// content, twice_m the spin projection.
enum class AssemblyCase {
    // All labels equal; symmetric space times the literal pairwise-sum spin
    // (twice_m = +1 or -1 picks which doublet fed the sum).
    UniformSymmetrized,
    // All labels distinct; symmetrized space times the same literal spin.
    DistinctSymmetrized,
    // Exactly one repeated label. Term one binds the pair singlet to the
    // repeated orbitals on particles (1,2) with the spectator spin set by
    // twice_m; the other two terms are its cyclic relabelings, weight 1/sqrt3
    // each, all plus signs.
    PairSinglet,
    // All labels distinct; spatial Slater determinant times the quadruplet
    // member with the given twice_m (+-3 or +-1).
    SlaterQuadruplet,
};

// Builds the requested case. Throws LabelPatternMismatch when the label
// multiplicities or twice_m do not fit the case.
TotalState assemble(AssemblyCase which, const std::array<OrbitalLabel, 3>& labels,
                    int twice_m);

}  // namespace spinforge
