#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "spinforge/parity.hpp"
#include "spinforge/spin.hpp"

namespace spinforge {

// Orbital symbols are opaque labels over an orthonormal set; nonempty, and
// free of whitespace, ',', '|', '#' so the textual formats stay unambiguous.
using OrbitalLabel = std::string;
using OrbitalTuple = std::vector<OrbitalLabel>;

void validate_orbital_label(const OrbitalLabel& label);

std::string tuple_to_text(const OrbitalTuple& tuple);  // "(n,m,l)"

// Sparse space state: exact amplitudes over orbital tuples.
class SpaceState {
public:
    explicit SpaceState(int n_particles);
    static SpaceState single(OrbitalTuple tuple);  // amplitude 1

    int particles() const { return n_; }
    const std::map<OrbitalTuple, QuadraticScalar>& terms() const { return terms_; }

    // Accumulates; zero results are dropped, so terms() never stores zeros.
    void add_term(const OrbitalTuple& tuple, const QuadraticScalar& amp);

    bool is_zero() const { return terms_.empty(); }
    QuadraticScalar norm_squared() const;
    bool is_normalized() const { return norm_squared().is_one(); }

    SpaceState& operator+=(const SpaceState& rhs);
    SpaceState& operator-=(const SpaceState& rhs);
    SpaceState& operator*=(const QuadraticScalar& k);

    friend SpaceState operator+(SpaceState lhs, const SpaceState& rhs) { return lhs += rhs; }
    friend SpaceState operator-(SpaceState lhs, const SpaceState& rhs) { return lhs -= rhs; }
    friend SpaceState operator*(const QuadraticScalar& k, SpaceState x) { return x *= k; }

    bool operator==(const SpaceState&) const = default;

private:
    int n_;
    std::map<OrbitalTuple, QuadraticScalar> terms_;
};

QuadraticScalar space_inner(const SpaceState& x, const SpaceState& y);
SpaceState space_permute(const Permutation& pi, const SpaceState& x);
SpaceState space_normalize(const SpaceState& x);
ParityTable space_parity_table(const SpaceState& x);

// Symmetrized product of three orbitals: the sum over the distinct orderings
// of the tuple, weighted 1/sqrt(#orderings). Prefactor 1, 1/sqrt3 or 1/sqrt6
// depending on label multiplicity; unit norm in every case.
SpaceState symmetric_space(const std::array<OrbitalLabel, 3>& labels);

struct SlaterResult {
    SpaceState state;          // (1/sqrt6) sum over S3 of sgn(pi) * permuted tuple
    bool pauli_excluded = false;  // repeated label: the determinant vanishes
};
SlaterResult slater_space(const std::array<OrbitalLabel, 3>& labels);

}  // namespace spinforge
