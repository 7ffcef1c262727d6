#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinforge/spin.hpp"

namespace spinforge {

// Angular momenta are stored doubled so half-integer values stay integral.
// For two-particle states there is no intermediate coupling; twice_s_prime is
// set equal to twice_s by convention.
struct MultipletLabel {
    int n_particles = 0;
    int twice_s_prime = 0;  // pair (1,2) spin
    int twice_s = 0;        // total spin
    int twice_m = 0;        // total projection

    // chi(0,0) / chi(1,0) for two particles, chi(1,3/2,1/2) style for three.
    std::string to_text() const;

    bool operator==(const MultipletLabel&) const = default;
};

struct LabeledState {
    MultipletLabel label;
    std::string tag;   // position in the derivation sequence, e.g. "eq27"
    SpinState state;
    std::string note;  // how the state was built
};

// The four two-electron states: chi(1,1), chi(1,0), chi(1,-1), chi(0,0).
std::array<LabeledState, 4> two_electron_states();

struct QuadrupletResult {
    // M = 3/2, 1/2, -1/2, -3/2 in that order.
    std::array<LabeledState, 4> states;
    // Norm stripped by each lowering step: sqrt3, 2, sqrt3.
    std::array<QuadraticScalar, 3> ladder_norms;
};
QuadrupletResult quadruplet();

// S' = 1 doublet, (2uud-udu-duu)/sqrt6 and (udd+dud-2ddu)/sqrt6. Built as the
// orthogonal complement of the quadruplet inside each pair-triplet M sector,
// sign fixed so the lowest-index amplitude is positive.
std::array<LabeledState, 2> pair_triplet_doublets();

// S' = 0 doublet, chi00 x u and chi00 x d.
std::array<LabeledState, 2> pair_singlet_doublets();

// All eight three-particle states: quadruplet, then the two doublet pairs.
std::vector<LabeledState> three_particle_states();

// One operator audit row: |Op x - expected x|^2 must vanish.
struct EigenCheck {
    std::string operator_name;
    QuadraticScalar expected;
    QuadraticScalar residual2;
    bool pass = false;
};

// Applies S^2 (all particles), S'^2 (pair 1,2), and S_z and compares against
// the label. Exact; three rows.
std::vector<EigenCheck> verify_quantum_numbers(const LabeledState& ls);

std::vector<std::vector<QuadraticScalar>> gram_matrix(const std::vector<LabeledState>& states);

// One symmetrized combination (1/sqrt3)(X12 +- X13 +- X23) of a doublet,
// exactly as the derivation sequence prints it, never renormalized.
struct SymmetrizationVariant {
    SpinState state;
    QuadraticScalar norm2;
    std::optional<ParityTable> parity;                // absent when state == 0
    std::optional<QuadraticScalar> parallel_to_seed;  // k when state == k * seed
};

// Audit of one printed pairwise sum. X13 = P(23) X12 and X23 = P(13) X12 are
// the pair relabelings; "literal" keeps all plus signs, "alternating" carries
// the odd parity of the generating transpositions: X12 - X13 - X23.
struct SymmetrizationRecord {
    std::string sum_tag;   // eq28, eq31, eq33, eq35
    std::string seed_tag;  // eq27, eq30, eq32, eq34
    LabeledState seed;
    SymmetrizationVariant literal;
    SymmetrizationVariant alternating;
};

std::array<SymmetrizationRecord, 4> symmetrization_audit();

}  // namespace spinforge
