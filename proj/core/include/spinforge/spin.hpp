#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spinforge/parity.hpp"
#include "spinforge/radical.hpp"

namespace spinforge {

// Basis convention: a pattern like "udu" lists particles left to right, with
// particle 1 leftmost. The basis index uses particle 1 as the most significant
// bit, u = 0 and d = 1, so for three particles uuu = 0, uud = 1, ..., ddd = 7.
int pattern_to_index(std::string_view pattern);
std::string index_to_pattern(int index, int n_particles);

class Permutation {
public:
    // images[i-1] = pi(i), a bijection on 1..n.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    // The n-cycle 1 -> 2 -> ... -> n -> 1.
    static Permutation cycle(int n);
    // All of S_n, lexicographic by image tuple (identity first).
    static std::vector<Permutation> all(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const;  // 1-based
    int parity() const;           // +1 or -1
    Permutation inverse() const;

    // (outer after inner)(i) = outer(inner(i)).
    friend Permutation compose(const Permutation& outer, const Permutation& inner);

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

// 1-based particle indices; duplicates and out-of-range entries are rejected.
using ParticleSet = std::vector<int>;

// Dense n-spin-1/2 state with exact amplitudes, dimension 2^n.
class SpinState {
public:
    explicit SpinState(int n_particles);  // the zero vector
    static SpinState basis(std::string_view pattern);

    int particles() const { return n_; }
    int dimension() const { return static_cast<int>(amps_.size()); }

    const QuadraticScalar& amp(int index) const;
    const QuadraticScalar& amp(std::string_view pattern) const;
    void set_amp(int index, QuadraticScalar value);

    bool is_zero() const;
    QuadraticScalar norm_squared() const;
    bool is_normalized() const { return norm_squared().is_one(); }

    SpinState& operator+=(const SpinState& rhs);
    SpinState& operator-=(const SpinState& rhs);
    SpinState& operator*=(const QuadraticScalar& k);

    friend SpinState operator+(SpinState lhs, const SpinState& rhs) { return lhs += rhs; }
    friend SpinState operator-(SpinState lhs, const SpinState& rhs) { return lhs -= rhs; }
    friend SpinState operator*(const QuadraticScalar& k, SpinState x) { return x *= k; }

    bool operator==(const SpinState&) const = default;

private:
    int n_;
    std::vector<QuadraticScalar> amps_;
};

SpinState tensor(const SpinState& x, const SpinState& y);
QuadraticScalar inner(const SpinState& x, const SpinState& y);

enum class Ladder { Raise, Lower };

// Collective ladder operator over the listed particles; each flip carries
// coefficient 1 (s+|d> = |u>, s-|u> = |d>, annihilates otherwise).
SpinState apply_ladder(Ladder dir, const ParticleSet& particles, const SpinState& x);

// Collective S_z over the listed particles; each particle contributes +-1/2.
SpinState apply_sz(const ParticleSet& particles, const SpinState& x);

// s_i . s_j = (s_i+ s_j- + s_i- s_j+)/2 + s_iz s_jz.
SpinState pair_dot(int i, int j, const SpinState& x);

// S^2 over a subset: (3/4)|subset| + 2 * sum over pairs i<j of s_i . s_j.
SpinState apply_s_squared(const ParticleSet& particles, const SpinState& x);

// Relabels particles: amplitude of pattern p moves to the pattern q with
// q[pi(i)] = p[i].
SpinState permute(const Permutation& pi, const SpinState& x);

enum class ProjectorKind { Symmetrizer, Antisymmetrizer };

// Group average (1/n!) * sum over S_n of [sgn] * P.
SpinState project(ProjectorKind kind, const SpinState& x);

// (1/sqrt3) * (x12 + x13 + x23), exactly as printed; NOT renormalized.
SpinState pairwise_sum(const SpinState& x12, const SpinState& x13, const SpinState& x23);

// Exact normalization; ZeroState on the zero vector, NormOutsideField when the
// norm has no representation in the field.
SpinState normalize(const SpinState& x);

// Eigenvalue bookkeeping for every transposition; ZeroState on the zero vector.
ParityTable parity_table(const SpinState& x);

}  // namespace spinforge
