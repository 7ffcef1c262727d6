#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinforge/assembly.hpp"

namespace spinforge {

// Particle bipartition; both sides nonempty, sorted, disjoint, covering 1..n.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    // Canonicalizes `side` as the left block, complement as the right.
    static Bipartition of(int n_particles, std::vector<int> side);
    // Every bipartition, each listed once with particle 1 on the left.
    static std::vector<Bipartition> all(int n_particles);

    int particles() const { return static_cast<int>(left.size() + right.size()); }
    std::string to_text() const;  // "{1}|{2,3}"

    bool operator==(const Bipartition&) const = default;
};

struct ExactMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<QuadraticScalar> entries;  // row-major

    ExactMatrix() = default;
    ExactMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

    QuadraticScalar& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
    const QuadraticScalar& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * cols + c];
    }
};

// Rank over Q(sqrt2, sqrt3), Gaussian elimination with exact division.
int exact_rank(ExactMatrix m);

// Amplitudes arranged across a cut; key strings name the row/column bases.
struct CoefficientMatrix {
    ExactMatrix matrix;
    std::vector<std::string> row_keys;
    std::vector<std::string> col_keys;
};

CoefficientMatrix coefficient_matrix(const SpinState& x, const Bipartition& cut);
CoefficientMatrix coefficient_matrix(const SpaceState& x, const Bipartition& cut);
CoefficientMatrix coefficient_matrix(const TotalState& x, const Bipartition& cut);

// Rows are orbital tuples, columns spin patterns: the space-vs-spin split.
CoefficientMatrix space_spin_matrix(const TotalState& x);

int schmidt_rank(const SpinState& x, const Bipartition& cut);
int schmidt_rank(const SpaceState& x, const Bipartition& cut);
int schmidt_rank(const TotalState& x, const Bipartition& cut);

// rho = M M^T on the left block, exact; trace equals the squared norm.
ExactMatrix reduced_density(const SpinState& x, const Bipartition& cut);
ExactMatrix reduced_density(const SpaceState& x, const Bipartition& cut);
ExactMatrix reduced_density(const TotalState& x, const Bipartition& cut);

// Eigenvalues of a symmetric matrix, descending. Exact entries are taken to
// their double image; dimensions 1 and 2 use the closed form, larger ones
// cyclic Jacobi sweeps to a 1e-12 off-diagonal bound.
std::vector<double> symmetric_eigenvalues(const ExactMatrix& m);

// Shannon entropy in bits of a nonnegative spectrum, normalized by its sum;
// 0 log 0 = 0.
double entropy_of_spectrum(std::vector<double> spectrum);

// Von Neumann entropy in bits across the cut. The state must be exactly
// normalized (NotNormalized otherwise, ZeroState on the zero vector).
double entropy_bits(const SpinState& x, const Bipartition& cut);
double entropy_bits(const SpaceState& x, const Bipartition& cut);
double entropy_bits(const TotalState& x, const Bipartition& cut);

// Independent product test: reconstructs the one candidate outer-product
// factorization from a pivot row and column and compares entrywise. Never
// calls the rank elimination.
struct ProductCheck {
    bool is_product = false;
    std::vector<QuadraticScalar> left;   // factor over row_keys when is_product
    std::vector<QuadraticScalar> right;  // factor over col_keys when is_product
};
ProductCheck product_oracle(const CoefficientMatrix& m);
ProductCheck product_oracle(const SpinState& x, const Bipartition& cut);

enum class EntanglementVerdict { None, SpinOnly, SpaceOnly, Full, FullNonfactorable };
const char* to_string(EntanglementVerdict verdict);

// Scale-invariant; input must be nonzero. The factor flags describe the
// space/spin factors and are false whenever the state is not factorable;
// FullNonfactorable then carries the entanglement statement.
struct Classification {
    bool factorable = false;
    bool spin_entangled = false;
    bool space_entangled = false;
    EntanglementVerdict verdict = EntanglementVerdict::None;
    std::optional<SpaceState> space_factor;  // set when factorable
    std::optional<SpinState> spin_factor;
};
Classification classify(const TotalState& x);

// Deterministic suite of exactly-normalized spin product states: factors are
// outer products of unit-norm vectors drawn from an exact pool, so every case
// is a certified product across its cut.
struct RandomProductCase {
    std::string name;
    SpinState state;
    Bipartition cut;
};
std::vector<RandomProductCase> random_product_suite(unsigned seed, int count);

}  // namespace spinforge
