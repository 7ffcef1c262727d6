#include "spinforge/spin.hpp"

#include <algorithm>
#include <numeric>

namespace spinforge {

namespace {

constexpr int kMaxParticles = 12;  // dense 2^n storage; the tool itself needs n <= 3

void check_particle_count(int n) {
    if (n < 1 || n > kMaxParticles) {
        throw Error(ErrorCode::DimensionMismatch,
                    "particle count " + std::to_string(n) + " outside 1.." +
                        std::to_string(kMaxParticles));
    }
}

void check_same_particles(const SpinState& x, const SpinState& y) {
    if (x.particles() != y.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "states have " + std::to_string(x.particles()) + " and " +
                        std::to_string(y.particles()) + " particles");
    }
}

void check_particle_set(int n, const ParticleSet& particles) {
    for (std::size_t k = 0; k < particles.size(); ++k) {
        int p = particles[k];
        if (p < 1 || p > n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "particle index " + std::to_string(p) + " outside 1.." +
                            std::to_string(n));
        }
        for (std::size_t m = k + 1; m < particles.size(); ++m) {
            if (particles[m] == p) {
                throw Error(ErrorCode::DimensionMismatch,
                            "particle index " + std::to_string(p) + " listed twice");
            }
        }
    }
}

int bit_of(int index, int n, int particle) { return (index >> (n - particle)) & 1; }

}  // namespace

int pattern_to_index(std::string_view pattern) {
    if (pattern.empty()) throw ParseError("empty spin pattern", 1, 1);
    int index = 0;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        char ch = pattern[k];
        if (ch != 'u' && ch != 'd') {
            throw ParseError(std::string("spin pattern may contain only 'u' and 'd', got '") +
                                 ch + "'",
                             1, k + 1);
        }
        index = index * 2 + (ch == 'd' ? 1 : 0);
    }
    return index;
}

std::string index_to_pattern(int index, int n_particles) {
    check_particle_count(n_particles);
    if (index < 0 || index >= (1 << n_particles)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "basis index " + std::to_string(index) + " outside 0.." +
                        std::to_string((1 << n_particles) - 1));
    }
    std::string pattern(static_cast<std::size_t>(n_particles), 'u');
    for (int p = 1; p <= n_particles; ++p) {
        if (bit_of(index, n_particles, p)) pattern[p - 1] = 'd';
    }
    return pattern;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    int n = static_cast<int>(images_.size());
    check_particle_count(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int image : images_) {
        if (image < 1 || image > n || seen[image - 1]) {
            throw Error(ErrorCode::DimensionMismatch,
                        "permutation images must be a bijection on 1.." + std::to_string(n));
        }
        seen[image - 1] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i == j) {
        throw Error(ErrorCode::SameParticle,
                    "transposition needs two distinct particles, got " + std::to_string(i));
    }
    Permutation pi = identity(n);
    if (i < 1 || i > n || j < 1 || j > n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "transposition indices outside 1.." + std::to_string(n));
    }
    std::swap(pi.images_[i - 1], pi.images_[j - 1]);
    return pi;
}

Permutation Permutation::cycle(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) images[i - 1] = (i % n) + 1;
    return Permutation(std::move(images));
}

std::vector<Permutation> Permutation::all(int n) {
    check_particle_count(n);
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    std::vector<Permutation> result;
    do {
        result.push_back(Permutation(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return result;
}

int Permutation::operator()(int i) const {
    if (i < 1 || i > size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "particle index " + std::to_string(i) + " outside 1.." +
                        std::to_string(size()));
    }
    return images_[i - 1];
}

int Permutation::parity() const {
    int inversions = 0;
    for (std::size_t k = 0; k < images_.size(); ++k) {
        for (std::size_t m = k + 1; m < images_.size(); ++m) {
            if (images_[k] > images_[m]) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

Permutation Permutation::inverse() const {
    std::vector<int> images(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k) {
        images[images_[k] - 1] = static_cast<int>(k) + 1;
    }
    return Permutation(std::move(images));
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size()) {
        throw Error(ErrorCode::DimensionMismatch, "composed permutations differ in size");
    }
    std::vector<int> images(inner.images_.size());
    for (std::size_t k = 0; k < images.size(); ++k) {
        images[k] = outer.images_[inner.images_[k] - 1];
    }
    return Permutation(std::move(images));
}

SpinState::SpinState(int n_particles) : n_(n_particles) {
    check_particle_count(n_particles);
    amps_.resize(std::size_t{1} << n_particles);
}

SpinState SpinState::basis(std::string_view pattern) {
    SpinState x(static_cast<int>(pattern.size()));
    x.amps_[static_cast<std::size_t>(pattern_to_index(pattern))] = QuadraticScalar(1);
    return x;
}

const QuadraticScalar& SpinState::amp(int index) const {
    if (index < 0 || index >= dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "basis index " + std::to_string(index) + " outside 0.." +
                        std::to_string(dimension() - 1));
    }
    return amps_[static_cast<std::size_t>(index)];
}

const QuadraticScalar& SpinState::amp(std::string_view pattern) const {
    if (static_cast<int>(pattern.size()) != n_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pattern length " + std::to_string(pattern.size()) + " does not match " +
                        std::to_string(n_) + " particles");
    }
    return amp(pattern_to_index(pattern));
}

void SpinState::set_amp(int index, QuadraticScalar value) {
    if (index < 0 || index >= dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "basis index " + std::to_string(index) + " outside 0.." +
                        std::to_string(dimension() - 1));
    }
    amps_[static_cast<std::size_t>(index)] = std::move(value);
}

bool SpinState::is_zero() const {
    return std::all_of(amps_.begin(), amps_.end(),
                       [](const QuadraticScalar& q) { return q.is_zero(); });
}

QuadraticScalar SpinState::norm_squared() const {
    QuadraticScalar total;
    for (const auto& amp : amps_) total += amp * amp;
    return total;
}

SpinState& SpinState::operator+=(const SpinState& rhs) {
    check_same_particles(*this, rhs);
    for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] += rhs.amps_[k];
    return *this;
}

SpinState& SpinState::operator-=(const SpinState& rhs) {
    check_same_particles(*this, rhs);
    for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] -= rhs.amps_[k];
    return *this;
}

SpinState& SpinState::operator*=(const QuadraticScalar& k) {
    for (auto& amp : amps_) amp *= k;
    return *this;
}

SpinState tensor(const SpinState& x, const SpinState& y) {
    SpinState result(x.particles() + y.particles());
    for (int i = 0; i < x.dimension(); ++i) {
        if (x.amp(i).is_zero()) continue;
        for (int j = 0; j < y.dimension(); ++j) {
            if (y.amp(j).is_zero()) continue;
            result.set_amp(i * y.dimension() + j, x.amp(i) * y.amp(j));
        }
    }
    return result;
}

QuadraticScalar inner(const SpinState& x, const SpinState& y) {
    check_same_particles(x, y);
    QuadraticScalar total;
    for (int k = 0; k < x.dimension(); ++k) total += x.amp(k) * y.amp(k);
    return total;
}

SpinState apply_ladder(Ladder dir, const ParticleSet& particles, const SpinState& x) {
    check_particle_set(x.particles(), particles);
    int n = x.particles();
    SpinState result(n);
    for (int idx = 0; idx < x.dimension(); ++idx) {
        const QuadraticScalar& amp = x.amp(idx);
        if (amp.is_zero()) continue;
        for (int p : particles) {
            int mask = 1 << (n - p);
            bool is_down = (idx & mask) != 0;
            if (dir == Ladder::Lower && !is_down) {
                result.set_amp(idx | mask, result.amp(idx | mask) + amp);
            } else if (dir == Ladder::Raise && is_down) {
                result.set_amp(idx & ~mask, result.amp(idx & ~mask) + amp);
            }
        }
    }
    return result;
}

SpinState apply_sz(const ParticleSet& particles, const SpinState& x) {
    check_particle_set(x.particles(), particles);
    int n = x.particles();
    SpinState result(n);
    for (int idx = 0; idx < x.dimension(); ++idx) {
        const QuadraticScalar& amp = x.amp(idx);
        if (amp.is_zero()) continue;
        int ups = 0;
        for (int p : particles) {
            if (bit_of(idx, n, p) == 0) ++ups;
        }
        int downs = static_cast<int>(particles.size()) - ups;
        result.set_amp(idx, amp * QuadraticScalar::rational(ups - downs, 2));
    }
    return result;
}

SpinState pair_dot(int i, int j, const SpinState& x) {
    if (i == j) {
        throw Error(ErrorCode::SameParticle,
                    "pair operator needs two distinct particles, got " + std::to_string(i));
    }
    check_particle_set(x.particles(), {i, j});
    int n = x.particles();
    const QuadraticScalar quarter = QuadraticScalar::rational(1, 4);
    const QuadraticScalar half = QuadraticScalar::rational(1, 2);
    SpinState result(n);
    for (int idx = 0; idx < x.dimension(); ++idx) {
        const QuadraticScalar& amp = x.amp(idx);
        if (amp.is_zero()) continue;
        if (bit_of(idx, n, i) == bit_of(idx, n, j)) {
            result.set_amp(idx, result.amp(idx) + amp * quarter);
        } else {
            result.set_amp(idx, result.amp(idx) - amp * quarter);
            int swapped = idx ^ (1 << (n - i)) ^ (1 << (n - j));
            result.set_amp(swapped, result.amp(swapped) + amp * half);
        }
    }
    return result;
}

SpinState apply_s_squared(const ParticleSet& particles, const SpinState& x) {
    check_particle_set(x.particles(), particles);
    SpinState result = x;
    result *= QuadraticScalar::rational(3 * static_cast<BigInt>(particles.size()), 4);
    const QuadraticScalar two(2);
    for (std::size_t k = 0; k < particles.size(); ++k) {
        for (std::size_t m = k + 1; m < particles.size(); ++m) {
            result += two * pair_dot(particles[k], particles[m], x);
        }
    }
    return result;
}

SpinState permute(const Permutation& pi, const SpinState& x) {
    if (pi.size() != x.particles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "permutation on " + std::to_string(pi.size()) + " particles applied to " +
                        std::to_string(x.particles()) + "-particle state");
    }
    int n = x.particles();
    SpinState result(n);
    for (int idx = 0; idx < x.dimension(); ++idx) {
        const QuadraticScalar& amp = x.amp(idx);
        if (amp.is_zero()) continue;
        int dest = 0;
        for (int p = 1; p <= n; ++p) {
            if (bit_of(idx, n, p)) dest |= 1 << (n - pi(p));
        }
        result.set_amp(dest, result.amp(dest) + amp);
    }
    return result;
}

SpinState project(ProjectorKind kind, const SpinState& x) {
    int n = x.particles();
    SpinState result(n);
    BigInt order = 1;
    for (const Permutation& pi : Permutation::all(n)) {
        SpinState term = permute(pi, x);
        if (kind == ProjectorKind::Antisymmetrizer && pi.parity() < 0) {
            term *= QuadraticScalar(-1);
        }
        result += term;
    }
    for (int k = 2; k <= n; ++k) order *= k;
    result *= QuadraticScalar::rational(1, order);
    return result;
}

SpinState pairwise_sum(const SpinState& x12, const SpinState& x13, const SpinState& x23) {
    check_same_particles(x12, x13);
    check_same_particles(x12, x23);
    SpinState sum = x12;
    sum += x13;
    sum += x23;
    // 1/sqrt3 = sqrt3/3
    sum *= QuadraticScalar::from_parts(0, 0, 1, 0, 3);
    return sum;
}

SpinState normalize(const SpinState& x) {
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
    SpinState result = x;
    result *= QuadraticScalar(1) / norm;
    return result;
}

ParityTable parity_table(const SpinState& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "parity of the zero state is undefined");
    }
    int n = x.particles();
    ParityTable table;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            SpinState swapped = permute(Permutation::transposition(n, i, j), x);
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

}  // namespace spinforge
