#include "spinforge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>

namespace spinforge {

Bipartition Bipartition::of(int n_particles, std::vector<int> side) {
    if (n_particles < 1) {
        throw Error(ErrorCode::DimensionMismatch, "particle count must be positive");
    }
    std::sort(side.begin(), side.end());
    if (std::adjacent_find(side.begin(), side.end()) != side.end()) {
        throw Error(ErrorCode::DimensionMismatch, "bipartition side lists a particle twice");
    }
    for (int p : side) {
        if (p < 1 || p > n_particles) {
            throw Error(ErrorCode::DimensionMismatch,
                        "particle index " + std::to_string(p) + " outside 1.." +
                            std::to_string(n_particles));
        }
    }
    if (side.empty() || static_cast<int>(side.size()) == n_particles) {
        throw Error(ErrorCode::DimensionMismatch, "bipartition sides must both be nonempty");
    }
    Bipartition cut;
    cut.left = std::move(side);
    for (int p = 1; p <= n_particles; ++p) {
        if (!std::binary_search(cut.left.begin(), cut.left.end(), p)) {
            cut.right.push_back(p);
        }
    }
    return cut;
}

std::vector<Bipartition> Bipartition::all(int n_particles) {
    std::vector<Bipartition> cuts;
    int options = 1 << (n_particles - 1);
    for (int mask = 0; mask < options - 1; ++mask) {
        std::vector<int> side{1};
        for (int k = 0; k < n_particles - 1; ++k) {
            if ((mask >> k) & 1) side.push_back(k + 2);
        }
        cuts.push_back(Bipartition::of(n_particles, std::move(side)));
    }
    return cuts;
}

std::string Bipartition::to_text() const {
    auto render = [](const std::vector<int>& side) {
        std::string text = "{";
        for (std::size_t k = 0; k < side.size(); ++k) {
            if (k > 0) text += ",";
            text += std::to_string(side[k]);
        }
        return text + "}";
    };
    return render(left) + "|" + render(right);
}

int exact_rank(ExactMatrix m) {
    int rank = 0;
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows; ++r) {
            if (!m.at(r, col).is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        if (sel != pivot_row) {
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
        }
        for (int r = pivot_row + 1; r < m.rows; ++r) {
            if (m.at(r, col).is_zero()) continue;
            QuadraticScalar factor = m.at(r, col) / m.at(pivot_row, col);
            for (int c = col; c < m.cols; ++c) {
                m.at(r, c) -= factor * m.at(pivot_row, c);
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

namespace {

void check_cut(int n, const Bipartition& cut) {
    if (cut.particles() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "bipartition covers " + std::to_string(cut.particles()) +
                        " particles, state has " + std::to_string(n));
    }
}

// Bits are msb-first over the listed side particles.
int side_bits(int index, int n, const std::vector<int>& side) {
    int bits = 0;
    for (std::size_t k = 0; k < side.size(); ++k) {
        int bit = (index >> (n - side[k])) & 1;
        bits |= bit << (side.size() - 1 - k);
    }
    return bits;
}

int from_side_bits(int n, const std::vector<int>& side, int bits) {
    int index = 0;
    for (std::size_t k = 0; k < side.size(); ++k) {
        if ((bits >> (side.size() - 1 - k)) & 1) index |= 1 << (n - side[k]);
    }
    return index;
}

std::string side_pattern(int bits, std::size_t width) {
    std::string pattern(width, 'u');
    for (std::size_t k = 0; k < width; ++k) {
        if ((bits >> (width - 1 - k)) & 1) pattern[k] = 'd';
    }
    return pattern;
}

OrbitalTuple sub_tuple(const OrbitalTuple& tuple, const std::vector<int>& side) {
    OrbitalTuple sub;
    sub.reserve(side.size());
    for (int p : side) sub.push_back(tuple[static_cast<std::size_t>(p) - 1]);
    return sub;
}

}  // namespace

CoefficientMatrix coefficient_matrix(const SpinState& x, const Bipartition& cut) {
    check_cut(x.particles(), cut);
    int n = x.particles();
    int rows = 1 << cut.left.size();
    int cols = 1 << cut.right.size();
    CoefficientMatrix cm;
    cm.matrix = ExactMatrix(rows, cols);
    for (int r = 0; r < rows; ++r) cm.row_keys.push_back(side_pattern(r, cut.left.size()));
    for (int c = 0; c < cols; ++c) cm.col_keys.push_back(side_pattern(c, cut.right.size()));
    for (int idx = 0; idx < x.dimension(); ++idx) {
        if (x.amp(idx).is_zero()) continue;
        cm.matrix.at(side_bits(idx, n, cut.left), side_bits(idx, n, cut.right)) = x.amp(idx);
    }
    return cm;
}

CoefficientMatrix coefficient_matrix(const SpaceState& x, const Bipartition& cut) {
    check_cut(x.particles(), cut);
    std::map<OrbitalTuple, int> row_ids;
    std::map<OrbitalTuple, int> col_ids;
    for (const auto& [tuple, amp] : x.terms()) {
        row_ids.emplace(sub_tuple(tuple, cut.left), 0);
        col_ids.emplace(sub_tuple(tuple, cut.right), 0);
    }
    CoefficientMatrix cm;
    int next = 0;
    for (auto& [key, id] : row_ids) {
        id = next++;
        cm.row_keys.push_back(tuple_to_text(key));
    }
    next = 0;
    for (auto& [key, id] : col_ids) {
        id = next++;
        cm.col_keys.push_back(tuple_to_text(key));
    }
    cm.matrix = ExactMatrix(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
    for (const auto& [tuple, amp] : x.terms()) {
        cm.matrix.at(row_ids[sub_tuple(tuple, cut.left)], col_ids[sub_tuple(tuple, cut.right)]) =
            amp;
    }
    return cm;
}

CoefficientMatrix coefficient_matrix(const TotalState& x, const Bipartition& cut) {
    check_cut(x.particles(), cut);
    int n = x.particles();
    using SideKey = std::pair<OrbitalTuple, int>;
    std::map<SideKey, int> row_ids;
    std::map<SideKey, int> col_ids;
    for (const auto& [key, amp] : x.terms()) {
        row_ids.emplace(SideKey{sub_tuple(key.orbitals, cut.left),
                                side_bits(key.spin_index, n, cut.left)},
                        0);
        col_ids.emplace(SideKey{sub_tuple(key.orbitals, cut.right),
                                side_bits(key.spin_index, n, cut.right)},
                        0);
    }
    CoefficientMatrix cm;
    int next = 0;
    for (auto& [key, id] : row_ids) {
        id = next++;
        cm.row_keys.push_back(tuple_to_text(key.first) +
                              side_pattern(key.second, cut.left.size()));
    }
    next = 0;
    for (auto& [key, id] : col_ids) {
        id = next++;
        cm.col_keys.push_back(tuple_to_text(key.first) +
                              side_pattern(key.second, cut.right.size()));
    }
    cm.matrix = ExactMatrix(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
    for (const auto& [key, amp] : x.terms()) {
        SideKey rk{sub_tuple(key.orbitals, cut.left), side_bits(key.spin_index, n, cut.left)};
        SideKey ck{sub_tuple(key.orbitals, cut.right), side_bits(key.spin_index, n, cut.right)};
        cm.matrix.at(row_ids[rk], col_ids[ck]) = amp;
    }
    return cm;
}

CoefficientMatrix space_spin_matrix(const TotalState& x) {
    std::map<OrbitalTuple, int> row_ids;
    std::map<int, int> col_ids;
    for (const auto& [key, amp] : x.terms()) {
        row_ids.emplace(key.orbitals, 0);
        col_ids.emplace(key.spin_index, 0);
    }
    CoefficientMatrix cm;
    int next = 0;
    for (auto& [key, id] : row_ids) {
        id = next++;
        cm.row_keys.push_back(tuple_to_text(key));
    }
    next = 0;
    for (auto& [key, id] : col_ids) {
        id = next++;
        cm.col_keys.push_back(index_to_pattern(key, x.particles()));
    }
    cm.matrix = ExactMatrix(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
    for (const auto& [key, amp] : x.terms()) {
        cm.matrix.at(row_ids[key.orbitals], col_ids[key.spin_index]) = amp;
    }
    return cm;
}

int schmidt_rank(const SpinState& x, const Bipartition& cut) {
    return exact_rank(coefficient_matrix(x, cut).matrix);
}

int schmidt_rank(const SpaceState& x, const Bipartition& cut) {
    return exact_rank(coefficient_matrix(x, cut).matrix);
}

int schmidt_rank(const TotalState& x, const Bipartition& cut) {
    return exact_rank(coefficient_matrix(x, cut).matrix);
}

namespace {

ExactMatrix gram_of_rows(const ExactMatrix& m) {
    ExactMatrix rho(m.rows, m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (int s = r; s < m.rows; ++s) {
            QuadraticScalar total;
            for (int c = 0; c < m.cols; ++c) total += m.at(r, c) * m.at(s, c);
            rho.at(s, r) = total;
            rho.at(r, s) = std::move(total);
        }
    }
    return rho;
}

}  // namespace

ExactMatrix reduced_density(const SpinState& x, const Bipartition& cut) {
    return gram_of_rows(coefficient_matrix(x, cut).matrix);
}

ExactMatrix reduced_density(const SpaceState& x, const Bipartition& cut) {
    return gram_of_rows(coefficient_matrix(x, cut).matrix);
}

ExactMatrix reduced_density(const TotalState& x, const Bipartition& cut) {
    return gram_of_rows(coefficient_matrix(x, cut).matrix);
}

std::vector<double> symmetric_eigenvalues(const ExactMatrix& m) {
    if (m.rows != m.cols) {
        throw Error(ErrorCode::DimensionMismatch, "eigenvalues need a square matrix");
    }
    int n = m.rows;
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r) * n + c] = m.at(r, c).to_float();
    }
    std::vector<double> eig;
    if (n == 1) {
        eig = {a[0]};
    } else if (n == 2) {
        double mean = (a[0] + a[3]) / 2.0;
        double off = std::sqrt((a[0] - a[3]) * (a[0] - a[3]) / 4.0 + a[1] * a[1]);
        eig = {mean + off, mean - off};
    } else {
        auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0;
            for (int p = 0; p < n; ++p) {
                for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(at(p, q)));
            }
            if (off < 1e-12) break;
            for (int p = 0; p < n; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    if (std::fabs(at(p, q)) < 1e-300) continue;
                    double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                    double t = (theta >= 0 ? 1.0 : -1.0) /
                               (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    double c = 1.0 / std::sqrt(t * t + 1.0);
                    double s = t * c;
                    for (int k = 0; k < n; ++k) {
                        double akp = at(k, p);
                        double akq = at(k, q);
                        at(k, p) = c * akp - s * akq;
                        at(k, q) = s * akp + c * akq;
                    }
                    for (int k = 0; k < n; ++k) {
                        double apk = at(p, k);
                        double aqk = at(q, k);
                        at(p, k) = c * apk - s * aqk;
                        at(q, k) = s * apk + c * aqk;
                    }
                }
            }
        }
        for (int k = 0; k < n; ++k) eig.push_back(at(k, k));
    }
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

double entropy_of_spectrum(std::vector<double> spectrum) {
    double total = 0.0;
    for (double& lambda : spectrum) {
        if (lambda < 0) lambda = 0;  // rounding dust from the double image
        total += lambda;
    }
    if (total <= 0) {
        throw Error(ErrorCode::ZeroState, "entropy of an empty spectrum is undefined");
    }
    double bits = 0.0;
    for (double lambda : spectrum) {
        double p = lambda / total;
        if (p > 0) bits -= p * std::log2(p);
    }
    return bits;
}

namespace {

template <typename State>
double entropy_impl(const State& x, const Bipartition& cut) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "entropy of the zero state is undefined");
    }
    if (!x.is_normalized()) {
        throw Error(ErrorCode::NotNormalized,
                    "entropy needs a unit-norm state, norm^2 = " +
                        x.norm_squared().to_text());
    }
    return entropy_of_spectrum(symmetric_eigenvalues(reduced_density(x, cut)));
}

}  // namespace

double entropy_bits(const SpinState& x, const Bipartition& cut) { return entropy_impl(x, cut); }
double entropy_bits(const SpaceState& x, const Bipartition& cut) { return entropy_impl(x, cut); }
double entropy_bits(const TotalState& x, const Bipartition& cut) { return entropy_impl(x, cut); }

ProductCheck product_oracle(const CoefficientMatrix& m) {
    ProductCheck check;
    int r0 = -1;
    int c0 = -1;
    for (int r = 0; r < m.matrix.rows && r0 < 0; ++r) {
        for (int c = 0; c < m.matrix.cols; ++c) {
            if (!m.matrix.at(r, c).is_zero()) {
                r0 = r;
                c0 = c;
                break;
            }
        }
    }
    if (r0 < 0) return check;  // zero matrix: no factorization
    const QuadraticScalar& pivot = m.matrix.at(r0, c0);
    std::vector<QuadraticScalar> left(static_cast<std::size_t>(m.matrix.rows));
    std::vector<QuadraticScalar> right(static_cast<std::size_t>(m.matrix.cols));
    for (int r = 0; r < m.matrix.rows; ++r) left[static_cast<std::size_t>(r)] = m.matrix.at(r, c0);
    for (int c = 0; c < m.matrix.cols; ++c) {
        right[static_cast<std::size_t>(c)] = m.matrix.at(r0, c) / pivot;
    }
    for (int r = 0; r < m.matrix.rows; ++r) {
        for (int c = 0; c < m.matrix.cols; ++c) {
            if (m.matrix.at(r, c) !=
                left[static_cast<std::size_t>(r)] * right[static_cast<std::size_t>(c)]) {
                return check;
            }
        }
    }
    check.is_product = true;
    check.left = std::move(left);
    check.right = std::move(right);
    return check;
}

ProductCheck product_oracle(const SpinState& x, const Bipartition& cut) {
    return product_oracle(coefficient_matrix(x, cut));
}

const char* to_string(EntanglementVerdict verdict) {
    switch (verdict) {
        case EntanglementVerdict::None: return "none";
        case EntanglementVerdict::SpinOnly: return "spin_only";
        case EntanglementVerdict::SpaceOnly: return "space_only";
        case EntanglementVerdict::Full: return "full";
        case EntanglementVerdict::FullNonfactorable: return "full_nonfactorable";
    }
    return "?";
}

Classification classify(const TotalState& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroState, "cannot classify the zero state");
    }
    int n = x.particles();

    // Try the one candidate space x spin factorization, pivoting on the first term.
    std::set<OrbitalTuple> tuples;
    std::set<int> spins;
    for (const auto& [key, amp] : x.terms()) {
        tuples.insert(key.orbitals);
        spins.insert(key.spin_index);
    }
    const TotalKey& pivot_key = x.terms().begin()->first;
    const QuadraticScalar& pivot = x.terms().begin()->second;

    auto amp_of = [&x](const OrbitalTuple& tuple, int spin) {
        auto it = x.terms().find({tuple, spin});
        return it == x.terms().end() ? QuadraticScalar() : it->second;
    };

    SpaceState space_factor(n);
    for (const auto& tuple : tuples) {
        space_factor.add_term(tuple, amp_of(tuple, pivot_key.spin_index));
    }
    SpinState spin_factor(n);
    for (int spin : spins) {
        spin_factor.set_amp(spin, amp_of(pivot_key.orbitals, spin) / pivot);
    }

    Classification result;
    result.factorable = true;
    for (const auto& tuple : tuples) {
        for (int spin : spins) {
            auto it = x.terms().find({tuple, spin});
            QuadraticScalar actual = it == x.terms().end() ? QuadraticScalar() : it->second;
            QuadraticScalar expected =
                space_factor.terms().count(tuple)
                    ? space_factor.terms().at(tuple) * spin_factor.amp(spin)
                    : QuadraticScalar();
            if (actual != expected) {
                result.factorable = false;
                break;
            }
        }
        if (!result.factorable) break;
    }

    if (!result.factorable) {
        result.verdict = EntanglementVerdict::FullNonfactorable;
        return result;
    }

    for (const Bipartition& cut : Bipartition::all(n)) {
        if (schmidt_rank(spin_factor, cut) > 1) result.spin_entangled = true;
        if (schmidt_rank(space_factor, cut) > 1) result.space_entangled = true;
    }
    if (result.spin_entangled && result.space_entangled) {
        result.verdict = EntanglementVerdict::Full;
    } else if (result.spin_entangled) {
        result.verdict = EntanglementVerdict::SpinOnly;
    } else if (result.space_entangled) {
        result.verdict = EntanglementVerdict::SpaceOnly;
    } else {
        result.verdict = EntanglementVerdict::None;
    }
    // Factors are only defined up to reciprocal scale; pin the space factor to
    // unit norm for presentation when the field allows it.
    try {
        QuadraticScalar space_norm = space_factor.norm_squared().try_sqrt();
        space_factor *= QuadraticScalar(1) / space_norm;
        spin_factor *= space_norm;
    } catch (const Error&) {
    }
    result.space_factor = std::move(space_factor);
    result.spin_factor = std::move(spin_factor);
    return result;
}

std::vector<RandomProductCase> random_product_suite(unsigned seed, int count) {
    // Exact unit-norm 2-vectors; irrational entries keep the suite inside the
    // field while exercising nontrivial amplitudes.
    const QuadraticScalar inv_sqrt2 = QuadraticScalar::from_parts(0, 1, 0, 0, 2);
    const QuadraticScalar half_sqrt3 = QuadraticScalar::from_parts(0, 0, 1, 0, 2);
    const QuadraticScalar half = QuadraticScalar::rational(1, 2);
    using Vec2 = std::pair<QuadraticScalar, QuadraticScalar>;
    const std::vector<Vec2> pool = {
        {QuadraticScalar(1), QuadraticScalar(0)},
        {QuadraticScalar(0), QuadraticScalar(1)},
        {inv_sqrt2, inv_sqrt2},
        {inv_sqrt2, -inv_sqrt2},
        {half_sqrt3, half},
        {half, -half_sqrt3},
        {QuadraticScalar::rational(3, 5), QuadraticScalar::rational(4, 5)},
        {QuadraticScalar::rational(5, 13), -QuadraticScalar::rational(12, 13)},
        {QuadraticScalar::from_parts(0, 0, 0, 1, 3), QuadraticScalar::from_parts(0, 0, 1, 0, 3)},
    };

    std::mt19937 eng(seed);
    // mt19937 word output is pinned by the standard, so modulo draws keep the
    // suite identical across platforms.
    auto pick = [&eng](std::size_t k) { return static_cast<std::size_t>(eng() % k); };

    auto draw_vec2 = [&]() {
        Vec2 v = pool[pick(pool.size())];
        if (pick(2) == 1) std::swap(v.first, v.second);
        if (pick(2) == 1) {
            v.first = -v.first;
            v.second = -v.second;
        }
        return v;
    };

    auto draw_vec4 = [&]() {
        std::vector<QuadraticScalar> v(4);
        if (pick(2) == 0) {
            Vec2 x = draw_vec2();
            Vec2 y = draw_vec2();
            v[0] = x.first * y.first;
            v[1] = x.first * y.second;
            v[2] = x.second * y.first;
            v[3] = x.second * y.second;
        } else {
            Vec2 x = draw_vec2();
            std::size_t i = pick(4);
            std::size_t j = pick(3);
            if (j >= i) ++j;
            v[i] = x.first;
            v[j] = x.second;
        }
        return v;
    };

    const int n = 3;
    auto cuts = Bipartition::all(n);
    std::vector<RandomProductCase> suite;
    for (int k = 0; k < count; ++k) {
        const Bipartition& cut = cuts[pick(cuts.size())];
        std::vector<QuadraticScalar> lv, rv;
        if (cut.left.size() == 1) {
            Vec2 x = draw_vec2();
            lv = {x.first, x.second};
            rv = draw_vec4();
        } else {
            lv = draw_vec4();
            Vec2 x = draw_vec2();
            rv = {x.first, x.second};
        }
        SpinState state(n);
        for (std::size_t r = 0; r < lv.size(); ++r) {
            if (lv[r].is_zero()) continue;
            for (std::size_t c = 0; c < rv.size(); ++c) {
                if (rv[c].is_zero()) continue;
                int idx = from_side_bits(n, cut.left, static_cast<int>(r)) |
                          from_side_bits(n, cut.right, static_cast<int>(c));
                state.set_amp(idx, lv[r] * rv[c]);
            }
        }
        std::string name = "product-" + std::string(k < 10 ? "0" : "") + std::to_string(k);
        suite.push_back({std::move(name), std::move(state), cut});
    }
    return suite;
}

}  // namespace spinforge
