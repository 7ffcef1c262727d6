#include "spinforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

#include "spinforge/state_io.hpp"

namespace spinforge {

namespace {

QuadraticScalar inv_sqrt(int n) {
    switch (n) {
        case 2: return QuadraticScalar::rational(1, 2) * QuadraticScalar::sqrt2();
        case 3: return QuadraticScalar::rational(1, 3) * QuadraticScalar::sqrt3();
        case 6: return QuadraticScalar::rational(1, 6) * QuadraticScalar::sqrt6();
        default: return QuadraticScalar::rational(1, n);
    }
}

std::string half_text(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    std::string s = twice < 0 ? "-" : "";
    return s + std::to_string(std::abs(twice)) + "/2";
}

struct PrettyTerm {
    std::string body;
    QuadraticScalar amp;
};

QuadraticScalar radical_scalar(int r) {
    switch (r) {
        case 2: return QuadraticScalar::sqrt2();
        case 3: return QuadraticScalar::sqrt3();
        case 6: return QuadraticScalar::sqrt6();
        default: return QuadraticScalar(1);
    }
}

// Common-radical rendering: find the smallest N = s^2 * r (r in {1,2,3,6})
// with every amplitude an integer multiple of 1/sqrtN.
std::string pretty_terms(const std::vector<PrettyTerm>& terms) {
    if (terms.empty()) return "0";

    struct Cand {
        long long n;
        int s;
        int r;
    };
    std::vector<Cand> cands;
    for (int r : {1, 2, 3, 6}) {
        for (int s = 1; s <= 12; ++s) {
            cands.push_back({static_cast<long long>(s) * s * r, s, r});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.n < y.n; });

    for (const Cand& cand : cands) {
        QuadraticScalar root = QuadraticScalar(cand.s) * radical_scalar(cand.r);
        std::vector<BigInt> coeffs;
        coeffs.reserve(terms.size());
        bool ok = true;
        for (const PrettyTerm& t : terms) {
            QuadraticScalar q = t.amp * root;
            if (!q.is_integer()) {
                ok = false;
                break;
            }
            coeffs.push_back(q.a());
        }
        if (!ok) continue;

        std::string joined;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const BigInt& c = coeffs[i];
            BigInt mag = c < 0 ? BigInt(-c) : c;
            std::string piece = mag == 1 ? terms[i].body : mag.str() + " " + terms[i].body;
            if (i == 0) {
                joined = (c < 0 ? "-" : "") + piece;
            } else {
                joined += (c < 0 ? " - " : " + ") + piece;
            }
        }
        if (cand.n == 1) {
            if (terms.size() == 1 && coeffs[0] == 1) return joined;
            return "(" + joined + ")";
        }
        std::string suffix = cand.r == 1 ? "/" + std::to_string(cand.s)
                                         : "/sqrt" + std::to_string(cand.n);
        return "(" + joined + ")" + suffix;
    }

    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += " + ";
        out += terms[i].amp.to_text() + " " + terms[i].body;
    }
    return out;
}

std::string parity_text(const ParityTable& table) {
    std::string out;
    for (const auto& check : table.checks) {
        if (!out.empty()) out += " ";
        out += "(" + std::to_string(check.i) + "," + std::to_string(check.j) +
               ")=" + to_string(check.parity);
    }
    return out;
}

const char* status_text(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Info: return "info";
    }
    return "?";
}

const char* status_json(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Info: return "info";
    }
    return "?";
}

void add_check(ReportSection& sec, std::string id, bool ok, std::string value,
               std::string detail = "") {
    sec.entries.push_back({std::move(id), ok ? CheckStatus::Pass : CheckStatus::Fail,
                           std::move(value), std::move(detail)});
}

void add_info(ReportSection& sec, std::string id, std::string value, std::string detail = "") {
    sec.entries.push_back({std::move(id), CheckStatus::Info, std::move(value),
                           std::move(detail)});
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

// ---- shared constructions -------------------------------------------------

std::vector<LabeledState> all_labeled_states() {
    std::vector<LabeledState> out;
    for (const auto& ls : two_electron_states()) out.push_back(ls);
    for (const auto& ls : three_particle_states()) out.push_back(ls);
    return out;
}

SpinState eq20_literal_state() {
    // As printed: (duu + udu + dud)/sqrt3. The third pattern sits in the
    // M = -1/2 sector; the ladder expansion has uud there.
    SpinState x(3);
    QuadraticScalar k = inv_sqrt(3);
    x.set_amp(pattern_to_index("duu"), k);
    x.set_amp(pattern_to_index("udu"), k);
    x.set_amp(pattern_to_index("dud"), k);
    return x;
}

SpinState pair_coupled(const SpinState& pair, const SpinState& third) {
    return tensor(pair, third);
}

SpaceState eq38_literal_state() {
    // As printed for the n=m!=l case: middle tuple (n,m,n) with m=n collapses
    // to (n,n,n) instead of the symmetric (n,l,n).
    SpaceState x(3);
    QuadraticScalar k = inv_sqrt(3);
    x.add_term({"n", "n", "l"}, k);
    x.add_term({"n", "n", "n"}, k);
    x.add_term({"l", "n", "n"}, k);
    return x;
}

struct SpinOrbital {
    OrbitalLabel orbital;
    char spin;
};

TotalState spin_orbital_determinant(const std::array<SpinOrbital, 3>& so) {
    TotalState out(3);
    QuadraticScalar k = inv_sqrt(6);
    for (const Permutation& pi : Permutation::all(3)) {
        OrbitalTuple tuple(3);
        std::string pattern(3, 'u');
        for (int j = 1; j <= 3; ++j) {
            const SpinOrbital& slot = so[static_cast<std::size_t>(pi(j) - 1)];
            tuple[static_cast<std::size_t>(j - 1)] = slot.orbital;
            pattern[static_cast<std::size_t>(j - 1)] = slot.spin;
        }
        QuadraticScalar amp = pi.parity() < 0 ? -k : k;
        out.add_term(TotalKey{std::move(tuple), pattern_to_index(pattern)}, amp);
    }
    return out;
}

// ---- report sections --------------------------------------------------------

ReportSection section_run_config(const VerifyOptions& opts) {
    ReportSection sec{"run_config", "run parameters", {}};
    add_info(sec, "seed", std::to_string(opts.seed));
    add_info(sec, "random_products", std::to_string(opts.random_products));
    add_info(sec, "scan",
             "sigma=" + format_float(opts.sigma) + " dmax=" + format_float(opts.dmax) +
                 " steps=" + std::to_string(opts.steps));
    return sec;
}

ReportSection section_eigenvalue_checks() {
    ReportSection sec{"eigenvalue_checks", "operator eigenvalue audit", {}};
    for (const LabeledState& ls : all_labeled_states()) {
        std::string base = ls.label.to_text();
        add_check(sec, base + ".norm2", ls.state.norm_squared().is_one(),
                  format_scalar(ls.state.norm_squared()));
        for (const EigenCheck& check : verify_quantum_numbers(ls)) {
            add_check(sec, base + "." + check.operator_name, check.pass,
                      format_scalar(check.expected),
                      "residual2 = " + format_scalar(check.residual2));
        }
    }
    return sec;
}

ReportSection section_ladder_residuals() {
    ReportSection sec{"ladder_residuals", "quadruplet lowering factors", {}};
    QuadrupletResult quad = quadruplet();
    const char* ids[3] = {"eq19_ladder_norm", "eq22_ladder_norm", "eq24_ladder_norm"};
    const int twice_m[3] = {3, 1, -1};
    for (int i = 0; i < 3; ++i) {
        // |S-(S,M)|: sqrt(S(S+1) - M(M-1)) with S = 3/2.
        int t = twice_m[i];
        QuadraticScalar expected =
            QuadraticScalar::rational(15 - t * (t - 2), 4).try_sqrt();
        add_check(sec, ids[i], quad.ladder_norms[static_cast<std::size_t>(i)] == expected,
                  format_scalar(quad.ladder_norms[static_cast<std::size_t>(i)]),
                  "expected " + format_scalar(expected));
    }
    return sec;
}

bool gram_is_identity(const std::vector<std::vector<QuadraticScalar>>& gram) {
    for (std::size_t i = 0; i < gram.size(); ++i) {
        for (std::size_t j = 0; j < gram[i].size(); ++j) {
            QuadraticScalar want = i == j ? QuadraticScalar(1) : QuadraticScalar(0);
            if (gram[i][j] != want) return false;
        }
    }
    return true;
}

ReportSection section_gram_matrix() {
    ReportSection sec{"gram_matrix", "orthonormality and completeness", {}};

    auto two = two_electron_states();
    std::vector<LabeledState> two_vec(two.begin(), two.end());
    add_check(sec, "two_electron_gram", gram_is_identity(gram_matrix(two_vec)),
              "identity_4x4", "exact inner products");

    auto three = three_particle_states();
    add_check(sec, "three_electron_gram", gram_is_identity(gram_matrix(three)),
              "identity_8x8", "exact inner products");

    // Sum of |s><s| over the eight states must be the identity on dim 8.
    ExactMatrix sum(8, 8);
    for (const LabeledState& ls : three) {
        for (int i = 0; i < 8; ++i) {
            if (ls.state.amp(i).is_zero()) continue;
            for (int j = 0; j < 8; ++j) {
                sum.at(i, j) += ls.state.amp(i) * ls.state.amp(j);
            }
        }
    }
    bool resolved = true;
    for (int i = 0; i < 8 && resolved; ++i) {
        for (int j = 0; j < 8; ++j) {
            QuadraticScalar want = i == j ? QuadraticScalar(1) : QuadraticScalar(0);
            if (sum.at(i, j) != want) {
                resolved = false;
                break;
            }
        }
    }
    add_check(sec, "resolution_of_identity", resolved, bool_text(resolved),
              "sum of outer products over the 8 states");
    return sec;
}

ReportSection section_permutation_structure() {
    ReportSection sec{"permutation_structure", "exchange behavior of the spin basis", {}};
    QuadrupletResult quad = quadruplet();
    auto perms = Permutation::all(3);

    for (const LabeledState& ls : quad.states) {
        bool fixed = true;
        for (const Permutation& pi : perms) {
            if (permute(pi, ls.state) != ls.state) {
                fixed = false;
                break;
            }
        }
        add_check(sec, ls.tag + "_fixed_under_s3", fixed, bool_text(fixed),
                  ls.label.to_text() + " under all 6 permutations");
    }

    struct DoubletExpect {
        LabeledState ls;
        TranspositionParity under12;
    };
    std::vector<DoubletExpect> doublets;
    for (const auto& ls : pair_triplet_doublets()) doublets.push_back({ls, TranspositionParity::Plus});
    for (const auto& ls : pair_singlet_doublets()) doublets.push_back({ls, TranspositionParity::Minus});
    for (const auto& item : doublets) {
        ParityTable table = parity_table(item.ls.state);
        bool ok = table.checks.size() == 3 && table.checks[0].parity == item.under12 &&
                  table.checks[1].parity == TranspositionParity::NotEigenstate &&
                  table.checks[2].parity == TranspositionParity::NotEigenstate;
        add_check(sec, item.ls.tag + "_parity", ok, parity_text(table),
                  item.ls.label.to_text() + ": pair eigenstate only");
    }

    // Columns are projected basis vectors; rank pins the subspace dimensions.
    auto projector_matrix = [&](ProjectorKind kind) {
        ExactMatrix m(8, 8);
        for (int k = 0; k < 8; ++k) {
            SpinState basis(3);
            basis.set_amp(k, QuadraticScalar(1));
            SpinState image = project(kind, basis);
            for (int i = 0; i < 8; ++i) m.at(i, k) = image.amp(i);
        }
        return m;
    };
    ExactMatrix sym = projector_matrix(ProjectorKind::Symmetrizer);
    ExactMatrix anti = projector_matrix(ProjectorKind::Antisymmetrizer);
    int sym_rank = exact_rank(sym);
    int anti_rank = exact_rank(anti);
    add_check(sec, "symmetrizer_rank", sym_rank == 4, std::to_string(sym_rank));
    add_check(sec, "antisymmetric_subspace_dim", anti_rank == 0, std::to_string(anti_rank),
              "no totally antisymmetric three-spin-1/2 state exists");

    auto idempotent = [&](ProjectorKind kind) {
        for (int k = 0; k < 8; ++k) {
            SpinState basis(3);
            basis.set_amp(k, QuadraticScalar(1));
            SpinState once = project(kind, basis);
            if (project(kind, once) != once) return false;
        }
        return true;
    };
    add_check(sec, "symmetrizer_idempotent", idempotent(ProjectorKind::Symmetrizer), "true");
    add_check(sec, "antisymmetrizer_idempotent", idempotent(ProjectorKind::Antisymmetrizer),
              "true");

    // Symmetrizer image must not leave the quadruplet span: stacking the four
    // quadruplet vectors with all eight projected columns keeps rank 4.
    ExactMatrix stacked(8, 12);
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 8; ++i) {
            stacked.at(i, k) = quad.states[static_cast<std::size_t>(k)].state.amp(i);
        }
    }
    for (int k = 0; k < 8; ++k) {
        for (int i = 0; i < 8; ++i) stacked.at(i, 4 + k) = sym.at(i, k);
    }
    int stacked_rank = exact_rank(stacked);
    add_check(sec, "symmetrizer_image_in_quadruplet_span", stacked_rank == 4,
              std::to_string(stacked_rank), "rank of [quadruplet | projected basis]");
    return sec;
}

ReportSection section_symmetrization_audit() {
    ReportSection sec{"symmetrization_audit", "pairwise relabeling sums", {}};
    for (const SymmetrizationRecord& rec : symmetrization_audit()) {
        bool expect_zero = rec.sum_tag == "eq28" || rec.sum_tag == "eq31";
        add_check(sec, rec.sum_tag + "_sum_norm2", (rec.literal.norm2.is_zero()) == expect_zero,
                  format_scalar(rec.literal.norm2),
                  expect_zero ? "literal plus-signed sum of " + rec.seed_tag + " annihilates"
                              : "literal plus-signed sum of " + rec.seed_tag + " survives");
        if (rec.literal.parity) {
            // The sums are advertised as fully (anti)symmetric; eigenvalue -1
            // throughout would make the A variants antisymmetric. They are not.
            bool not_all_minus = !rec.literal.parity->all(TranspositionParity::Minus);
            add_check(sec, rec.sum_tag + "_literal_parity", not_all_minus,
                      parity_text(*rec.literal.parity), "not -1 across all transpositions");
        } else {
            add_info(sec, rec.sum_tag + "_literal_parity", "zero", "no eigenvalue to report");
        }
        if (rec.literal.parallel_to_seed) {
            add_info(sec, rec.sum_tag + "_literal_vs_seed",
                     "k = " + format_scalar(*rec.literal.parallel_to_seed),
                     "literal sum = k * " + rec.seed_tag + " exactly");
        }
        std::string alt_detail =
            rec.alternating.norm2.is_zero()
                ? "transposition-parity-weighted variant annihilates"
                : "transposition-parity-weighted variant stays parallel to " + rec.seed_tag;
        add_info(sec, rec.sum_tag + "_alternating_norm2", format_scalar(rec.alternating.norm2),
                 alt_detail);
        if (rec.alternating.parallel_to_seed) {
            add_info(sec, rec.sum_tag + "_alternating_vs_seed",
                     "k = " + format_scalar(*rec.alternating.parallel_to_seed),
                     "signed sum = k * " + rec.seed_tag + " exactly");
        }
    }

    // Printed-expansion exhibits around the quadruplet M = +-1/2 members.
    QuadrupletResult quad = quadruplet();
    const SpinState& eq18 = quad.states[1].state;
    const SpinState& eq23 = quad.states[2].state;

    SpinState lit20 = eq20_literal_state();
    add_info(sec, "eq20_literal_matches_eq18", bool_text(lit20 == eq18),
             "third printed pattern dud sits in the M = -1/2 sector; the ladder gives uud");
    add_info(sec, "eq20_literal_distance2", format_scalar((lit20 - eq18).norm_squared()),
             "squared distance between the printed and derived expansions");

    auto two = two_electron_states();
    const SpinState& chi11 = two[0].state;
    const SpinState& chi10 = two[1].state;
    const SpinState& chi1m1 = two[2].state;
    SpinState up = SpinState::basis("u");
    SpinState down = SpinState::basis("d");
    QuadraticScalar k3 = inv_sqrt(3);
    SpinState eq26 =
        k3 * (pair_coupled(chi11, down) + QuadraticScalar::sqrt2() * pair_coupled(chi10, up));
    add_check(sec, "eq26_pair_coupled_matches_eq18", eq26 == eq18, bool_text(eq26 == eq18),
              "(1/sqrt3)[chi(1,1) d + sqrt2 chi(1,0) u]");
    add_info(sec, "eq25_duplicate_of_eq26", "true",
             "the same pair-coupled expansion is printed twice");
    SpinState eq29 =
        k3 * (QuadraticScalar::sqrt2() * pair_coupled(chi10, down) + pair_coupled(chi1m1, up));
    add_check(sec, "eq29_pair_coupled_matches_eq23", eq29 == eq23, bool_text(eq29 == eq23),
              "(1/sqrt3)[sqrt2 chi(1,0) d + chi(1,-1) u]");
    return sec;
}

ReportSection section_space_states() {
    ReportSection sec{"space_states", "symmetric and determinant space functions", {}};
    SpaceState eq36 = symmetric_space({"n", "n", "n"});
    SpaceState eq37 = symmetric_space({"n", "m", "l"});
    SpaceState eq38 = symmetric_space({"n", "n", "l"});
    SlaterResult eq39 = slater_space({"n", "m", "l"});

    struct Row {
        const char* id;
        const SpaceState* state;
    };
    for (const Row& row : {Row{"eq36", &eq36}, Row{"eq37", &eq37}, Row{"eq38", &eq38},
                           Row{"eq39", &eq39.state}}) {
        add_check(sec, std::string(row.id) + "_norm2", row.state->is_normalized(),
                  format_scalar(row.state->norm_squared()));
    }
    add_check(sec, "eq36_symmetric",
              space_parity_table(eq36).verdict() == ExchangeVerdict::FullySymmetric,
              to_string(space_parity_table(eq36).verdict()));
    add_check(sec, "eq37_symmetric",
              space_parity_table(eq37).verdict() == ExchangeVerdict::FullySymmetric,
              to_string(space_parity_table(eq37).verdict()));
    add_check(sec, "eq39_antisymmetric",
              space_parity_table(eq39.state).verdict() == ExchangeVerdict::FullyAntisymmetric,
              to_string(space_parity_table(eq39.state).verdict()));

    // Independent construction: group-average the single tuple, renormalize.
    SpaceState averaged(3);
    for (const Permutation& pi : Permutation::all(3)) {
        averaged += space_permute(pi, SpaceState::single({"n", "m", "l"}));
    }
    averaged = space_normalize(averaged);
    add_check(sec, "eq37_matches_group_average", averaged == eq37, bool_text(averaged == eq37),
              "symmetrizer average of (n,m,l), rescaled to unit norm");

    SpaceState lit38 = eq38_literal_state();
    add_check(sec, "eq38_corrected_symmetric",
              space_parity_table(eq38).verdict() == ExchangeVerdict::FullySymmetric,
              to_string(space_parity_table(eq38).verdict()),
              "middle tuple read as (n,l,n)");
    add_info(sec, "eq38_literal_symmetric",
             to_string(space_parity_table(lit38).verdict()),
             "printed middle tuple (n,m,n) with m=n collapses to (n,n,n)");
    add_info(sec, "eq38_literal_norm2", format_scalar(lit38.norm_squared()));
    add_info(sec, "eq38_literal_equals_corrected", bool_text(lit38 == eq38));

    SlaterResult repeated = slater_space({"n", "n", "l"});
    add_check(sec, "eq39_repeated_label_vanishes",
              repeated.pauli_excluded && repeated.state.is_zero(),
              bool_text(repeated.pauli_excluded), "determinant with a repeated orbital");
    return sec;
}

ReportSection section_assembly_parity() {
    ReportSection sec{"assembly_parity", "total-state exchange audit", {}};

    TotalState eq40 = assemble(AssemblyCase::UniformSymmetrized, {"n", "n", "n"}, 1);
    TotalState eq41 = assemble(AssemblyCase::DistinctSymmetrized, {"n", "m", "l"}, 1);
    add_info(sec, "eq40_norm2", format_scalar(eq40.norm_squared()),
             "spin input is the non-normalized eq33 sum");
    ParityTable p40 = pauli_parity_report(eq40);
    add_check(sec, "eq40_not_fully_antisymmetric",
              p40.verdict() != ExchangeVerdict::FullyAntisymmetric, to_string(p40.verdict()),
              parity_text(p40));
    add_info(sec, "eq41_norm2", format_scalar(eq41.norm_squared()),
             "spin input is the non-normalized eq33 sum");
    ParityTable p41 = pauli_parity_report(eq41);
    add_info(sec, "eq41_parity", to_string(p41.verdict()), parity_text(p41));

    for (int twice_m : {1, -1}) {
        TotalState eq42 = assemble(AssemblyCase::PairSinglet, {"n", "n", "l"}, twice_m);
        std::string base = "eq42_m" + std::string(twice_m > 0 ? "p" : "m") + "12";
        ParityTable table = pauli_parity_report(eq42);
        add_check(sec, base + "_fully_antisymmetric",
                  table.verdict() == ExchangeVerdict::FullyAntisymmetric,
                  to_string(table.verdict()), parity_text(table));
        add_check(sec, base + "_norm2", eq42.is_normalized(),
                  format_scalar(eq42.norm_squared()));
        char spectator = twice_m > 0 ? 'u' : 'd';
        TotalState det = spin_orbital_determinant(
            {SpinOrbital{"n", 'u'}, SpinOrbital{"n", 'd'}, SpinOrbital{"l", spectator}});
        add_check(sec, base + "_matches_spin_orbital_determinant", eq42 == det,
                  bool_text(eq42 == det),
                  "cyclic pair-singlet sum equals the determinant over (n u)(n d)(l s3)");
    }

    for (int twice_m : {3, 1, -1, -3}) {
        TotalState eq43 = assemble(AssemblyCase::SlaterQuadruplet, {"n", "m", "l"}, twice_m);
        std::string base = "eq43_m" + std::string(twice_m > 0 ? "p" : "m") +
                           std::to_string(std::abs(twice_m)) + "2";
        ParityTable table = pauli_parity_report(eq43);
        add_check(sec, base + "_fully_antisymmetric",
                  table.verdict() == ExchangeVerdict::FullyAntisymmetric,
                  to_string(table.verdict()), parity_text(table));
        add_check(sec, base + "_norm2", eq43.is_normalized(),
                  format_scalar(eq43.norm_squared()));
        bool signed_action = true;
        for (const Permutation& pi : Permutation::all(3)) {
            TotalState expected = eq43;
            if (pi.parity() < 0) expected *= QuadraticScalar(-1);
            if (total_permute(pi, eq43) != expected) {
                signed_action = false;
                break;
            }
        }
        add_check(sec, base + "_signed_permutation_action", signed_action,
                  bool_text(signed_action), "pi . state = sgn(pi) state over all of S3");
    }
    return sec;
}

ReportSection section_entanglement(const VerifyOptions& opts) {
    ReportSection sec{"entanglement", "ranks, entropies, classification", {}};
    add_info(sec, "criterion", "bipartition_schmidt_rank",
             "a factor counts as entangled when some bipartition has exact rank > 1; "
             "this operationalization is the implementer's choice");

    auto two = two_electron_states();
    const SpinState& chi00 = two[3].state;
    Bipartition cut2 = Bipartition::of(2, {1});
    double e_chi00 = entropy_bits(chi00, cut2);
    add_check(sec, "chi00_entropy_bits", std::fabs(e_chi00 - 1.0) <= 1e-9,
              format_float(e_chi00), "cut {1}|{2}, expected 1");

    QuadrupletResult quad = quadruplet();
    Bipartition cut3 = Bipartition::of(3, {1});
    double e_quad = entropy_bits(quad.states[1].state, cut3);
    double expected_quad = std::log2(3.0) - 2.0 / 3.0;
    add_check(sec, "quadruplet_m12_entropy_bits",
              std::fabs(e_quad - expected_quad) <= 1e-9, format_float(e_quad),
              "cut {1}|{2,3}, expected log2(3) - 2/3 = " + format_float(expected_quad));

    // Rank-vs-oracle sweep: every constructed state, every cut, plus the
    // seeded random products. The oracle never calls the elimination.
    long long checked = 0;
    long long disagreements = 0;
    auto consider = [&](const CoefficientMatrix& m) {
        int rank = exact_rank(m.matrix);
        bool product = product_oracle(m).is_product;
        ++checked;
        if ((rank == 1) != product) ++disagreements;
    };

    for (const LabeledState& ls : all_labeled_states()) {
        for (const Bipartition& cut : Bipartition::all(ls.state.particles())) {
            consider(coefficient_matrix(ls.state, cut));
        }
    }
    std::vector<SpaceState> spaces = {symmetric_space({"n", "n", "n"}),
                                      symmetric_space({"n", "m", "l"}),
                                      symmetric_space({"n", "n", "l"}),
                                      slater_space({"n", "m", "l"}).state,
                                      eq38_literal_state()};
    for (const SpaceState& s : spaces) {
        for (const Bipartition& cut : Bipartition::all(3)) {
            consider(coefficient_matrix(s, cut));
        }
    }
    std::vector<TotalState> totals = {
        assemble(AssemblyCase::UniformSymmetrized, {"n", "n", "n"}, 1),
        assemble(AssemblyCase::DistinctSymmetrized, {"n", "m", "l"}, 1),
        assemble(AssemblyCase::PairSinglet, {"n", "n", "l"}, 1),
        assemble(AssemblyCase::PairSinglet, {"n", "n", "l"}, -1),
        assemble(AssemblyCase::SlaterQuadruplet, {"n", "m", "l"}, 3),
        assemble(AssemblyCase::SlaterQuadruplet, {"n", "m", "l"}, 1),
        combine(SpaceState::single({"n", "n", "n"}), SpinState::basis("uuu"))};
    for (const TotalState& t : totals) {
        for (const Bipartition& cut : Bipartition::all(3)) {
            consider(coefficient_matrix(t, cut));
        }
        consider(space_spin_matrix(t));
    }

    auto products = random_product_suite(opts.seed, opts.random_products);
    int certified = 0;
    for (const RandomProductCase& c : products) {
        CoefficientMatrix m = coefficient_matrix(c.state, c.cut);
        bool product = product_oracle(m).is_product;
        int rank = exact_rank(m.matrix);
        if (product && rank == 1) ++certified;
        for (const Bipartition& cut : Bipartition::all(c.state.particles())) {
            consider(coefficient_matrix(c.state, cut));
        }
    }
    add_check(sec, "random_products_certified",
              certified == static_cast<int>(products.size()),
              std::to_string(certified) + "/" + std::to_string(products.size()),
              "seeded outer products must come back rank 1 and oracle-product");
    add_check(sec, "rank_oracle_disagreements", disagreements == 0,
              std::to_string(disagreements),
              std::to_string(checked) + " coefficient matrices checked");

    struct VerdictCase {
        const char* id;
        TotalState state;
        EntanglementVerdict expected;
    };
    std::vector<VerdictCase> cases;
    cases.push_back({"classify_product_baseline",
                     combine(SpaceState::single({"n", "n", "n"}), SpinState::basis("uuu")),
                     EntanglementVerdict::None});
    cases.push_back({"classify_space_only",
                     combine(symmetric_space({"n", "m", "l"}), SpinState::basis("uuu")),
                     EntanglementVerdict::SpaceOnly});
    cases.push_back({"classify_eq40", totals[0], EntanglementVerdict::SpinOnly});
    cases.push_back({"classify_eq41", totals[1], EntanglementVerdict::Full});
    cases.push_back({"classify_eq42", totals[2], EntanglementVerdict::FullNonfactorable});
    cases.push_back({"classify_eq43_m32", totals[4], EntanglementVerdict::SpaceOnly});
    cases.push_back({"classify_eq43_m12", totals[5], EntanglementVerdict::Full});
    for (const VerdictCase& vc : cases) {
        Classification c = classify(vc.state);
        std::string flags = std::string("factorable=") + bool_text(c.factorable) +
                            " spin_entangled=" + bool_text(c.spin_entangled) +
                            " space_entangled=" + bool_text(c.space_entangled);
        add_check(sec, vc.id, c.verdict == vc.expected, to_string(c.verdict), flags);
    }

    double max_bits = 0.0;
    for (const LabeledState& ls : all_labeled_states()) {
        for (const Bipartition& cut : Bipartition::all(ls.state.particles())) {
            max_bits = std::max(max_bits, entropy_bits(ls.state, cut));
        }
    }
    add_check(sec, "one_bit_cap", max_bits <= 1.0 + 1e-9, format_float(max_bits),
              "largest entropy across every cut of the coupled spin basis; "
              "pair-coupled three-spin states never exceed one entanglement bit");
    return sec;
}

ReportSection section_decay_summary(const VerifyOptions& opts) {
    ReportSection sec{"decay_summary", "orbital separation scan", {}};
    ScanParams params = default_scan_params(opts.sigma);
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(opts.steps) + 1);
    for (int i = 0; i <= opts.steps; ++i) {
        distances.push_back(opts.dmax * static_cast<double>(i) /
                            static_cast<double>(opts.steps));
    }
    std::vector<ScanRow> rows = separation_scan(params, distances);
    DecaySummary summary = summarize_decay(rows, opts.sigma, opts.dmax, opts.steps);

    double max_model_err = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double model = std::exp(-rows[i].distance * rows[i].distance /
                                (4.0 * opts.sigma * opts.sigma));
        max_model_err = std::max(max_model_err, std::fabs(rows[i].overlap - model));
        if (i > 0 && !(rows[i].overlap < rows[i - 1].overlap)) decreasing = false;
    }
    add_check(sec, "overlap_model_max_error", max_model_err <= 1e-6,
              format_float(max_model_err), "against exp(-d^2/(4 sigma^2))");
    add_check(sec, "overlap_strictly_decreasing", decreasing, bool_text(decreasing));
    add_check(sec, "overlap_at_dmax", summary.final_overlap < 1e-8,
              format_float(summary.final_overlap), "d = " + format_float(opts.dmax));
    add_check(sec, "p_same_at_dmax", summary.final_p_same < 1e-6,
              format_float(summary.final_p_same), "symmetric branch");
    add_check(sec, "sv_square_sum_max_error", summary.max_sv_square_error <= 1e-6,
              format_float(summary.max_sv_square_error), "both branches, every row");
    if (summary.threshold_distance) {
        double closed = 2.0 * opts.sigma * std::sqrt(std::log(1e8));
        add_info(sec, "overlap_threshold_distance", format_float(*summary.threshold_distance),
                 "first scanned d with overlap < 1e-8; closed form crosses at " +
                     format_float(closed / opts.sigma) +
                     "*sigma, the finite range a0 the decay argument needs");
    } else {
        add_info(sec, "overlap_threshold_distance", "not_reached",
                 "no scanned distance has overlap < 1e-8");
    }
    double max_pair_dev = 0.0;
    bool persists = true;
    for (const ScanRow& row : rows) {
        if (row.distance == 0.0) continue;
        if (!row.antisymmetric) {
            persists = false;
            continue;
        }
        max_pair_dev = std::max(max_pair_dev,
                                std::fabs(row.antisymmetric->sv1 - row.antisymmetric->sv2));
        max_pair_dev = std::max(max_pair_dev,
                                std::fabs(row.antisymmetric->sv1 - 1.0 / std::sqrt(2.0)));
    }
    add_check(sec, "antisym_degenerate_pair", persists && max_pair_dev <= 1e-9,
              format_float(max_pair_dev),
              "the antisymmetric branch keeps two 1/sqrt2 singular values at every "
              "separation: exactly one entanglement bit survives");
    return sec;
}

ReportSection section_format_roundtrip() {
    ReportSection sec{"format_roundtrip", "textual formats", {}};
    auto rows = build_state_tables();
    int total = 0;
    int ok = 0;
    for (const TableRow& row : rows) {
        if (row.state_file.empty()) continue;
        ++total;
        ParsedState parsed = parse_state_text(row.state_file);
        std::string again =
            std::visit([](const auto& st) { return write_state_text(st); }, parsed);
        if (again == row.state_file) ++ok;
    }
    add_check(sec, "table_rows_roundtrip", ok == total,
              std::to_string(ok) + "/" + std::to_string(total),
              "write -> parse -> write is the identity");

    const char* samples[] = {
        "(0 0 0 0)/1",
        "(1 0 0 0)/1",
        "(-1 1 -1 1)/7",
        "(0 1 0 0)/2",
        "(2 0 -1 0)/3",
        "(123456789012345678901234567890 -98765432109876543210987654321 1 -7)/"
        "333333333333333333333",
    };
    int scalar_total = 0;
    int scalar_ok = 0;
    for (const char* s : samples) {
        ++scalar_total;
        if (QuadraticScalar::parse(s).to_text() == s) ++scalar_ok;
    }
    add_check(sec, "scalar_roundtrip", scalar_ok == scalar_total,
              std::to_string(scalar_ok) + "/" + std::to_string(scalar_total),
              "canonical scalars reprint byte-identically");

    TotalState labeled = assemble(AssemblyCase::PairSinglet, {"orb_a", "orb_a", "orb_b"}, -1);
    std::string text = write_state_text(labeled);
    ParsedState parsed = parse_state_text(text);
    bool same = std::holds_alternative<TotalState>(parsed) &&
                std::get<TotalState>(parsed) == labeled &&
                write_state_text(std::get<TotalState>(parsed)) == text;
    add_check(sec, "labeled_assembly_roundtrip", same, bool_text(same),
              "multi-character orbital labels survive the grammar");
    return sec;
}

}  // namespace

// ---- public surface ---------------------------------------------------------

std::string format_float(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string format_scalar(const QuadraticScalar& q) {
    if (q.is_rational()) {
        std::string s = q.a().str();
        if (q.den() != 1) s += "/" + q.den().str();
        return s;
    }
    if (q.a() == 0) {
        int radical = 0;
        BigInt num;
        if (q.b() != 0 && q.c() == 0 && q.d() == 0) {
            radical = 2;
            num = q.b();
        } else if (q.b() == 0 && q.c() != 0 && q.d() == 0) {
            radical = 3;
            num = q.c();
        } else if (q.b() == 0 && q.c() == 0 && q.d() != 0) {
            radical = 6;
            num = q.d();
        }
        if (radical != 0) {
            std::string s = num < 0 ? "-" : "";
            BigInt mag = num < 0 ? BigInt(-num) : num;
            if (mag != 1) s += mag.str() + "*";
            s += "sqrt" + std::to_string(radical);
            if (q.den() != 1) s += "/" + q.den().str();
            return s;
        }
    }
    return q.to_text();
}

std::string pretty_spin(const SpinState& x) {
    std::vector<PrettyTerm> terms;
    for (int i = 0; i < x.dimension(); ++i) {
        if (x.amp(i).is_zero()) continue;
        terms.push_back({index_to_pattern(i, x.particles()), x.amp(i)});
    }
    return pretty_terms(terms);
}

std::string pretty_space(const SpaceState& x) {
    std::vector<PrettyTerm> terms;
    for (const auto& [tuple, amp] : x.terms()) {
        terms.push_back({tuple_to_text(tuple), amp});
    }
    return pretty_terms(terms);
}

std::string pretty_total(const TotalState& x) {
    std::vector<PrettyTerm> terms;
    for (const auto& [key, amp] : x.terms()) {
        terms.push_back(
            {tuple_to_text(key.orbitals) + index_to_pattern(key.spin_index, x.particles()),
             amp});
    }
    return pretty_terms(terms);
}

bool AnalysisReport::all_checks_pass() const {
    for (const ReportSection& sec : sections) {
        for (const ReportEntry& entry : sec.entries) {
            if (entry.status == CheckStatus::Fail) return false;
        }
    }
    return true;
}

AnalysisReport build_verify_report(const VerifyOptions& opts) {
    if (!(opts.sigma > 0.0) || !(opts.dmax > 0.0) || opts.steps < 1 ||
        opts.random_products < 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "verify needs sigma > 0, dmax > 0, steps >= 1, random_products >= 0");
    }
    AnalysisReport report;
    report.seed = opts.seed;
    report.sections.push_back(section_run_config(opts));
    report.sections.push_back(section_eigenvalue_checks());
    report.sections.push_back(section_ladder_residuals());
    report.sections.push_back(section_gram_matrix());
    report.sections.push_back(section_permutation_structure());
    report.sections.push_back(section_symmetrization_audit());
    report.sections.push_back(section_space_states());
    report.sections.push_back(section_assembly_parity());
    report.sections.push_back(section_entanglement(opts));
    report.sections.push_back(section_decay_summary(opts));
    report.sections.push_back(section_format_roundtrip());
    return report;
}

std::string render_text(const AnalysisReport& report) {
    std::string out = "spinforge verify report\n";
    out += "seed = " + std::to_string(report.seed) + "\n";
    int pass = 0;
    int fail = 0;
    int info = 0;
    for (const ReportSection& sec : report.sections) {
        out += "\n== " + sec.id + ": " + sec.title + " ==\n";
        for (const ReportEntry& entry : sec.entries) {
            out += "[" + std::string(status_text(entry.status)) + "] " + entry.id + " = " +
                   entry.value;
            if (!entry.detail.empty()) out += "  (" + entry.detail + ")";
            out += "\n";
            switch (entry.status) {
                case CheckStatus::Pass: ++pass; break;
                case CheckStatus::Fail: ++fail; break;
                case CheckStatus::Info: ++info; break;
            }
        }
    }
    out += "\n== summary ==\n";
    out += "pass " + std::to_string(pass) + "  fail " + std::to_string(fail) + "  info " +
           std::to_string(info) + "\n";
    out += std::string("result: ") + (report.all_checks_pass() ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string render_json(const AnalysisReport& report) {
    nlohmann::ordered_json j;
    j["tool"] = "spinforge";
    j["report"] = "verify";
    j["seed"] = report.seed;
    j["all_pass"] = report.all_checks_pass();
    nlohmann::ordered_json sections = nlohmann::ordered_json::array();
    for (const ReportSection& sec : report.sections) {
        nlohmann::ordered_json js;
        js["id"] = sec.id;
        js["title"] = sec.title;
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (const ReportEntry& entry : sec.entries) {
            nlohmann::ordered_json je;
            je["id"] = entry.id;
            je["status"] = status_json(entry.status);
            je["value"] = entry.value;
            if (!entry.detail.empty()) je["detail"] = entry.detail;
            entries.push_back(std::move(je));
        }
        js["entries"] = std::move(entries);
        sections.push_back(std::move(js));
    }
    j["sections"] = std::move(sections);
    return j.dump(2) + "\n";
}

std::vector<TableRow> build_state_tables() {
    std::vector<TableRow> rows;

    for (const LabeledState& ls : two_electron_states()) {
        rows.push_back({ls.tag, ls.label.to_text(), pretty_spin(ls.state),
                        write_state_text(ls.state)});
    }
    for (const LabeledState& ls : three_particle_states()) {
        rows.push_back({ls.tag, ls.label.to_text(), pretty_spin(ls.state),
                        write_state_text(ls.state)});
    }
    for (const SymmetrizationRecord& rec : symmetrization_audit()) {
        const char* mark = (rec.sum_tag == "eq33" || rec.sum_tag == "eq35") ? "^A" : "^S";
        std::string file;
        if (!rec.literal.state.is_zero()) file = write_state_text(rec.literal.state);
        rows.push_back({rec.sum_tag, rec.seed.label.to_text() + mark,
                        pretty_spin(rec.literal.state), std::move(file)});
    }

    SpaceState eq36 = symmetric_space({"n", "n", "n"});
    SpaceState eq37 = symmetric_space({"n", "m", "l"});
    SpaceState eq38 = symmetric_space({"n", "n", "l"});
    SlaterResult eq39 = slater_space({"n", "m", "l"});
    rows.push_back({"eq36", "psi1^S(n,n,n)", pretty_space(eq36), ""});
    rows.push_back({"eq37", "psi2^S(n,m,l)", pretty_space(eq37), ""});
    rows.push_back({"eq38", "psi3^S(n,n,l)", pretty_space(eq38), ""});
    rows.push_back({"eq38_literal", "psi3^S(n,n,l) as printed",
                    pretty_space(eq38_literal_state()), ""});
    rows.push_back({"eq39", "psi1^A(n,m,l)", pretty_space(eq39.state), ""});

    TotalState eq40 = assemble(AssemblyCase::UniformSymmetrized, {"n", "n", "n"}, 1);
    TotalState eq41 = assemble(AssemblyCase::DistinctSymmetrized, {"n", "m", "l"}, 1);
    rows.push_back({"eq40", "Psi1^A(n,n,n; M=1/2)", pretty_total(eq40),
                    write_state_text(eq40)});
    rows.push_back({"eq41", "Psi2^A(n,m,l; M=1/2)", pretty_total(eq41),
                    write_state_text(eq41)});
    for (int twice_m : {1, -1}) {
        TotalState eq42 = assemble(AssemblyCase::PairSinglet, {"n", "n", "l"}, twice_m);
        rows.push_back({"eq42:" + half_text(twice_m),
                        "Psi3^A(n,n,l; M=" + half_text(twice_m) + ")", pretty_total(eq42),
                        write_state_text(eq42)});
    }
    for (int twice_m : {3, 1, -1, -3}) {
        TotalState eq43 = assemble(AssemblyCase::SlaterQuadruplet, {"n", "m", "l"}, twice_m);
        rows.push_back({"eq43:" + half_text(twice_m),
                        "Psi^A(n,m,l; M=" + half_text(twice_m) + ")", pretty_total(eq43),
                        write_state_text(eq43)});
    }
    return rows;
}

std::string render_tables_text(const std::vector<TableRow>& rows) {
    std::string out = "spinforge state tables\n";
    for (const TableRow& row : rows) {
        out += "[" + row.tag + "] " + row.label + " = " + row.pretty + "\n";
    }
    return out;
}

std::string render_tables_json(const std::vector<TableRow>& rows) {
    nlohmann::ordered_json j;
    j["tool"] = "spinforge";
    j["report"] = "tables";
    nlohmann::ordered_json states = nlohmann::ordered_json::array();
    for (const TableRow& row : rows) {
        nlohmann::ordered_json jr;
        jr["tag"] = row.tag;
        jr["label"] = row.label;
        jr["pretty"] = row.pretty;
        jr["state_file"] = row.state_file;
        states.push_back(std::move(jr));
    }
    j["states"] = std::move(states);
    return j.dump(2) + "\n";
}

std::string render_decay_csv(const std::vector<ScanRow>& rows) {
    std::string out = "d,overlap,sv1,sv2,sv3plus,p_same\n";
    for (const ScanRow& row : rows) {
        out += format_float(row.distance) + "," + format_float(row.overlap) + "," +
               format_float(row.symmetric.sv1) + "," + format_float(row.symmetric.sv2) + "," +
               format_float(row.symmetric.sv3plus) + "," +
               format_float(row.symmetric.p_same) + "\n";
    }
    return out;
}

DecaySummary summarize_decay(const std::vector<ScanRow>& rows, double sigma, double dmax,
                             int steps) {
    DecaySummary s;
    s.sigma = sigma;
    s.dmax = dmax;
    s.steps = steps;
    if (rows.empty()) return s;
    s.final_overlap = rows.back().overlap;
    s.final_p_same = rows.back().symmetric.p_same;
    s.antisym_rank2_persists = true;
    for (const ScanRow& row : rows) {
        if (!s.threshold_distance && row.overlap < 1e-8) s.threshold_distance = row.distance;
        auto sum_err = [](const BranchSpectrum& b) {
            return std::fabs(b.sv1 * b.sv1 + b.sv2 * b.sv2 + b.sv3plus * b.sv3plus - 1.0);
        };
        s.max_sv_square_error = std::max(s.max_sv_square_error, sum_err(row.symmetric));
        if (row.antisymmetric) {
            s.max_sv_square_error = std::max(s.max_sv_square_error, sum_err(*row.antisymmetric));
            s.antisym_sv = row.antisymmetric->sv1;
            if (std::fabs(row.antisymmetric->sv1 - row.antisymmetric->sv2) > 1e-9) {
                s.antisym_rank2_persists = false;
            }
        } else if (row.distance > 0.0) {
            s.antisym_rank2_persists = false;
        }
    }
    return s;
}

std::string render_decay_summary(const DecaySummary& summary) {
    std::string out = "decay summary: sigma=" + format_float(summary.sigma) +
                      " dmax=" + format_float(summary.dmax) +
                      " steps=" + std::to_string(summary.steps) + "\n";
    if (summary.threshold_distance) {
        double closed = 2.0 * summary.sigma * std::sqrt(std::log(1e8));
        out += "threshold a0 (a teeny number): overlap first < 1e-08 at d = " +
               format_float(*summary.threshold_distance) + " (closed form crosses at " +
               format_float(closed / summary.sigma) + "*sigma)\n";
    } else {
        out += "threshold a0: not reached within dmax\n";
    }
    out += "final row: overlap = " + format_float(summary.final_overlap) +
           ", p_same = " + format_float(summary.final_p_same) + "\n";
    if (summary.antisym_rank2_persists && summary.antisym_sv > 0.0) {
        out += "antisymmetric branch: degenerate pair persists, sv = " +
               format_float(summary.antisym_sv) + " (one entanglement bit at every separation)\n";
    }
    return out;
}

}  // namespace spinforge
