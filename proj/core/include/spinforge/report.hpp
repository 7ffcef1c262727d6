#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinforge/entanglement.hpp"
#include "spinforge/grid.hpp"
#include "spinforge/multiplets.hpp"

namespace spinforge {

// Pretty forms: "(2 uud - udu - duu)/sqrt6" when the amplitudes are a common
// integer multiple of 1/sqrtN for N in {1,2,3,6}, per-term exact scalars
// otherwise, "0" for the zero vector.
std::string pretty_spin(const SpinState& x);
std::string pretty_space(const SpaceState& x);
std::string pretty_total(const TotalState& x);

// Compact exact-scalar rendering for report values: "4/3", "sqrt3", "2*sqrt2/3",
// falling back to the canonical "(a b c d)/den".
std::string format_scalar(const QuadraticScalar& q);

// Fixed float rendering used by every numeric surface: %.9g.
std::string format_float(double value);

enum class CheckStatus { Pass, Fail, Info };

struct ReportEntry {
    std::string id;
    CheckStatus status = CheckStatus::Info;
    std::string value;
    std::string detail;
};

struct ReportSection {
    std::string id;
    std::string title;
    std::vector<ReportEntry> entries;
};

struct AnalysisReport {
    unsigned seed = 0;
    std::vector<ReportSection> sections;

    bool all_checks_pass() const;
    // 0 when every pass/fail check passed, 1 otherwise.
    int exit_code() const { return all_checks_pass() ? 0 : 1; }
};

struct VerifyOptions {
    unsigned seed = 42;
    int random_products = 20;
    double sigma = 1.0;
    double dmax = 12.0;
    int steps = 12;
};

AnalysisReport build_verify_report(const VerifyOptions& opts);

std::string render_text(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report);

// One derived state per row. state_file is reparseable state-file text; empty
// for rows the file format does not cover (space-only and zero states).
struct TableRow {
    std::string tag;
    std::string label;
    std::string pretty;
    std::string state_file;
};

std::vector<TableRow> build_state_tables();
std::string render_tables_text(const std::vector<TableRow>& rows);
std::string render_tables_json(const std::vector<TableRow>& rows);

// "d,overlap,sv1,sv2,sv3plus,p_same" header plus one row per scanned
// distance; the singular-value columns carry the symmetric branch.
std::string render_decay_csv(const std::vector<ScanRow>& rows);

struct DecaySummary {
    double sigma = 0.0;
    double dmax = 0.0;
    int steps = 0;
    std::optional<double> threshold_distance;  // first scanned d with overlap < 1e-8
    double final_overlap = 0.0;
    double final_p_same = 0.0;
    double max_sv_square_error = 0.0;  // worst |1 - sum of squared svs|, both branches
    bool antisym_rank2_persists = false;
    double antisym_sv = 0.0;
};

DecaySummary summarize_decay(const std::vector<ScanRow>& rows, double sigma, double dmax,
                             int steps);
std::string render_decay_summary(const DecaySummary& summary);

}  // namespace spinforge
