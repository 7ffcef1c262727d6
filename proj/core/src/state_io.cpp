#include "spinforge/state_io.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace spinforge {

namespace {

constexpr int kMaxParticles = 12;

bool is_blank_or_comment(std::string_view line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (ch != ' ' && ch != '\t') return false;
    }
    return true;  // blank
}

int parse_header(std::string_view line, std::size_t line_no, bool& is_total) {
    std::string_view spin_prefix = "SPINSTATE v1 n=";
    std::string_view total_prefix = "TOTALSTATE v1 n=";
    std::string_view rest;
    if (line.substr(0, spin_prefix.size()) == spin_prefix) {
        is_total = false;
        rest = line.substr(spin_prefix.size());
    } else if (line.substr(0, total_prefix.size()) == total_prefix) {
        is_total = true;
        rest = line.substr(total_prefix.size());
    } else {
        throw ParseError("expected header 'SPINSTATE v1 n=<count>' or 'TOTALSTATE v1 n=<count>'",
                         line_no, 1);
    }
    if (rest.empty()) {
        throw ParseError("missing particle count in header", line_no, line.size() + 1);
    }
    int n = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
        char ch = rest[k];
        if (ch < '0' || ch > '9' || n > kMaxParticles) {
            throw ParseError("particle count must be an integer in 1.." +
                                 std::to_string(kMaxParticles),
                             line_no, line.size() - rest.size() + k + 1);
        }
        n = n * 10 + (ch - '0');
    }
    if (n < 1 || n > kMaxParticles) {
        throw ParseError("particle count must be in 1.." + std::to_string(kMaxParticles),
                         line_no, line.size() - rest.size() + 1);
    }
    return n;
}

// Splits "scalar basis" at the single space following the scalar token.
std::pair<std::string_view, std::string_view> split_term(std::string_view line,
                                                         std::size_t line_no) {
    std::size_t close = line.find(')');
    std::size_t space = close == std::string_view::npos ? std::string_view::npos
                                                        : line.find(' ', close);
    if (space == std::string_view::npos) {
        // Let the scalar parser produce the precise complaint, then catch the
        // missing-basis case.
        QuadraticScalar::parse(line, line_no, 0);
        throw ParseError("term is missing its basis element", line_no, line.size() + 1);
    }
    return {line.substr(0, space), line.substr(space + 1)};
}

int parse_pattern(std::string_view pattern, int n, std::size_t line_no, std::size_t col0) {
    if (static_cast<int>(pattern.size()) != n) {
        throw ParseError("spin pattern must list exactly " + std::to_string(n) +
                             " particles, got " + std::to_string(pattern.size()),
                         line_no, col0 + 1);
    }
    int index = 0;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        char ch = pattern[k];
        if (ch != 'u' && ch != 'd') {
            throw ParseError(std::string("spin pattern may contain only 'u' and 'd', got '") +
                                 ch + "'",
                             line_no, col0 + k + 1);
        }
        index = index * 2 + (ch == 'd' ? 1 : 0);
    }
    return index;
}

OrbitalTuple parse_tuple(std::string_view text, int n, std::size_t line_no, std::size_t col0) {
    OrbitalTuple tuple;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view label =
            comma == std::string_view::npos ? text.substr(start) : text.substr(start, comma - start);
        if (label.empty()) {
            throw ParseError("empty orbital label", line_no, col0 + start + 1);
        }
        for (std::size_t k = 0; k < label.size(); ++k) {
            char ch = label[k];
            if (ch == ' ' || ch == '\t' || ch == '|' || ch == '#') {
                throw ParseError("orbital label contains a reserved character", line_no,
                                 col0 + start + k + 1);
            }
        }
        tuple.emplace_back(label);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(tuple.size()) != n) {
        throw ParseError("orbital tuple must list exactly " + std::to_string(n) +
                             " labels, got " + std::to_string(tuple.size()),
                         line_no, col0 + 1);
    }
    return tuple;
}

}  // namespace

ParsedState parse_state_text(std::string_view text) {
    std::optional<SpinState> spin;
    std::optional<TotalState> total;
    std::set<int> seen_spin;
    std::set<TotalKey> seen_total;
    int n = 0;
    bool is_total = false;
    bool have_header = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = eol == std::string_view::npos ? text.substr(pos)
                                                              : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank_or_comment(line)) continue;

        if (!have_header) {
            n = parse_header(line, line_no, is_total);
            have_header = true;
            if (is_total) {
                total.emplace(n);
            } else {
                spin.emplace(n);
            }
            continue;
        }

        auto [scalar_text, basis_text] = split_term(line, line_no);
        QuadraticScalar amp = QuadraticScalar::parse(scalar_text, line_no, 0);
        std::size_t basis_col0 = scalar_text.size() + 1;

        if (is_total) {
            std::size_t bar = basis_text.find('|');
            if (bar == std::string_view::npos) {
                throw ParseError("total-state term needs 'orbitals|pattern'", line_no,
                                 basis_col0 + 1);
            }
            OrbitalTuple tuple = parse_tuple(basis_text.substr(0, bar), n, line_no, basis_col0);
            int index =
                parse_pattern(basis_text.substr(bar + 1), n, line_no, basis_col0 + bar + 1);
            TotalKey key{std::move(tuple), index};
            if (!seen_total.insert(key).second) {
                throw Error(ErrorCode::DuplicateTerm,
                            "line " + std::to_string(line_no) + " repeats a basis element");
            }
            total->add_term(std::move(key), amp);
        } else {
            int index = parse_pattern(basis_text, n, line_no, basis_col0);
            if (!seen_spin.insert(index).second) {
                throw Error(ErrorCode::DuplicateTerm,
                            "line " + std::to_string(line_no) + " repeats a basis element");
            }
            spin->set_amp(index, spin->amp(index) + amp);
        }
    }

    if (!have_header) {
        throw ParseError("state text has no header line", line_no, 1);
    }
    if (is_total) {
        if (total->is_zero()) {
            throw Error(ErrorCode::ZeroState, "state file describes the zero vector");
        }
        return ParsedState{std::move(*total)};
    }
    if (spin->is_zero()) {
        throw Error(ErrorCode::ZeroState, "state file describes the zero vector");
    }
    return ParsedState{std::move(*spin)};
}

ParsedState parse_state_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open state file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_state_text(buffer.str());
}

std::string write_state_text(const SpinState& x) {
    std::string text = "SPINSTATE v1 n=" + std::to_string(x.particles()) + "\n";
    for (int idx = 0; idx < x.dimension(); ++idx) {
        if (x.amp(idx).is_zero()) continue;
        text += x.amp(idx).to_text();
        text += " ";
        text += index_to_pattern(idx, x.particles());
        text += "\n";
    }
    return text;
}

std::string write_state_text(const TotalState& x) {
    std::string text = "TOTALSTATE v1 n=" + std::to_string(x.particles()) + "\n";
    for (const auto& [key, amp] : x.terms()) {
        text += amp.to_text();
        text += " ";
        for (std::size_t k = 0; k < key.orbitals.size(); ++k) {
            if (k > 0) text += ",";
            text += key.orbitals[k];
        }
        text += "|";
        text += index_to_pattern(key.spin_index, x.particles());
        text += "\n";
    }
    return text;
}

}  // namespace spinforge
