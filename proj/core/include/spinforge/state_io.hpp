#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "spinforge/assembly.hpp"

namespace spinforge {

// State-file grammar, one construct per line:
//
//   # comment                      (ignored, as are blank lines)
//   SPINSTATE v1 n=<particles>     (or TOTALSTATE v1 n=<particles>)
//   (a b c d)/den ud...            (spin term: scalar, one space, pattern)
//   (a b c d)/den o1,o2,o3|ud...   (total term: orbital tuple '|' pattern)
//
// Terms may come in any order but may not repeat a basis element
// (DuplicateTerm); a file describing the zero vector is rejected (ZeroState).
// Writers emit terms sorted by basis element, so write -> parse -> write is
// the identity on the text.

using ParsedState = std::variant<SpinState, TotalState>;

ParsedState parse_state_text(std::string_view text);
ParsedState parse_state_file(const std::filesystem::path& path);

std::string write_state_text(const SpinState& x);
std::string write_state_text(const TotalState& x);

}  // namespace spinforge
