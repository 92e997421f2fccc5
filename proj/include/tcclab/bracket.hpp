#pragma once

#include <string>
#include <string_view>

#include "tcclab/syntax.hpp"

namespace tcclab {

// Labeled bracket text (.sbt). Grammar:
//
//   SO       := ATOM | '[' ('_' LABEL)? SO SO ']'
//   ATOM     := COPY | WORD FEATURES?
//   COPY     := '~' SO FEATURES? '~'        (lower copy; chains to the
//                                            leftmost structurally equal
//                                            earlier occurrence)
//   FEATURES := '{' ('+'|'-') NAME (',' ('+'|'-') NAME)* '}'
//
// '#' starts a comment to end of line. A WORD equal to a category-inventory
// symbol (N, V, ..., Det) denotes a covert head of that category with empty
// phon; any other WORD is an overt item with that phon and no category.

/// Parses one structure. Errors carry line/column.
SoPtr parse_bracket(std::string_view text);

/// Parses the single structure in a .sbt file.
SoPtr parse_bracket_file(const std::string& path);

/// Canonical form: single spaces, labels as `_X` right after `[`, features
/// sorted by name, lower copies as `~...~`. parse(print(so)) is structurally
/// equal to so for every representable term.
std::string print_bracket(const SoPtr& so);

}  // namespace tcclab
