#pragma once

#include <string>
#include <string_view>

#include "wta/automaton.hpp"
#include "wta/transform.hpp"

namespace wta {

/// Reads the `.wta` text format:
///
///     semifield: rational
///     ranks: alpha:0 gamma:1 sigma:2
///     states: q_1 q_2
///     final: q_1
///     transitions:
///     alpha -> q_1 : 1
///     sigma(q_1, q_2) -> q_2 : 3/4
///
/// `#` starts a comment. Nondeterministic automata are accepted. Throws
/// ParseError with line and column for malformed input, unknown names, rank
/// mismatches, duplicate transitions, zero weights and weights outside the
/// semifield's domain.
Wta parse_automaton(std::string_view text);

/// Canonical text: transitions sorted by symbol, sources and target.
/// parse_automaton(print_automaton(m)) == m and printing is idempotent.
std::string print_automaton(const Wta& m);

/// Loads a file; I/O failures raise UsageError.
std::string read_text_file(const std::string& path);
Wta read_automaton(const std::string& path);

/// Weights file with one `state weight` pair per line. States that are not
/// listed get one.
PushWeights parse_push_weights(std::string_view text, const Wta& m);

}  // namespace wta
