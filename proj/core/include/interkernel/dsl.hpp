#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace interkernel {

// Concrete syntax:
//
//   interaction := "0" | action
//                | binop "(" interaction "," interaction ")"
//                | loopop "(" interaction ")"
//   binop  := "strict" | "seq" | "alt" | "par"
//   loopop := "loopStrict" | "loopSeq" | "loopPar"
//   action := ident ("!" | "?") ident
//
// Whitespace is allowed between tokens. Traces are dot-separated actions.

/// Parses without a signature; every identifier is accepted.
Interaction parse_interaction(std::string_view text);

/// Parses and checks every action against `sig` (SignatureError otherwise).
Interaction parse_interaction(std::string_view text, const Signature& sig);

std::string print_interaction(const Interaction& i);

/// The smallest signature covering every action of `i` (in order of first
/// appearance). Falls back to lifeline "a" / message "m" for action-free terms.
Signature infer_signature(const Interaction& i);

/// Throws SignatureError if some action of `i` is foreign to `sig`.
void check_signature(const Interaction& i, const Signature& sig);
void check_signature(const Trace& t, const Signature& sig);

Action parse_action(std::string_view text);
Trace parse_trace(std::string_view text);
Trace parse_trace(std::string_view text, const Signature& sig);
std::string print_trace(const Trace& t);

/// One trace per line; blank lines and lines starting with '#' are skipped,
/// a line reading "eps" is the empty trace.
std::vector<Trace> read_traces(std::istream& in);
std::vector<Trace> read_traces_file(const std::string& path);

/// Empty string for the root.
inline std::string print_position(const Position& p) { return p.to_string(); }

}  // namespace interkernel
