#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/universe.hpp"

namespace implic {

/// Syntax or name-resolution failure, carrying a 1-based position within
/// the offending text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a single constraint line against a known universe.
///
/// Grammar (whitespace-insensitive inside terms):
///   constraint := ci | fd | mvd | diff
///   ci         := "I(" set ";" set ["|" set] ")" | "H(" set ["|" set] ")"
///   fd         := "FD:" set "->" set
///   mvd        := "MVD:" set "->>" set ["|" set]
///   diff       := "D:" "{" set "}" ("+" "{" set "}")*
///   set        := "0" | ident ("," ident)*
///
/// FD syntax yields a conditional; MVD syntax yields the saturated CI
/// (Y;Z|X) and is rejected unless X u Y u Z covers the universe. The
/// convenience form "MVD: X ->> Y" completes Z as the remaining variables.
Constraint parse_constraint(const std::string& text, const UniversePtr& universe);

/// Parses an implication file: a "vars:" header, antecedent lines, a "=>"
/// line, then exactly one consequent. '#' starts a comment.
Implication parse_implication(const std::string& file_contents);

/// Parses just the "vars:" header of an implication file.
UniversePtr parse_universe_header(const std::string& line);

}  // namespace implic
