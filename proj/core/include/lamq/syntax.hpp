#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lamq/term.hpp"

namespace lamq {

/// The three language levels. Lambda admits neither collections nor
/// negative signs, P admits collections, Q admits both.
enum class Level : std::uint8_t { Lambda, P, Q };

const char* level_name(Level level);

/// Syntax error with source position. Also used for level violations
/// (a comma at the Lambda level, a '~' below Q) so they carry a position.
struct ParseError {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
  std::vector<std::string> expected;

  std::string to_string() const;
};

/// Parses one term. ASCII lexicon: '\' introduces an abstraction, '~' a
/// negative sign (on a variable or abstraction only), ',' separates
/// collection members (lowest precedence, right-associative), application
/// is left-associative and binds tighter than the abstraction dot, '#'
/// starts a comment to end of line. Identifiers match
/// [A-Za-z_][A-Za-z0-9_'?-]*. Integer literals expand at parse time:
/// a non-negative literal to the Church numeral, a negative literal to the
/// signed pair encoding. Throws ParseError.
Term parse(const std::string& text, Level level);

/// Renders a term with minimal parentheses such that
/// term_equal(parse(print(t)), t) for every parser-reachable term.
/// Canonical "$n" binders are displayed under fresh readable names.
/// Residual negation wrappers on applications print as "~(...)" (they
/// cannot be re-parsed; they only occur in traces of intermediate states).
std::string print(const Term& t);

/// A parsed definition file: `let <name> = <term>;` entries followed by an
/// optional bare main term. Definition names are unique within a program
/// and may reference earlier definitions only.
struct SourceProgram {
  std::vector<std::pair<std::string, Term>> definitions;  // unresolved bodies
  std::optional<Term> main;
};

SourceProgram parse_program(const std::string& text, Level level);

/// Named closed terms, in definition order. Definitions resolve eagerly:
/// each body has all previously defined names substituted in, so stored
/// terms never contain definition references.
class Env {
 public:
  /// Substitutes every known name into `t`.
  Term resolve(const Term& t) const;

  /// Resolves `body` against the current entries and defines `name`.
  /// Throws ParseError if the resolved body still has free variables.
  void define(const std::string& name, const Term& body);

  /// Defines program entries in order, then returns the resolved main term
  /// (names substituted; remaining free variables are allowed there).
  std::optional<Term> load(const SourceProgram& program);

  const Term* lookup(const std::string& name) const;
  const std::vector<std::pair<std::string, Term>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, Term>> entries_;
  std::map<std::string, std::size_t> index_;
};

/// Smallest level whose grammar admits `t`.
Level min_level(const Term& t);

/// First subterm (if any) that exceeds `level`: a collection above Lambda
/// or a negative sign / negation wrapper below Q.
std::optional<Term> find_level_violation(const Term& t, Level level);

}  // namespace lamq
