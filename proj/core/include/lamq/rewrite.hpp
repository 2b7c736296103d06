#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamq/term.hpp"

namespace lamq {

/// Address of a subterm: child indices from the root. For applications,
/// 0 is the operator and 1 the operand; abstractions and negation wrappers
/// have the single child 0; collection members are addressed by position.
struct RedexPath {
  std::vector<std::size_t> indices;
  std::string to_string() const;  // "/0/1"; the root is "/"
};

/// One reduction step, as reported by the stepping functions and consumed
/// by the CLI's --trace output: `<rule> @ <path>: <printed term>`.
struct Step {
  Term term;        // whole term after the step
  std::string rule;  // "gamma", "beta", "sign"
  RedexPath path;
};

/// XOR on polarity: two negations cancel.
Sign sign_concat(Sign a, Sign b);

/// Applies a sign to a term. Positive is the identity. Negative flips the
/// sign of a variable or abstraction, distributes over collection members,
/// unwraps an existing negation wrapper, and wraps an application (the only
/// case the surface grammar cannot sign directly).
Term scale(Sign s, const Term& t);

/// Capture-avoiding substitution of `replacement` for free `var` in `body`,
/// covering all constructors: signed variables pick up the occurrence's
/// sign via scale, collections substitute memberwise, and clashing binders
/// are renamed to a fresh name derived deterministically from the term.
Term substitute(const Term& body, const Term& replacement,
                const std::string& var);

enum class GammaStrategy { LeftmostInnermost, RightmostOutermost };

/// Whether `t` contains an application one of whose sides has cardinality
/// greater than one. `inside_binders` false restricts the scan to redexes
/// not under an abstraction (the evaluator's notion of a finished value).
bool has_gamma_redex(const Term& t, bool inside_binders = true);

/// Expands one gamma-redex: the application of two (possibly singleton)
/// member lists becomes the collection of all pairwise applications,
/// operator-major. Returns nothing if no redex exists. The default
/// strategy is leftmost-innermost; the alternative exists so confluence
/// can be exercised from both ends.
std::optional<std::pair<Term, RedexPath>> gamma_step(
    const Term& t, GammaStrategy strategy = GammaStrategy::LeftmostInnermost);

/// Full gamma-normal form: no application has a collection side, anywhere,
/// including under binders. Structural recursion: normalize children, then
/// expand the application product.
Term gamma_normalize(const Term& t);

enum class BetaStrategy { LeftmostOutermost, RightmostInnermost };

/// One beta-gamma step: contracts a beta-redex (S\x.M)N to
/// scale(S, M[N/x]) and gamma-normalizes the whole resulting term.
/// Requires the input to be in gamma-normal form (so the contracted
/// operand is never a collection); throws std::logic_error otherwise.
/// Returns nothing when no beta-redex exists.
std::optional<std::pair<Term, RedexPath>> beta_gamma_step(
    const Term& t, BetaStrategy strategy = BetaStrategy::LeftmostOutermost);

/// Iterates beta_gamma_step from gamma_normalize(t) until no redex remains,
/// spending at most `max_steps` contractions. Returns the normal form, or
/// nullopt if the budget runs out.
std::optional<Term> beta_gamma_normalize(
    const Term& t, std::size_t max_steps,
    BetaStrategy strategy = BetaStrategy::LeftmostOutermost);

}  // namespace lamq
