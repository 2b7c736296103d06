#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "lamq/rewrite.hpp"
#include "lamq/syntax.hpp"
#include "lamq/term.hpp"

namespace lamq {

struct EvalConfig {
  std::uint64_t fuel = 1'000'000;  // maximum beta contractions
  Level level = Level::Q;
};

enum class EvalErrorKind { FuelExhausted, Stuck, LevelViolation };

struct EvalError {
  EvalErrorKind kind;
  Term offending;
  std::string message() const;
};

/// A value: a signed variable, a signed abstraction, or a collection of
/// values. Call-by-value never reduces under a binder, so abstraction
/// bodies are not inspected; outside binders a value contains no redexes.
bool is_value(const Term& t);

/// Big-step call-by-value evaluation. Applications evaluate both sides to
/// values, then:
///   - a collection operator gamma-expands against the operand's members
///     and the pairwise applications evaluate independently;
///   - an abstraction operator applied to a collection operand distributes
///     the members across the body when the parameter occurs free at least
///     twice (each member then sees a consistent copy), and receives the
///     collection as a single value when the parameter occurs at most once
///     (so data passes through, and an unused parameter drops its whole
///     argument);
///   - an abstraction operator applied to a non-collection value
///     beta-contracts, spending one unit of fuel.
/// Collections evaluate memberwise; the result flattens.
/// Throws EvalError: FuelExhausted when contractions exceed cfg.fuel,
/// Stuck when a variable heads an application, LevelViolation when the
/// input uses features above cfg.level.
Term evaluate(const Term& t, const EvalConfig& cfg);

/// One step of the deterministic small-step relation whose iteration
/// agrees with evaluate(): locates the leftmost application whose sides
/// are both values and either gamma-expands it ("gamma"), beta-contracts
/// it ("beta"), or resolves a pending negation on a value ("sign").
/// Returns nothing when the term is a value. Throws EvalError{Stuck} on a
/// variable-headed application.
std::optional<Step> cbv_step(const Term& t);

/// Iterates cbv_step to a value, reporting each step to `on_step` (used by
/// the CLI's --trace). Fuel counts "beta" steps, as in evaluate().
Term evaluate_traced(const Term& t, const EvalConfig& cfg,
                     const std::function<void(const Step&)>& on_step);

}  // namespace lamq
