#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lamq/eval.hpp"
#include "lamq/observe.hpp"
#include "lamq/syntax.hpp"
#include "lamq/term.hpp"

namespace lamq {

/// The bundled definition library source (also installed as prelude.lq).
const std::string& prelude_source();

struct PreludeEntry {
  std::string name;
  Term term;    // resolved, closed
  Level level;  // smallest level whose grammar admits the term
};

const std::vector<PreludeEntry>& prelude_entries();

/// Named prelude term. Accepts "0?" as an alias for ZERO?.
/// Throws std::out_of_range for unknown names.
const Term& builtin(const std::string& name);

/// Environment preloaded with every prelude entry at or below `level`.
Env default_env(Level level);

/// Church numeral \x.\y.x^n y.
Term church(unsigned n);

/// Reads a Church numeral back, normalizing first (call-by-value results
/// carry unreduced numeral bodies such as \x.\y.x (n x y)).
std::optional<unsigned> decode_church(const Term& t);

/// Signed integer as a (sign flag, magnitude) pair with canonical zero:
/// z >= 0 encodes as PAIR T z, z < 0 as PAIR F |z|; (F, 0) never occurs.
Term int_term(long long z);

std::optional<long long> decode_int(const Term& t);

/// Propositional formula over variables v1..vk.
class BoolFormula {
 public:
  static BoolFormula var(unsigned index);  // 1-based
  static BoolFormula negation(BoolFormula f);
  static BoolFormula conjunction(BoolFormula a, BoolFormula b);
  static BoolFormula disjunction(BoolFormula a, BoolFormula b);

  unsigned max_var() const;
  /// Truth value under the assignment encoded in `bits`: bit j-1 of the
  /// v1-major index gives vj (see all_assignments).
  bool eval(unsigned k, unsigned bits) const;
  std::string to_string() const;

  struct NodeData;
  const NodeData& node() const { return *node_; }

 private:
  explicit BoolFormula(std::shared_ptr<const NodeData> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const NodeData> node_;
};

/// The collection of all 2^k truth assignments, each a right-nested PAIR
/// tuple of T/F (a bare boolean for k = 1), enumerated v1-major: the
/// assignment with index i sets vj true iff bit (k - j) of i is set.
Term all_assignments(unsigned k);

/// A checker term: applied to all_assignments(k), it evaluates to a
/// 2^k-member collection of T/F, member i being T iff assignment i
/// satisfies f. Variables project out of the assignment tuple; the
/// connectives compile to IF. Throws std::invalid_argument if f mentions a
/// variable above k or k is 0 or above 20.
Term build_check(const BoolFormula& f, unsigned k);

enum class SatOutcome { Satisfiable, Inconclusive };

/// The satisfiability protocol: evaluates the collection
/// (I, REMOVE-F (CHECK_f all-assignments)) once, then draws up to `trials`
/// observations with per-trial split generators. Observing T reports
/// Satisfiable (never happens for unsatisfiable f: every F world cancels
/// against its ~F partner and only I survives); observing I every time
/// reports Inconclusive, which for satisfiable f has probability at most
/// 2^-trials.
SatOutcome sat_observe(const BoolFormula& f, unsigned k,
                       const EvalConfig& cfg, unsigned trials, Rng& rng);

/// The pre-observation value of the I-inserted pipeline (exposed so its
/// exact distribution can be inspected directly).
Term sat_pipeline_value(const BoolFormula& f, unsigned k,
                        const EvalConfig& cfg);

}  // namespace lamq
