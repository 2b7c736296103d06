#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lamq/eval.hpp"
#include "lamq/rational.hpp"
#include "lamq/syntax.hpp"
#include "lamq/term.hpp"

namespace lamq {

/// Deterministic 64-bit generator (splitmix64): identical seeds give
/// identical draw sequences on every platform. state advances by the
/// golden-gamma constant and each output is the mixed state. Bounded draws
/// use rejection sampling, so uniform_below(n) is exactly uniform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  /// Uniform draw from 0..n-1 (n >= 1), unbiased via rejection.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Independent stream for batch draw `index`, derived from the original
  /// seed (not the current state): split(i) seeds a fresh generator with
  /// mix(seed + (i+1) * golden-gamma). Batch results are therefore
  /// independent of the order the batch runs in.
  Rng split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// How opposite members cancel inside delta. Pairwise removes
/// min(count, opposite count) members from each side of a class, so
/// (x, x, ~x) -> (x). Literal removes every member whose opposite occurs
/// anywhere in the collection, so (x, x, ~x) cancels to empty.
enum class DeltaMode { Pairwise, Literal };

/// Observation failed: a collection cancelled to empty.
struct ObservationFailure {
  Term offending;
  std::string message() const;
};

/// The sign-erasing pre-observation pass: at each collection node, first
/// cancels opposite members pairwise on the raw members, then recurses
/// into the survivors; signs are stripped everywhere. Throws
/// ObservationFailure if any collection cancels to empty.
Term delta(const Term& t, DeltaMode mode = DeltaMode::Pairwise);

/// Samples one plain lambda term from an unsigned term: every collection
/// node, recursively and under binders, is replaced by one member drawn
/// uniformly with multiplicity. Total on sign-free input.
Term theta_sample(const Term& t, Rng& rng);

/// Signed observation: theta_sample(delta(t)). Throws ObservationFailure.
Term xi_sample(const Term& t, Rng& rng);

/// Finite map from canonical lambda terms to exact probabilities summing
/// to one.
class Distribution {
 public:
  using Map = std::map<CanonicalTerm, Rational>;

  Distribution() = default;
  static Distribution point(const Term& t);

  void add(const Term& t, const Rational& p);  // drops zero weights
  const Map& weights() const { return map_; }
  Rational probability_of(const Term& t) const;
  Rational total() const;

  bool operator==(const Distribution& other) const { return map_ == other.map_; }
  bool operator!=(const Distribution& other) const { return !(*this == other); }

  /// One line per support point: `<p>/<q> <printed canonical term>`,
  /// sorted by the canonical term order.
  std::string serialize() const;

 private:
  Map map_;
};

/// Distribution over the alpha-classes of the top-level members of `t`
/// (whole members, not recursively observed); a point mass for
/// non-collections. Meant for unsigned terms; apply delta first otherwise.
Distribution member_distribution(const Term& t);

/// The exact law of xi_sample(t, .): delta first, then compositionally --
/// variables are point masses, an abstraction maps its body's law under
/// the binder, an application is the independent product of its sides'
/// laws, and a collection is the uniform mixture of its members' laws.
/// Throws ObservationFailure when delta does.
Distribution exact_distribution(const Term& t,
                                DeltaMode mode = DeltaMode::Pairwise);

/// Equality of the two probability maps over canonical terms.
bool statistically_indistinguishable(const Distribution& a,
                                     const Distribution& b);

/// The whole pipeline: evaluate, then observe the value (identity at the
/// lambda level, theta at P, xi at Q). Throws EvalError an
/// ObservationFailure as encountered.
Term observe_program(const Term& t, const EvalConfig& cfg, Rng& rng);

}  // namespace lamq
