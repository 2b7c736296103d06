#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lamq {

/// Binary phase attached to variables and abstractions. Concatenation is
/// XOR on polarity (see rewrite.hpp: sign_concat).
enum class Sign : std::uint8_t { Positive, Negative };

enum class TermKind : std::uint8_t {
  Variable,     // Sx
  Abstraction,  // S\x.M
  Application,  // M N
  Collection,   // M1, ..., Mk   (k >= 2, members never collections)
  Negated,      // internal wrapper produced by scaling an application;
                // never produced by the parser, eliminated where possible
};

/// Immutable term of the signed collection calculus. Plain lambda terms and
/// unsigned collection terms are the restrictions with no collections /
/// all-positive signs. Handles share structure; copying is cheap.
class Term {
 public:
  Term() = default;  // empty handle; only valid as a placeholder

  static Term variable(std::string name, Sign sign = Sign::Positive);
  static Term abstraction(std::string binder, Term body,
                          Sign sign = Sign::Positive);
  static Term application(Term fn, Term arg);
  /// Raw negation wrapper. Most callers want rewrite.hpp's scale(), which
  /// pushes negation into variables, abstractions and collections and only
  /// wraps applications.
  static Term negated(Term inner);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  Sign sign() const;                      // Variable / Abstraction
  const std::string& name() const;        // Variable
  const std::string& binder() const;      // Abstraction
  const Term& body() const;               // Abstraction
  const Term& fn() const;                 // Application
  const Term& arg() const;                // Application
  const std::vector<Term>& members() const;  // Collection
  const Term& inner() const;              // Negated

  /// Physical identity of the underlying node (not structural equality).
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend Term mk_collection(std::vector<Term> members);
};

/// Builds a collection from `members`, flattening nested collections one
/// level (applied recursively, so the result's members are never
/// collections). A single member after flattening is returned as itself.
/// Throws std::invalid_argument on an empty member list.
Term mk_collection(std::vector<Term> members);

/// Number of members of the maximal flattening; 1 for non-collections.
std::size_t cardinality(const Term& t);

/// The members a collection flattens to: the member vector for collections,
/// else a single-element view of the term itself.
std::vector<Term> flat_members(const Term& t);

/// Free variables, sign-transparent, union over collection members.
std::set<std::string> free_vars(const Term& t);

/// Number of free occurrences of `name` in `t`.
std::size_t free_occurrences(const Term& t, const std::string& name);

/// Same term with flipped sign for signed variables and abstractions;
/// nullopt for applications, collections and negation wrappers, which have
/// no opposite.
std::optional<Term> opposite(const Term& t);

/// A term in canonical form: binders renamed to a deterministic
/// depth-indexed scheme and collection multisets sorted by the fixed total
/// order on terms. Two terms have equal canonical forms iff they are
/// alpha-equivalent modulo collection order and nesting.
class CanonicalTerm {
 public:
  explicit CanonicalTerm(Term canonical) : term_(std::move(canonical)) {}
  const Term& get() const { return term_; }

  friend bool operator==(const CanonicalTerm& a, const CanonicalTerm& b);
  friend bool operator!=(const CanonicalTerm& a, const CanonicalTerm& b) {
    return !(a == b);
  }
  friend bool operator<(const CanonicalTerm& a, const CanonicalTerm& b);

 private:
  Term term_;
};

CanonicalTerm alpha_canonical(const Term& t);

/// Fixed total order: constructor tag, then sign, then name, then children
/// lexicographically. Any fixed order works; determinism is what matters.
int compare(const Term& a, const Term& b);

/// Alpha-equivalence modulo collection order/nesting:
/// alpha_canonical(a) == alpha_canonical(b).
bool term_equal(const Term& a, const Term& b);

struct TermOrder {
  bool operator()(const Term& a, const Term& b) const {
    return compare(a, b) < 0;
  }
};

}  // namespace lamq
