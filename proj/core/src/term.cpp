#include "lamq/term.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>

namespace lamq {

struct Term::Node {
  TermKind kind;
  Sign sign = Sign::Positive;
  std::string name;           // variable name or binder
  Term child0;                // body / fn / inner
  Term child1;                // arg
  std::vector<Term> members;  // collection
};

Term Term::variable(std::string name, Sign sign) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Variable;
  n->sign = sign;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::abstraction(std::string binder, Term body, Sign sign) {
  if (!body.valid()) throw std::invalid_argument("abstraction: empty body");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abstraction;
  n->sign = sign;
  n->name = std::move(binder);
  n->child0 = std::move(body);
  return Term(std::move(n));
}

Term Term::application(Term fn, Term arg) {
  if (!fn.valid() || !arg.valid())
    throw std::invalid_argument("application: empty child");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Application;
  n->child0 = std::move(fn);
  n->child1 = std::move(arg);
  return Term(std::move(n));
}

Term Term::negated(Term inner) {
  if (!inner.valid()) throw std::invalid_argument("negated: empty inner");
  // The wrapper never nests and never wraps a collection; scale() maintains
  // this, and the raw constructor enforces it.
  if (inner.is(TermKind::Negated))
    throw std::invalid_argument("negated: wrapper may not nest");
  if (inner.is(TermKind::Collection))
    throw std::invalid_argument("negated: wrapper may not hold a collection");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Negated;
  n->child0 = std::move(inner);
  return Term(std::move(n));
}

TermKind Term::kind() const {
  assert(node_);
  return node_->kind;
}

Sign Term::sign() const {
  assert(node_ && (node_->kind == TermKind::Variable ||
                   node_->kind == TermKind::Abstraction));
  return node_->sign;
}

const std::string& Term::name() const {
  assert(node_ && node_->kind == TermKind::Variable);
  return node_->name;
}

const std::string& Term::binder() const {
  assert(node_ && node_->kind == TermKind::Abstraction);
  return node_->name;
}

const Term& Term::body() const {
  assert(node_ && node_->kind == TermKind::Abstraction);
  return node_->child0;
}

const Term& Term::fn() const {
  assert(node_ && node_->kind == TermKind::Application);
  return node_->child0;
}

const Term& Term::arg() const {
  assert(node_ && node_->kind == TermKind::Application);
  return node_->child1;
}

const std::vector<Term>& Term::members() const {
  assert(node_ && node_->kind == TermKind::Collection);
  return node_->members;
}

const Term& Term::inner() const {
  assert(node_ && node_->kind == TermKind::Negated);
  return node_->child0;
}

Term mk_collection(std::vector<Term> members) {
  if (members.empty())
    throw std::invalid_argument("mk_collection: empty member list");
  std::vector<Term> flat;
  flat.reserve(members.size());
  for (auto& m : members) {
    if (!m.valid()) throw std::invalid_argument("mk_collection: empty member");
    if (m.is(TermKind::Collection)) {
      // Members of a constructed collection are themselves flat, so one
      // level of splicing suffices.
      for (const auto& inner : m.members()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(m));
    }
  }
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Term::Node>();
  n->kind = TermKind::Collection;
  n->members = std::move(flat);
  return Term(std::move(n));
}

std::size_t cardinality(const Term& t) {
  return t.is(TermKind::Collection) ? t.members().size() : 1;
}

std::vector<Term> flat_members(const Term& t) {
  if (t.is(TermKind::Collection)) return t.members();
  return {t};
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Variable:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end())
        out.insert(t.name());
      return;
    case TermKind::Abstraction:
      bound.push_back(t.binder());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case TermKind::Application:
      collect_free(t.fn(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case TermKind::Collection:
      for (const auto& m : t.members()) collect_free(m, bound, out);
      return;
    case TermKind::Negated:
      collect_free(t.inner(), bound, out);
      return;
  }
}

std::size_t count_free(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::Variable:
      return t.name() == name ? 1 : 0;
    case TermKind::Abstraction:
      return t.binder() == name ? 0 : count_free(t.body(), name);
    case TermKind::Application:
      return count_free(t.fn(), name) + count_free(t.arg(), name);
    case TermKind::Collection: {
      std::size_t n = 0;
      for (const auto& m : t.members()) n += count_free(m, name);
      return n;
    }
    case TermKind::Negated:
      return count_free(t.inner(), name);
  }
  return 0;
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

std::size_t free_occurrences(const Term& t, const std::string& name) {
  return count_free(t, name);
}

std::optional<Term> opposite(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return Term::variable(t.name(), t.sign() == Sign::Positive
                                          ? Sign::Negative
                                          : Sign::Positive);
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), t.body(),
                               t.sign() == Sign::Positive ? Sign::Negative
                                                          : Sign::Positive);
    default:
      return std::nullopt;
  }
}

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  const auto ka = static_cast<int>(a.kind());
  const auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Variable: {
      if (a.sign() != b.sign()) return a.sign() == Sign::Positive ? -1 : 1;
      const int c = a.name().compare(b.name());
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case TermKind::Abstraction: {
      if (a.sign() != b.sign()) return a.sign() == Sign::Positive ? -1 : 1;
      const int c = a.binder().compare(b.binder());
      if (c != 0) return c < 0 ? -1 : 1;
      return compare(a.body(), b.body());
    }
    case TermKind::Application: {
      const int c = compare(a.fn(), b.fn());
      if (c != 0) return c;
      return compare(a.arg(), b.arg());
    }
    case TermKind::Collection: {
      const auto& ma = a.members();
      const auto& mb = b.members();
      if (ma.size() != mb.size()) return ma.size() < mb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ma.size(); ++i) {
        const int c = compare(ma[i], mb[i]);
        if (c != 0) return c;
      }
      return 0;
    }
    case TermKind::Negated:
      return compare(a.inner(), b.inner());
  }
  return 0;
}

namespace {

// Binders are renamed to "$<level>" where level counts enclosing binders;
// '$' is outside the identifier alphabet, so canonical names can never
// collide with source-level free variables.
Term canon(const Term& t, std::size_t depth,
           std::map<std::string, std::size_t>& env) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = env.find(t.name());
      if (it == env.end()) return t;
      return Term::variable("$" + std::to_string(it->second), t.sign());
    }
    case TermKind::Abstraction: {
      auto prev = env.find(t.binder());
      std::optional<std::size_t> saved;
      if (prev != env.end()) saved = prev->second;
      env[t.binder()] = depth;
      Term body = canon(t.body(), depth + 1, env);
      if (saved)
        env[t.binder()] = *saved;
      else
        env.erase(t.binder());
      return Term::abstraction("$" + std::to_string(depth), std::move(body),
                               t.sign());
    }
    case TermKind::Application:
      return Term::application(canon(t.fn(), depth, env),
                               canon(t.arg(), depth, env));
    case TermKind::Collection: {
      std::vector<Term> ms;
      ms.reserve(t.members().size());
      for (const auto& m : t.members()) ms.push_back(canon(m, depth, env));
      std::sort(ms.begin(), ms.end(), TermOrder{});
      return mk_collection(std::move(ms));
    }
    case TermKind::Negated:
      return Term::negated(canon(t.inner(), depth, env));
  }
  return t;
}

}  // namespace

CanonicalTerm alpha_canonical(const Term& t) {
  std::map<std::string, std::size_t> env;
  return CanonicalTerm(canon(t, 0, env));
}

bool operator==(const CanonicalTerm& a, const CanonicalTerm& b) {
  return compare(a.get(), b.get()) == 0;
}

bool operator<(const CanonicalTerm& a, const CanonicalTerm& b) {
  return compare(a.get(), b.get()) < 0;
}

bool term_equal(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  return alpha_canonical(a) == alpha_canonical(b);
}

}  // namespace lamq
