#include "lamq/eval.hpp"

#include <sstream>

namespace lamq {

std::string EvalError::message() const {
  std::ostringstream os;
  switch (kind) {
    case EvalErrorKind::FuelExhausted:
      os << "fuel exhausted while evaluating: ";
      break;
    case EvalErrorKind::Stuck:
      os << "stuck: free variable in operator position: ";
      break;
    case EvalErrorKind::LevelViolation:
      os << "term uses features above the requested level: ";
      break;
  }
  os << print(offending);
  return os.str();
}

bool is_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Abstraction:
      return true;
    case TermKind::Collection:
      for (const auto& m : t.members())
        if (!is_value(m)) return false;
      return true;
    case TermKind::Application:
    case TermKind::Negated:
      return false;
  }
  return false;
}

namespace {

struct EvalState {
  std::uint64_t remaining;
  const Term* root;
};

// Whether applying this operator to a collection distributes the members
// across the body. A parameter read at least twice must see one consistent
// member per world; a parameter used at most once takes the collection as
// a single value.
bool distributes(const Term& fn, const Term& operand) {
  return fn.is(TermKind::Abstraction) && operand.is(TermKind::Collection) &&
         free_occurrences(fn.body(), fn.binder()) >= 2;
}

// Iterative on the beta-contraction chain so long-running evaluations do
// not grow the native stack; structural recursion only where the term
// nests (operands, collection members, pending negations).
Term eval_rec(Term t, EvalState& s) {
  for (;;) {
    switch (t.kind()) {
      case TermKind::Variable:
      case TermKind::Abstraction:
        return t;
      case TermKind::Negated:
        return scale(Sign::Negative, eval_rec(t.inner(), s));
      case TermKind::Collection: {
        std::vector<Term> ms;
        ms.reserve(t.members().size());
        for (const auto& m : t.members()) ms.push_back(eval_rec(m, s));
        return mk_collection(std::move(ms));
      }
      case TermKind::Application: {
        Term vfn = eval_rec(t.fn(), s);
        Term varg = eval_rec(t.arg(), s);
        if (vfn.is(TermKind::Collection) || distributes(vfn, varg)) {
          const auto fns = flat_members(vfn);
          const auto args = flat_members(varg);
          std::vector<Term> out;
          out.reserve(fns.size() * args.size());
          for (const auto& f : fns)
            for (const auto& a : args)
              out.push_back(eval_rec(Term::application(f, a), s));
          return mk_collection(std::move(out));
        }
        if (vfn.is(TermKind::Abstraction)) {
          if (s.remaining == 0)
            throw EvalError{EvalErrorKind::FuelExhausted, *s.root};
          --s.remaining;
          t = scale(vfn.sign(), substitute(vfn.body(), varg, vfn.binder()));
          continue;
        }
        throw EvalError{EvalErrorKind::Stuck, Term::application(vfn, varg)};
      }
    }
  }
}

}  // namespace

Term evaluate(const Term& t, const EvalConfig& cfg) {
  if (auto v = find_level_violation(t, cfg.level))
    throw EvalError{EvalErrorKind::LevelViolation, *v};
  EvalState s{cfg.fuel, &t};
  return eval_rec(t, s);
}

namespace {

// Rebuilds `t` with the subterm at `path` replaced by `sub`, preserving
// everything else.
Term replace_at(const Term& t, const std::vector<std::size_t>& path,
                std::size_t depth, const Term& sub) {
  if (depth == path.size()) return sub;
  const std::size_t i = path[depth];
  switch (t.kind()) {
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(),
                               replace_at(t.body(), path, depth + 1, sub),
                               t.sign());
    case TermKind::Negated: {
      Term inner = replace_at(t.inner(), path, depth + 1, sub);
      return scale(Sign::Negative, inner);
    }
    case TermKind::Application: {
      if (i == 0)
        return Term::application(replace_at(t.fn(), path, depth + 1, sub),
                                 t.arg());
      return Term::application(t.fn(),
                               replace_at(t.arg(), path, depth + 1, sub));
    }
    case TermKind::Collection: {
      std::vector<Term> ms = t.members();
      ms[i] = replace_at(ms[i], path, depth + 1, sub);
      return mk_collection(std::move(ms));
    }
    default:
      return sub;
  }
}

struct FoundStep {
  Term local;  // replacement for the subterm at `path`
  std::string rule;
  std::vector<std::size_t> path;
};

std::optional<FoundStep> find_cbv_step(const Term& t,
                                       std::vector<std::size_t>& path) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Abstraction:
      return std::nullopt;
    case TermKind::Negated: {
      if (!is_value(t.inner())) {
        path.push_back(0);
        auto r = find_cbv_step(t.inner(), path);
        if (!r) path.pop_back();
        return r;
      }
      return FoundStep{scale(Sign::Negative, t.inner()), "sign", path};
    }
    case TermKind::Collection: {
      const auto& ms = t.members();
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (is_value(ms[i])) continue;
        path.push_back(i);
        return find_cbv_step(ms[i], path);
      }
      return std::nullopt;
    }
    case TermKind::Application: {
      if (!is_value(t.fn())) {
        path.push_back(0);
        return find_cbv_step(t.fn(), path);
      }
      if (!is_value(t.arg())) {
        path.push_back(1);
        return find_cbv_step(t.arg(), path);
      }
      const Term& vfn = t.fn();
      const Term& varg = t.arg();
      if (vfn.is(TermKind::Collection) || distributes(vfn, varg)) {
        const auto fns = flat_members(vfn);
        const auto args = flat_members(varg);
        std::vector<Term> out;
        out.reserve(fns.size() * args.size());
        for (const auto& f : fns)
          for (const auto& a : args) out.push_back(Term::application(f, a));
        return FoundStep{mk_collection(std::move(out)), "gamma", path};
      }
      if (vfn.is(TermKind::Abstraction)) {
        return FoundStep{
            scale(vfn.sign(), substitute(vfn.body(), varg, vfn.binder())),
            "beta", path};
      }
      throw EvalError{EvalErrorKind::Stuck, t};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Step> cbv_step(const Term& t) {
  std::vector<std::size_t> path;
  auto found = find_cbv_step(t, path);
  if (!found) return std::nullopt;
  Term next = replace_at(t, found->path, 0, found->local);
  return Step{std::move(next), found->rule, RedexPath{found->path}};
}

Term evaluate_traced(const Term& t, const EvalConfig& cfg,
                     const std::function<void(const Step&)>& on_step) {
  if (auto v = find_level_violation(t, cfg.level))
    throw EvalError{EvalErrorKind::LevelViolation, *v};
  Term cur = t;
  std::uint64_t used = 0;
  for (;;) {
    auto step = cbv_step(cur);
    if (!step) return cur;
    if (step->rule == "beta" && ++used > cfg.fuel)
      throw EvalError{EvalErrorKind::FuelExhausted, t};
    if (on_step) on_step(*step);
    cur = step->term;
  }
}

}  // namespace lamq
