#include "lamq/rewrite.hpp"

#include <stdexcept>

namespace lamq {

std::string RedexPath::to_string() const {
  if (indices.empty()) return "/";
  std::string out;
  for (auto i : indices) {
    out += '/';
    out += std::to_string(i);
  }
  return out;
}

Sign sign_concat(Sign a, Sign b) {
  return a == b ? Sign::Positive : Sign::Negative;
}

Term scale(Sign s, const Term& t) {
  if (s == Sign::Positive) return t;
  switch (t.kind()) {
    case TermKind::Variable:
      return Term::variable(t.name(), sign_concat(Sign::Negative, t.sign()));
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), t.body(),
                               sign_concat(Sign::Negative, t.sign()));
    case TermKind::Collection: {
      std::vector<Term> ms;
      ms.reserve(t.members().size());
      for (const auto& m : t.members()) ms.push_back(scale(Sign::Negative, m));
      return mk_collection(std::move(ms));
    }
    case TermKind::Negated:
      return t.inner();
    case TermKind::Application:
      return Term::negated(t);
  }
  return t;
}

namespace {

// Fresh binder for the renaming substitution rule: the original name with
// the smallest numeric suffix avoiding FV(P), FV(N), the substituted
// variable and the old binder itself.
std::string fresh_name(const std::string& base, const Term& body,
                       const Term& replacement, const std::string& var) {
  const auto fv_body = free_vars(body);
  const auto fv_repl = free_vars(replacement);
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (candidate != var && candidate != base && !fv_body.count(candidate) &&
        !fv_repl.count(candidate))
      return candidate;
  }
}

}  // namespace

Term substitute(const Term& body, const Term& replacement,
                const std::string& var) {
  switch (body.kind()) {
    case TermKind::Variable:
      if (body.name() == var) return scale(body.sign(), replacement);
      return body;
    case TermKind::Application:
      return Term::application(substitute(body.fn(), replacement, var),
                               substitute(body.arg(), replacement, var));
    case TermKind::Abstraction: {
      if (body.binder() == var) return body;
      if (free_vars(replacement).count(body.binder())) {
        // Clashing binder: rename it before substituting.
        const std::string z =
            fresh_name(body.binder(), body.body(), replacement, var);
        Term renamed = substitute(body.body(), Term::variable(z), body.binder());
        return Term::abstraction(z, substitute(renamed, replacement, var),
                                 body.sign());
      }
      return Term::abstraction(
          body.binder(), substitute(body.body(), replacement, var),
          body.sign());
    }
    case TermKind::Collection: {
      std::vector<Term> ms;
      ms.reserve(body.members().size());
      for (const auto& m : body.members())
        ms.push_back(substitute(m, replacement, var));
      return mk_collection(std::move(ms));
    }
    case TermKind::Negated:
      return scale(Sign::Negative, substitute(body.inner(), replacement, var));
  }
  return body;
}

namespace {

bool is_gamma_redex(const Term& t) {
  return t.is(TermKind::Application) &&
         (cardinality(t.fn()) > 1 || cardinality(t.arg()) > 1);
}

Term expand_product(const Term& app) {
  const auto fns = flat_members(app.fn());
  const auto args = flat_members(app.arg());
  std::vector<Term> out;
  out.reserve(fns.size() * args.size());
  for (const auto& f : fns)
    for (const auto& a : args) out.push_back(Term::application(f, a));
  return mk_collection(std::move(out));
}

using PathRef = std::vector<std::size_t>;

std::optional<Term> gamma_step_at(const Term& t, GammaStrategy strategy,
                                  PathRef& path) {
  const bool self_first = strategy == GammaStrategy::RightmostOutermost;

  auto try_self = [&]() -> std::optional<Term> {
    if (is_gamma_redex(t)) return expand_product(t);
    return std::nullopt;
  };

  if (self_first) {
    if (auto r = try_self()) return r;
  }

  auto descend = [&](const Term& child,
                     std::size_t index) -> std::optional<Term> {
    path.push_back(index);
    auto r = gamma_step_at(child, strategy, path);
    if (!r) path.pop_back();
    return r;
  };

  switch (t.kind()) {
    case TermKind::Variable:
      break;
    case TermKind::Abstraction:
      if (auto r = descend(t.body(), 0))
        return Term::abstraction(t.binder(), *r, t.sign());
      break;
    case TermKind::Negated:
      if (auto r = descend(t.inner(), 0)) return scale(Sign::Negative, *r);
      break;
    case TermKind::Application: {
      const bool left_first = strategy == GammaStrategy::LeftmostInnermost;
      const std::size_t first = left_first ? 0 : 1;
      const std::size_t second = left_first ? 1 : 0;
      auto child = [&](std::size_t i) { return i == 0 ? t.fn() : t.arg(); };
      for (std::size_t i : {first, second}) {
        if (auto r = descend(child(i), i)) {
          Term fn = i == 0 ? *r : t.fn();
          Term arg = i == 1 ? *r : t.arg();
          return Term::application(std::move(fn), std::move(arg));
        }
      }
      break;
    }
    case TermKind::Collection: {
      const auto& ms = t.members();
      if (strategy == GammaStrategy::LeftmostInnermost) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
          if (auto r = descend(ms[i], i)) {
            std::vector<Term> out = ms;
            out[i] = *r;
            return mk_collection(std::move(out));
          }
        }
      } else {
        for (std::size_t i = ms.size(); i-- > 0;) {
          if (auto r = descend(ms[i], i)) {
            std::vector<Term> out = ms;
            out[i] = *r;
            return mk_collection(std::move(out));
          }
        }
      }
      break;
    }
  }

  if (!self_first) {
    if (auto r = try_self()) return r;
  }
  return std::nullopt;
}

}  // namespace

bool has_gamma_redex(const Term& t, bool inside_binders) {
  switch (t.kind()) {
    case TermKind::Variable:
      return false;
    case TermKind::Abstraction:
      return inside_binders && has_gamma_redex(t.body(), true);
    case TermKind::Application:
      return is_gamma_redex(t) || has_gamma_redex(t.fn(), inside_binders) ||
             has_gamma_redex(t.arg(), inside_binders);
    case TermKind::Collection:
      for (const auto& m : t.members())
        if (has_gamma_redex(m, inside_binders)) return true;
      return false;
    case TermKind::Negated:
      return has_gamma_redex(t.inner(), inside_binders);
  }
  return false;
}

std::optional<std::pair<Term, RedexPath>> gamma_step(const Term& t,
                                                     GammaStrategy strategy) {
  PathRef path;
  if (auto r = gamma_step_at(t, strategy, path))
    return std::make_pair(*r, RedexPath{std::move(path)});
  return std::nullopt;
}

Term gamma_normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return t;
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), gamma_normalize(t.body()),
                               t.sign());
    case TermKind::Negated:
      // The inner application may normalize to a collection; scale pushes
      // the pending negation into it.
      return scale(Sign::Negative, gamma_normalize(t.inner()));
    case TermKind::Collection: {
      std::vector<Term> ms;
      ms.reserve(t.members().size());
      for (const auto& m : t.members()) ms.push_back(gamma_normalize(m));
      return mk_collection(std::move(ms));
    }
    case TermKind::Application: {
      Term fn = gamma_normalize(t.fn());
      Term arg = gamma_normalize(t.arg());
      if (cardinality(fn) > 1 || cardinality(arg) > 1) {
        // Members of normalized sides are gamma-normal non-collections, so
        // the product's members are gamma-normal too.
        return expand_product(Term::application(std::move(fn), std::move(arg)));
      }
      return Term::application(std::move(fn), std::move(arg));
    }
  }
  return t;
}

namespace {

bool is_beta_redex(const Term& t) {
  return t.is(TermKind::Application) && t.fn().is(TermKind::Abstraction);
}

Term contract_beta(const Term& app) {
  const Term& lam = app.fn();
  return scale(lam.sign(), substitute(lam.body(), app.arg(), lam.binder()));
}

std::optional<Term> beta_step_at(const Term& t, BetaStrategy strategy,
                                 PathRef& path) {
  const bool self_first = strategy == BetaStrategy::LeftmostOutermost;

  auto try_self = [&]() -> std::optional<Term> {
    if (is_beta_redex(t)) return contract_beta(t);
    return std::nullopt;
  };

  if (self_first) {
    if (auto r = try_self()) return r;
  }

  auto descend = [&](const Term& child,
                     std::size_t index) -> std::optional<Term> {
    path.push_back(index);
    auto r = beta_step_at(child, strategy, path);
    if (!r) path.pop_back();
    return r;
  };

  switch (t.kind()) {
    case TermKind::Variable:
      break;
    case TermKind::Abstraction:
      if (auto r = descend(t.body(), 0))
        return Term::abstraction(t.binder(), *r, t.sign());
      break;
    case TermKind::Negated:
      if (auto r = descend(t.inner(), 0)) return scale(Sign::Negative, *r);
      break;
    case TermKind::Application: {
      const bool left_first = strategy == BetaStrategy::LeftmostOutermost;
      const std::size_t first = left_first ? 0 : 1;
      const std::size_t second = left_first ? 1 : 0;
      auto child = [&](std::size_t i) { return i == 0 ? t.fn() : t.arg(); };
      for (std::size_t i : {first, second}) {
        if (auto r = descend(child(i), i)) {
          Term fn = i == 0 ? *r : t.fn();
          Term arg = i == 1 ? *r : t.arg();
          return Term::application(std::move(fn), std::move(arg));
        }
      }
      break;
    }
    case TermKind::Collection: {
      const auto& ms = t.members();
      const bool forward = strategy == BetaStrategy::LeftmostOutermost;
      for (std::size_t k = 0; k < ms.size(); ++k) {
        const std::size_t i = forward ? k : ms.size() - 1 - k;
        if (auto r = descend(ms[i], i)) {
          std::vector<Term> out = ms;
          out[i] = *r;
          return mk_collection(std::move(out));
        }
      }
      break;
    }
  }

  if (!self_first) {
    if (auto r = try_self()) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Term, RedexPath>> beta_gamma_step(
    const Term& t, BetaStrategy strategy) {
  if (has_gamma_redex(t))
    throw std::logic_error(
        "beta_gamma_step: input must be in gamma-normal form");
  PathRef path;
  if (auto r = beta_step_at(t, strategy, path))
    return std::make_pair(gamma_normalize(*r), RedexPath{std::move(path)});
  return std::nullopt;
}

std::optional<Term> beta_gamma_normalize(const Term& t, std::size_t max_steps,
                                         BetaStrategy strategy) {
  Term cur = gamma_normalize(t);
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = beta_gamma_step(cur, strategy);
    if (!next) return cur;
    cur = std::move(next->first);
  }
  if (!beta_gamma_step(cur, strategy)) return cur;
  return std::nullopt;
}

}  // namespace lamq
