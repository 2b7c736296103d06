#include "lamq/observe.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lamq {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += kGoldenGamma;
  return mix(state_);
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
  if (n == 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

Rng Rng::split(std::uint64_t index) const {
  return Rng(mix(seed_ + (index + 1) * kGoldenGamma));
}

std::string ObservationFailure::message() const {
  return "unobservable: collection cancels to empty: " + print(offending);
}

namespace {

Term strip_sign(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return Term::variable(t.name());
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), t.body());
    default:
      return t;
  }
}

Term delta_rec(const Term& t, const Term& root, DeltaMode mode) {
  switch (t.kind()) {
    case TermKind::Variable:
      return Term::variable(t.name());
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), delta_rec(t.body(), root, mode));
    case TermKind::Application:
      return Term::application(delta_rec(t.fn(), root, mode),
                               delta_rec(t.arg(), root, mode));
    case TermKind::Negated:
      // Signs are erased wholesale, so the wrapper just disappears.
      return delta_rec(t.inner(), root, mode);
    case TermKind::Collection: {
      // Cancellation happens on the raw members, before recursion. Members
      // group by the alpha-class of their sign-stripped form; only
      // variables and abstractions carry a sign and can cancel.
      const auto& ms = t.members();
      struct Counts {
        std::size_t positive = 0;
        std::size_t negative = 0;
      };
      std::map<CanonicalTerm, Counts> classes;
      for (const auto& m : ms) {
        if (!m.is(TermKind::Variable) && !m.is(TermKind::Abstraction))
          continue;
        auto key = alpha_canonical(strip_sign(m));
        auto& c = classes.emplace(key, Counts{}).first->second;
        if (m.sign() == Sign::Positive)
          ++c.positive;
        else
          ++c.negative;
      }
      std::vector<Term> survivors;
      survivors.reserve(ms.size());
      std::map<CanonicalTerm, Counts> to_drop;
      for (const auto& [key, c] : classes) {
        Counts drop;
        if (mode == DeltaMode::Pairwise) {
          drop.positive = drop.negative = std::min(c.positive, c.negative);
        } else {
          // Remove every member whose opposite occurs anywhere.
          if (c.positive > 0 && c.negative > 0) drop = c;
        }
        if (drop.positive || drop.negative) to_drop.emplace(key, drop);
      }
      for (const auto& m : ms) {
        if (m.is(TermKind::Variable) || m.is(TermKind::Abstraction)) {
          auto it = to_drop.find(alpha_canonical(strip_sign(m)));
          if (it != to_drop.end()) {
            auto& budget = m.sign() == Sign::Positive ? it->second.positive
                                                      : it->second.negative;
            if (budget > 0) {
              --budget;
              continue;
            }
          }
        }
        survivors.push_back(m);
      }
      if (survivors.empty()) throw ObservationFailure{t};
      for (auto& m : survivors) m = delta_rec(m, root, mode);
      return mk_collection(std::move(survivors));
    }
  }
  return t;
}

}  // namespace

Term delta(const Term& t, DeltaMode mode) { return delta_rec(t, t, mode); }

Term theta_sample(const Term& t, Rng& rng) {
  switch (t.kind()) {
    case TermKind::Variable:
      return t;
    case TermKind::Abstraction:
      return Term::abstraction(t.binder(), theta_sample(t.body(), rng),
                               t.sign());
    case TermKind::Application:
      return Term::application(theta_sample(t.fn(), rng),
                               theta_sample(t.arg(), rng));
    case TermKind::Collection: {
      const auto& ms = t.members();
      const auto pick = rng.uniform_below(ms.size());
      return theta_sample(ms[pick], rng);
    }
    case TermKind::Negated:
      throw std::invalid_argument(
          "theta_sample: input must be sign-free (apply delta first)");
  }
  return t;
}

Term xi_sample(const Term& t, Rng& rng) {
  return theta_sample(delta(t), rng);
}

Distribution Distribution::point(const Term& t) {
  Distribution d;
  d.add(t, 1);
  return d;
}

void Distribution::add(const Term& t, const Rational& p) {
  if (p == 0) return;
  auto key = alpha_canonical(t);
  auto [it, inserted] = map_.emplace(std::move(key), p);
  if (!inserted) it->second += p;
}

Rational Distribution::probability_of(const Term& t) const {
  auto it = map_.find(alpha_canonical(t));
  return it == map_.end() ? Rational(0) : it->second;
}

Rational Distribution::total() const {
  Rational sum = 0;
  for (const auto& [_, p] : map_) sum += p;
  return sum;
}

std::string Distribution::serialize() const {
  std::ostringstream os;
  for (const auto& [term, p] : map_) {
    os << boost::multiprecision::numerator(p) << "/"
       << boost::multiprecision::denominator(p) << " " << print(term.get())
       << "\n";
  }
  return os.str();
}

Distribution member_distribution(const Term& t) {
  Distribution d;
  const auto ms = flat_members(t);
  const Rational share(1, static_cast<unsigned>(ms.size()));
  for (const auto& m : ms) d.add(m, share);
  return d;
}

namespace {

Distribution law(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return Distribution::point(t);
    case TermKind::Abstraction: {
      Distribution body = law(t.body());
      Distribution out;
      for (const auto& [b, p] : body.weights())
        out.add(Term::abstraction(t.binder(), b.get()), p);
      return out;
    }
    case TermKind::Application: {
      // Independent draws on the two sides.
      Distribution fn = law(t.fn());
      Distribution arg = law(t.arg());
      Distribution out;
      for (const auto& [f, pf] : fn.weights())
        for (const auto& [a, pa] : arg.weights())
          out.add(Term::application(f.get(), a.get()), pf * pa);
      return out;
    }
    case TermKind::Collection: {
      const auto& ms = t.members();
      const Rational share(1, static_cast<unsigned>(ms.size()));
      Distribution out;
      for (const auto& m : ms) {
        Distribution part = law(m);
        for (const auto& [k, p] : part.weights()) out.add(k.get(), p * share);
      }
      return out;
    }
    case TermKind::Negated:
      throw std::invalid_argument("exact_distribution: negation survived delta");
  }
  return Distribution::point(t);
}

}  // namespace

Distribution exact_distribution(const Term& t, DeltaMode mode) {
  return law(delta(t, mode));
}

bool statistically_indistinguishable(const Distribution& a,
                                     const Distribution& b) {
  return a == b;
}

Term observe_program(const Term& t, const EvalConfig& cfg, Rng& rng) {
  Term value = evaluate(t, cfg);
  switch (cfg.level) {
    case Level::Lambda:
      return value;
    case Level::P:
      return theta_sample(value, rng);
    case Level::Q:
      return xi_sample(value, rng);
  }
  return value;
}

}  // namespace lamq
