#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "test_util.hpp"

using namespace lamq;
using namespace lamq::test;

TEST_CASE("sign concatenation table") {
  CHECK(sign_concat(Sign::Positive, Sign::Positive) == Sign::Positive);
  CHECK(sign_concat(Sign::Positive, Sign::Negative) == Sign::Negative);
  CHECK(sign_concat(Sign::Negative, Sign::Positive) == Sign::Negative);
  CHECK(sign_concat(Sign::Negative, Sign::Negative) == Sign::Positive);
}

TEST_CASE("scale") {
  CHECK(term_equal(scale(Sign::Negative, tq("x")), tq("~x")));
  CHECK(term_equal(scale(Sign::Negative, tq("x, ~y")), tq("~x, y")));
  CHECK(term_equal(scale(Sign::Positive, tq("x y")), tq("x y")));

  // An application gets the wrapper; a second scaling removes it.
  const Term app = tq("x y");
  const Term neg = scale(Sign::Negative, app);
  CHECK(neg.is(TermKind::Negated));
  CHECK(term_equal(scale(Sign::Negative, neg), app));
}

TEST_CASE("scale is a group action") {
  TermGen gen(301, Level::Q, 4, 3);
  for (int i = 0; i < 300; ++i) {
    const Term t = gen();
    CHECK(term_equal(scale(Sign::Positive, t), t));
    for (Sign s1 : {Sign::Positive, Sign::Negative})
      for (Sign s2 : {Sign::Positive, Sign::Negative})
        CHECK(term_equal(scale(s1, scale(s2, t)),
                         scale(sign_concat(s1, s2), t)));
  }
}

TEST_CASE("scale distributes over collection members (observation check)") {
  // Both routes must induce the same observation law once the signs are
  // cancelled inside a probe collection.
  const Term c = tq("x, ~y");
  const Term scaled = scale(Sign::Negative, c);
  const Term probe1 = mk_collection({scaled, tq("x"), tq("~y")});
  CHECK_THROWS_AS(delta(probe1), ObservationFailure);  // all four cancel
}

// The plain substitution rules.
TEST_CASE("substitution rules 1-6") {
  const Term n = tl("\\w.w w");

  // 1: x[N/x] = N
  CHECK(term_equal(substitute(tl("x"), n, "x"), n));
  // 2: y[N/x] = y
  CHECK(term_equal(substitute(tl("y"), n, "x"), tl("y")));
  // 3: (P Q)[N/x] = P[N/x] Q[N/x]
  CHECK(term_equal(substitute(tl("x (y x)"), n, "x"),
                   Term::application(n, Term::application(tl("y"), n))));
  // 4: (\x.P)[N/x] = \x.P
  CHECK(term_equal(substitute(tl("\\x.x"), n, "x"), tl("\\x.x")));
  // 5: (\y.P)[N/x] = \y.P[N/x] when y not free in N
  CHECK(term_equal(substitute(tl("\\y.x y"), n, "x"),
                   Term::abstraction("y", Term::application(n, tl("y")))));
  // 6: capture-avoiding rename when y is free in N
  const Term renamed = substitute(tl("\\y.x y"), tl("y"), "x");
  REQUIRE(renamed.is(TermKind::Abstraction));
  CHECK(renamed.binder() != "y");
  CHECK(term_equal(renamed, tl("\\z.y z")));
}

// Rule 7: collections substitute memberwise.
TEST_CASE("substitution rule 7") {
  const Term t = substitute(tp("x, y x"), tp("p q"), "x");
  CHECK(term_equal(t, tp("p q, y (p q)")));
}

// The signed rules: signs on occurrences concatenate onto the replacement.
TEST_CASE("signed substitution rules 1-7") {
  // 1: (Sx)[N/x] = S N; two negatives cancel.
  CHECK(term_equal(substitute(tq("~x"), tq("~\\y.y"), "x"), tl("\\y.y")));
  CHECK(term_equal(substitute(tq("~x"), tq("\\y.y"), "x"), tq("~\\y.y")));
  // 2: (Sy)[N/x] = Sy
  CHECK(term_equal(substitute(tq("~y"), tq("z"), "x"), tq("~y")));
  // 3: applications recurse componentwise.
  CHECK(term_equal(substitute(tq("~x x"), tq("z"), "x"), tq("~z z")));
  // 4: shadowed binder blocks, sign preserved.
  CHECK(term_equal(substitute(tq("~\\x.x"), tq("z"), "x"), tq("~\\x.x")));
  // 5: signed abstraction substitutes under the binder.
  CHECK(term_equal(substitute(tq("~\\y.x"), tq("z"), "x"), tq("~\\y.z")));
  // 6: renaming keeps the abstraction's sign.
  const Term renamed = substitute(tq("~\\y.x y"), tq("y"), "x");
  REQUIRE(renamed.is(TermKind::Abstraction));
  CHECK(renamed.sign() == Sign::Negative);
  CHECK(term_equal(renamed, tq("~\\z.y z")));
  // 7: memberwise with signs.
  CHECK(term_equal(substitute(tq("~x, x"), tq("~w"), "x"), tq("w, ~w")));
}

TEST_CASE("substitution never captures (freshness accounting)") {
  TermGen body_gen(401, Level::Q, 4, 3);
  TermGen repl_gen(402, Level::Q, 3, 3);
  int renamed_cases = 0;
  for (int i = 0; i < 500; ++i) {
    const Term body = body_gen();
    const Term repl = repl_gen();
    const std::string var = "a";  // free pool name, often occurs
    const Term out = substitute(body, repl, var);

    // Every free variable of the result was free in the body (minus the
    // substituted one) or is free in the replacement.
    auto fv_out = free_vars(out);
    auto fv_body = free_vars(body);
    auto fv_repl = free_vars(repl);
    const bool occurs = fv_body.count(var) > 0;
    for (const auto& v : fv_out) {
      const bool explained =
          (fv_body.count(v) && v != var) || (occurs && fv_repl.count(v));
      CHECK(explained);
    }
    // And no free variable of the replacement was lost to capture.
    if (occurs)
      for (const auto& v : fv_repl) CHECK(fv_out.count(v));
    if (occurs && !fv_repl.empty()) ++renamed_cases;
  }
  CHECK(renamed_cases > 50);
}

TEST_CASE("gamma_step expands the application product") {
  // (M,N)(P,Q) -> MP, MQ, NP, NQ in one step.
  auto r = gamma_step(tp("(M, N) (P, Q)"));
  REQUIRE(r.has_value());
  CHECK(term_equal(r->first, tp("M P, M Q, N P, N Q")));
  CHECK(r->second.indices.empty());  // the root is the redex

  CHECK_FALSE(gamma_step(tp("x y")).has_value());

  auto r2 = gamma_step(tp("(\\x.x) (a, b)"));
  REQUIRE(r2.has_value());
  CHECK(term_equal(r2->first, tp("(\\x.x) a, (\\x.x) b")));
  // Brute-force pair enumeration: 1 operator member times 2 operand
  // members gives exactly those two applications.
  CHECK(cardinality(r2->first) == 2);
}

TEST_CASE("gamma_step finds the leftmost-innermost redex") {
  const Term t = tp("((a, b) c) ((d, e) f)");
  auto r = gamma_step(t);
  REQUIRE(r.has_value());
  CHECK(r->second.indices == std::vector<std::size_t>{0});
  CHECK(term_equal(r->first, tp("(a c, b c) ((d, e) f)")));
}

TEST_CASE("gamma_normalize") {
  CHECK(term_equal(gamma_normalize(tp("(M, N) (P, Q)")),
                   tp("M P, M Q, N P, N Q")));
  CHECK(term_equal(gamma_normalize(tp("\\x.(a, b) c")),
                   tp("\\x.(a c, b c)")));
  const Term v = tp("\\x. x, y");
  CHECK(term_equal(gamma_normalize(v), v));

  // Stepping to a fixpoint agrees with the structural normalizer.
  TermGen gen(501, Level::Q, 4, 3);
  for (int i = 0; i < 200; ++i) {
    Term t = gen();
    Term stepped = t;
    for (int s = 0; s < 10'000; ++s) {
      auto r = gamma_step(stepped);
      if (!r) break;
      stepped = r->first;
    }
    CHECK_FALSE(gamma_step(stepped).has_value());
    CHECK(term_equal(stepped, gamma_normalize(t)));
  }
}

namespace {

// The product of all collection sizes bounds the member count of any
// gamma-normal form reachable from `t`.
std::size_t expansion_bound(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return 1;
    case TermKind::Abstraction:
      return std::min<std::size_t>(expansion_bound(t.body()), 100'000);
    case TermKind::Application:
      return std::min<std::size_t>(
          expansion_bound(t.fn()) * expansion_bound(t.arg()), 100'000);
    case TermKind::Collection: {
      std::size_t n = 0;
      for (const auto& m : t.members()) n += expansion_bound(m);
      return std::min<std::size_t>(n, 100'000);
    }
    case TermKind::Negated:
      return expansion_bound(t.inner());
  }
  return 1;
}

}  // namespace

TEST_CASE("gamma termination within a size-derived bound") {
  TermGen gen(502, Level::P, 5, 3);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Term t = gen();
    const std::size_t bound = expansion_bound(t);
    if (bound > 5'000) continue;  // keep the desk-scale budget
    ++checked;
    std::size_t steps = 0;
    const std::size_t max_steps = 64 * bound * bound + 64;
    Term cur = t;
    while (auto r = gamma_step(cur)) {
      cur = r->first;
      ++steps;
      REQUIRE(steps <= max_steps);
    }
  }
  CHECK(checked > 900);
}

TEST_CASE("gamma confluence: two strategies meet (Church-Rosser)") {
  TermGen gen(503, Level::Q, 5, 3);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term t = gen();
    if (expansion_bound(t) > 5'000) continue;
    ++checked;
    Term a = t, b = t;
    while (auto r = gamma_step(a, GammaStrategy::LeftmostInnermost))
      a = r->first;
    while (auto r = gamma_step(b, GammaStrategy::RightmostOutermost))
      b = r->first;
    CHECK(term_equal(a, b));
  }
  CHECK(checked > 900);
}

TEST_CASE("gamma-normal cardinality law") {
  // |gamma(M N)| = |gamma(M)| * |gamma(N)| for gamma-normal sides whose
  // members are application-free at the top.
  ValueGen gen(504, 3, 3);
  for (int i = 0; i < 200; ++i) {
    Term m = gen(), n = gen();
    auto application_free_members = [](const Term& t) {
      for (const auto& mem : flat_members(t))
        if (mem.is(TermKind::Application)) return false;
      return true;
    };
    m = gamma_normalize(m);
    n = gamma_normalize(n);
    if (!application_free_members(m) || !application_free_members(n)) continue;
    CHECK(cardinality(gamma_normalize(Term::application(m, n))) ==
          cardinality(m) * cardinality(n));
  }
}

TEST_CASE("beta_gamma_step") {
  // (\x.x)(a,b) is not gamma-normal; the precondition is enforced.
  CHECK_THROWS_AS(beta_gamma_step(tp("(\\x.x) (a, b)")), std::logic_error);

  // After gamma-normalizing, two contractions reach (a, b); the direct
  // collection-substitution route lands in the same place (the binder is
  // linear, so both routes provably agree).
  Term t = gamma_normalize(tp("(\\x.x) (a, b)"));
  CHECK(term_equal(t, tp("(\\x.x) a, (\\x.x) b")));
  auto s1 = beta_gamma_step(t);
  REQUIRE(s1.has_value());
  auto s2 = beta_gamma_step(s1->first);
  REQUIRE(s2.has_value());
  CHECK(term_equal(s2->first, tp("a, b")));
  CHECK_FALSE(beta_gamma_step(s2->first).has_value());

  const Term direct =
      gamma_normalize(substitute(tl("x"), tp("a, b"), "x"));
  CHECK(term_equal(direct, s2->first));

  // Signed contraction: the sign lands on the substituted body.
  Term neg = tq("(~\\x.x) y");
  auto s3 = beta_gamma_step(neg);
  REQUIRE(s3.has_value());
  CHECK(term_equal(s3->first, tq("~y")));

  CHECK_FALSE(beta_gamma_step(tl("\\x.x")).has_value());
}

TEST_CASE("whole-collection substitution agrees with the expansion route "
          "on linear top-level binders") {
  // For \x.C[x] with exactly one occurrence of x outside any binder,
  // substituting the whole collection and gamma-normalizing equals
  // gamma-expanding first and contracting each member.
  const std::vector<std::string> bodies = {"x", "f x", "x a", "f (x a)",
                                           "(f x) a"};
  for (const auto& body_src : bodies) {
    const Term body = tp(body_src);
    const Term coll = tp("p, q, r");
    const Term whole = gamma_normalize(substitute(body, coll, "x"));
    std::vector<Term> split;
    for (const auto& m : coll.members())
      split.push_back(gamma_normalize(substitute(body, m, "x")));
    CHECK(term_equal(whole, mk_collection(split)));
  }
}

TEST_CASE("beta-gamma confluence on strongly normalizing terms") {
  NormalizingGen gen(601, Level::P, 4);
  int nontrivial = 0;
  for (int i = 0; i < 500; ++i) {
    const Term t = gen();
    auto a = beta_gamma_normalize(t, 20'000, BetaStrategy::LeftmostOutermost);
    auto b = beta_gamma_normalize(t, 20'000, BetaStrategy::RightmostInnermost);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(term_equal(*a, *b));
    if (!term_equal(*a, gamma_normalize(t))) ++nontrivial;
  }
  CHECK(nontrivial > 100);
}

TEST_CASE("signed beta-gamma confluence") {
  NormalizingGen gen(602, Level::Q, 4);
  for (int i = 0; i < 300; ++i) {
    const Term t = gen();
    auto a = beta_gamma_normalize(t, 20'000, BetaStrategy::LeftmostOutermost);
    auto b = beta_gamma_normalize(t, 20'000, BetaStrategy::RightmostInnermost);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(term_equal(*a, *b));
  }
}

TEST_CASE("redex paths address the stepped redex") {
  const Term t = tp("\\f. f ((a, b) c)");
  auto r = gamma_step(t);
  REQUIRE(r.has_value());
  CHECK(r->second.indices == std::vector<std::size_t>{0, 1});
  CHECK(r->second.to_string() == "/0/1");
  CHECK(RedexPath{}.to_string() == "/");
}
