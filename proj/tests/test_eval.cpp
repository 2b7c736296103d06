#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "test_util.hpp"

using namespace lamq;
using namespace lamq::test;

TEST_CASE("is_value") {
  CHECK(is_value(tl("\\x.x")));
  CHECK(is_value(tq("~x")));
  CHECK(is_value(tq("\\x.x, ~y")));
  CHECK_FALSE(is_value(tl("(\\x.x) (\\y.y)")));
  CHECK_FALSE(is_value(tp("x, y z")));
  CHECK_FALSE(is_value(Term::negated(tl("x y"))));
}

TEST_CASE("values evaluate to themselves") {
  ValueGen gen(701, 4, 3);
  const EvalConfig cfg{1000, Level::Q};
  int values = 0;
  for (int i = 0; i < 400; ++i) {
    const Term v = gen();
    if (!is_value(v)) continue;  // the generator also emits spine redexes
    ++values;
    CHECK(term_equal(evaluate(v, cfg), v));
  }
  CHECK(values > 100);
}

TEST_CASE("conditional truth table") {
  CHECK(term_equal(evq("IF T a b"), tq("a")));
  CHECK(term_equal(evq("IF F a b"), tq("b")));
}

TEST_CASE("evaluation results are values without exposed redexes") {
  NormalizingGen gen(702, Level::Q, 4);
  const EvalConfig cfg{100'000, Level::Q};
  for (int i = 0; i < 300; ++i) {
    const Term t = gen();
    Term v;
    try {
      v = evaluate(t, cfg);
    } catch (const EvalError& e) {
      CHECK(e.kind == EvalErrorKind::Stuck);  // free variables may head
      continue;
    }
    CHECK(is_value(v));
    // Call-by-value leaves abstraction bodies alone, so redex-freeness
    // holds outside binders.
    CHECK_FALSE(has_gamma_redex(v, /*inside_binders=*/false));
  }
}

TEST_CASE("collection arguments: distribution vs whole passing") {
  // One consistent member per world when the parameter is read twice.
  CHECK(term_equal(evq("(\\x. PAIR x x) (T, F)"),
                   evq("(PAIR T T, PAIR F F)")));
  // A parameter used once receives the collection as one value.
  const Term pair_holding = evq("PAIR T (a, b)");
  CHECK(cardinality(pair_holding) == 1);
  CHECK(term_equal(evq("SND (PAIR T (a, b))"), tq("a, b")));
  // An unused parameter drops its whole argument.
  CHECK(term_equal(evq("(\\x. c) (a, b)"), tq("c")));
  // Collection operators expand pairwise.
  CHECK(term_equal(evq("(\\x.x, \\y.d) (a, b)"), tq("a, b, d, d")));
}

TEST_CASE("evaluate W 3 (the random walk)") {
  const Term v = evq("W 3");
  CHECK(cardinality(v) == 8);
  std::multiset<long long> walked;
  for (const auto& m : flat_members(v)) {
    auto z = decode_int(m);
    REQUIRE(z.has_value());
    walked.insert(*z);
  }
  CHECK(walked == std::multiset<long long>{-3, -1, -1, 1, -1, 1, 1, 3});
}

TEST_CASE("evaluate REMOVE-F (F, T, F)") {
  const Term v = evq("REMOVE-F (F, T, F)");
  CHECK(cardinality(v) == 5);
  CHECK(term_equal(v, evq("F, ~F, T, F, ~F")));
}

TEST_CASE("stuck, fuel and level errors") {
  try {
    evq("x y");
    FAIL("expected stuck");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalErrorKind::Stuck);
  }

  try {
    evq("Y (\\f. \\x. f x) a", 500);
    FAIL("expected fuel exhaustion");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalErrorKind::FuelExhausted);
  }

  try {
    evaluate(tq("~x"), EvalConfig{100, Level::P});
    FAIL("expected level violation");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalErrorKind::LevelViolation);
  }
  try {
    evaluate(tp("x, y"), EvalConfig{100, Level::Lambda});
    FAIL("expected level violation");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalErrorKind::LevelViolation);
  }
}

TEST_CASE("fuel monotonicity") {
  const std::vector<std::string> programs = {
      "S 2", "P 3", "W 2", "R 3", "REMOVE-F (F, T)", "IF (ZERO? 0) a b"};
  for (const auto& src : programs) {
    const Term t = rq(src);
    // Find the minimum fuel by bisection, then check stability above it.
    std::uint64_t lo = 1, hi = 1 << 20;
    REQUIRE_NOTHROW(evaluate(t, EvalConfig{hi, Level::Q}));
    const Term expected = evaluate(t, EvalConfig{hi, Level::Q});
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      try {
        evaluate(t, EvalConfig{mid, Level::Q});
        hi = mid;
      } catch (const EvalError&) {
        lo = mid + 1;
      }
    }
    for (std::uint64_t fuel : {lo, lo + 1, lo + 17, 2 * lo}) {
      CHECK(term_equal(evaluate(t, EvalConfig{fuel, Level::Q}), expected));
    }
  }
}

TEST_CASE("lambda-level conservativity") {
  NormalizingGen gen(703, Level::Lambda, 4);
  const EvalConfig cfg{100'000, Level::Lambda};
  for (int i = 0; i < 300; ++i) {
    const Term t = gen();
    REQUIRE(min_level(t) == Level::Lambda);
    try {
      const Term v = evaluate(t, cfg);
      CHECK(min_level(v) == Level::Lambda);
    } catch (const EvalError& e) {
      CHECK(e.kind == EvalErrorKind::Stuck);
    }
  }
}

TEST_CASE("big-step agrees with the small-step mirror") {
  NormalizingGen gen(704, Level::Q, 4);
  const EvalConfig cfg{50'000, Level::Q};
  int agreed = 0;
  for (int i = 0; i < 500; ++i) {
    const Term t = gen();
    std::optional<Term> big, small;
    std::optional<EvalErrorKind> big_err, small_err;
    try {
      big = evaluate(t, cfg);
    } catch (const EvalError& e) {
      big_err = e.kind;
    }
    try {
      small = evaluate_traced(t, cfg, nullptr);
    } catch (const EvalError& e) {
      small_err = e.kind;
    }
    REQUIRE(big.has_value() == small.has_value());
    if (big) {
      CHECK(term_equal(*big, *small));
      ++agreed;
    } else {
      CHECK(big_err == small_err);
    }
  }
  CHECK(agreed > 250);

  // The two routes also agree on the library programs.
  for (const std::string src :
       {"W 2", "R 3", "REMOVE-F (F, T, F)", "P 3", "S 2"}) {
    const Term t = rq(src);
    CHECK(term_equal(evaluate(t, cfg), evaluate_traced(t, cfg, nullptr)));
  }
}

TEST_CASE("small-step emits trace steps with rules and paths") {
  std::vector<Step> steps;
  EvalConfig cfg{1000, Level::P};
  Env env = default_env(Level::P);
  // The doubled parameter splits the collection world by world.
  const Term t = env.resolve(tp("(\\x. PAIR x x) (a, b)"));
  const Term v = evaluate_traced(t, cfg, [&](const Step& s) {
    steps.push_back(s);
  });
  REQUIRE(steps.size() >= 3);
  CHECK(steps.front().rule == "gamma");
  CHECK(term_equal(v, tp("\\f. f a a, \\f. f b b")));
  bool saw_beta = false;
  for (const auto& s : steps) saw_beta |= s.rule == "beta";
  CHECK(saw_beta);

  // A single-occurrence parameter takes the collection in one beta step.
  steps.clear();
  const Term u = evaluate_traced(tp("(\\x.x) (a, b)"), cfg, [&](const Step& s) {
    steps.push_back(s);
  });
  REQUIRE(steps.size() == 1);
  CHECK(steps.front().rule == "beta");
  CHECK(term_equal(u, tp("a, b")));
}

TEST_CASE("pending negation on a value resolves as a sign step") {
  // (~\x.\y. x y) a leaves ~(a-headed application)? No: the contraction
  // scales the abstraction body, and the negation settles on the next
  // abstraction value.
  const Term v = evq("(~\\x.\\y. x y) a");
  REQUIRE(v.is(TermKind::Abstraction));
  CHECK(v.sign() == Sign::Negative);

  // A negated application must evaluate its inside, then flip.
  const Term w =
      evaluate(Term::negated(rq("IF T a b")), EvalConfig{1000, Level::Q});
  CHECK(term_equal(w, tq("~a")));
}
