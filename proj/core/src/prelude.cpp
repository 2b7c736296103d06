#include "lamq/prelude.hpp"

#include <sstream>
#include <stdexcept>

#include "lamq/rewrite.hpp"

namespace lamq {

extern const char* const kPreludeText;  // generated from data/prelude.lq

const std::string& prelude_source() {
  static const std::string source(kPreludeText);
  return source;
}

const std::vector<PreludeEntry>& prelude_entries() {
  static const std::vector<PreludeEntry> entries = [] {
    SourceProgram prog = parse_program(prelude_source(), Level::Q);
    Env env;
    env.load(prog);
    std::vector<PreludeEntry> out;
    for (const auto& [name, term] : env.entries())
      out.push_back(PreludeEntry{name, term, min_level(term)});
    return out;
  }();
  return entries;
}

const Term& builtin(const std::string& name) {
  const std::string& key = name == "0?" ? std::string("ZERO?") : name;
  for (const auto& e : prelude_entries())
    if (e.name == key) return e.term;
  throw std::out_of_range("unknown prelude term: " + name);
}

Env default_env(Level level) {
  Env env;
  for (const auto& e : prelude_entries())
    if (e.level <= level) env.define(e.name, e.term);
  return env;
}

Term church(unsigned n) {
  Term body = Term::variable("y");
  for (unsigned i = 0; i < n; ++i)
    body = Term::application(Term::variable("x"), std::move(body));
  return Term::abstraction(
      "x", Term::abstraction("y", std::move(body)));
}

namespace {

// Numeral readers work on the beta-gamma normal form; the budget is ample
// for any numeral at desk scale.
constexpr std::size_t kDecodeBudget = 200'000;

std::optional<Term> normal_form_of(const Term& t) {
  if (min_level(t) != Level::Lambda) return std::nullopt;
  return beta_gamma_normalize(t, kDecodeBudget);
}

std::optional<unsigned> match_church(const Term& t) {
  if (!t.is(TermKind::Abstraction) || t.sign() != Sign::Positive)
    return std::nullopt;
  const Term& inner = t.body();
  if (!inner.is(TermKind::Abstraction) || inner.sign() != Sign::Positive)
    return std::nullopt;
  const std::string& x = t.binder();
  const std::string& y = inner.binder();
  if (x == y) return std::nullopt;
  unsigned n = 0;
  Term cur = inner.body();
  while (cur.is(TermKind::Application)) {
    const Term& fn = cur.fn();
    if (!fn.is(TermKind::Variable) || fn.sign() != Sign::Positive ||
        fn.name() != x)
      return std::nullopt;
    ++n;
    cur = cur.arg();
  }
  if (!cur.is(TermKind::Variable) || cur.sign() != Sign::Positive ||
      cur.name() != y)
    return std::nullopt;
  return n;
}

}  // namespace

std::optional<unsigned> decode_church(const Term& t) {
  auto nf = normal_form_of(t);
  if (!nf) return std::nullopt;
  // Canonicalize so shadowed binder spellings cannot confuse the matcher.
  return match_church(alpha_canonical(*nf).get());
}

Term int_term(long long z) {
  const Term flag = z >= 0 ? builtin("T") : builtin("F");
  const unsigned magnitude =
      static_cast<unsigned>(z >= 0 ? z : -z);
  // The evaluated form of PAIR <flag> <magnitude>.
  return Term::abstraction(
      "f", Term::application(Term::application(Term::variable("f"), flag),
                             church(magnitude)));
}

std::optional<long long> decode_int(const Term& t) {
  auto raw = normal_form_of(t);
  if (!raw) return std::nullopt;
  const Term canon = alpha_canonical(*raw).get();
  const Term* nf = &canon;
  // \f. f FLAG MAG
  if (!nf->is(TermKind::Abstraction) || nf->sign() != Sign::Positive)
    return std::nullopt;
  const std::string& f = nf->binder();
  const Term& b = nf->body();
  if (!b.is(TermKind::Application)) return std::nullopt;
  const Term& head = b.fn();
  if (!head.is(TermKind::Application)) return std::nullopt;
  if (!head.fn().is(TermKind::Variable) || head.fn().name() != f ||
      head.fn().sign() != Sign::Positive)
    return std::nullopt;
  auto magnitude = match_church(b.arg());
  if (!magnitude) return std::nullopt;
  bool non_negative;
  if (term_equal(head.arg(), builtin("T")))
    non_negative = true;
  else if (term_equal(head.arg(), builtin("F")))
    non_negative = false;
  else
    return std::nullopt;
  if (!non_negative && *magnitude == 0) return std::nullopt;  // (F, 0)
  const long long m = static_cast<long long>(*magnitude);
  return non_negative ? m : -m;
}

struct BoolFormula::NodeData {
  enum class Kind { Var, Not, And, Or } kind;
  unsigned index = 0;
  std::shared_ptr<const NodeData> left, right;
};

BoolFormula BoolFormula::var(unsigned index) {
  if (index == 0) throw std::invalid_argument("formula variables are 1-based");
  auto n = std::make_shared<NodeData>();
  n->kind = NodeData::Kind::Var;
  n->index = index;
  return BoolFormula(std::move(n));
}

BoolFormula BoolFormula::negation(BoolFormula f) {
  auto n = std::make_shared<NodeData>();
  n->kind = NodeData::Kind::Not;
  n->left = f.node_;
  return BoolFormula(std::move(n));
}

BoolFormula BoolFormula::conjunction(BoolFormula a, BoolFormula b) {
  auto n = std::make_shared<NodeData>();
  n->kind = NodeData::Kind::And;
  n->left = a.node_;
  n->right = b.node_;
  return BoolFormula(std::move(n));
}

BoolFormula BoolFormula::disjunction(BoolFormula a, BoolFormula b) {
  auto n = std::make_shared<NodeData>();
  n->kind = NodeData::Kind::Or;
  n->left = a.node_;
  n->right = b.node_;
  return BoolFormula(std::move(n));
}

namespace {

using FNode = BoolFormula::NodeData;

unsigned max_var_rec(const FNode& n) {
  switch (n.kind) {
    case FNode::Kind::Var: return n.index;
    case FNode::Kind::Not: return max_var_rec(*n.left);
    default:
      return std::max(max_var_rec(*n.left), max_var_rec(*n.right));
  }
}

bool eval_rec(const FNode& n, unsigned k, unsigned bits) {
  switch (n.kind) {
    case FNode::Kind::Var:
      return ((bits >> (k - n.index)) & 1u) != 0;
    case FNode::Kind::Not:
      return !eval_rec(*n.left, k, bits);
    case FNode::Kind::And:
      return eval_rec(*n.left, k, bits) && eval_rec(*n.right, k, bits);
    case FNode::Kind::Or:
      return eval_rec(*n.left, k, bits) || eval_rec(*n.right, k, bits);
  }
  return false;
}

void print_rec(const FNode& n, std::ostream& os) {
  switch (n.kind) {
    case FNode::Kind::Var:
      os << "v" << n.index;
      return;
    case FNode::Kind::Not:
      os << "!";
      print_rec(*n.left, os);
      return;
    case FNode::Kind::And:
    case FNode::Kind::Or:
      os << "(";
      print_rec(*n.left, os);
      os << (n.kind == FNode::Kind::And ? " & " : " | ");
      print_rec(*n.right, os);
      os << ")";
      return;
  }
}

}  // namespace

unsigned BoolFormula::max_var() const { return max_var_rec(*node_); }

bool BoolFormula::eval(unsigned k, unsigned bits) const {
  return eval_rec(*node_, k, bits);
}

std::string BoolFormula::to_string() const {
  std::ostringstream os;
  print_rec(*node_, os);
  return os.str();
}

namespace {

Term bool_term(bool b) { return builtin(b ? "T" : "F"); }

Term assignment_tuple(unsigned k, unsigned bits) {
  // Right-nested PAIR tuple; a bare boolean for k = 1.
  Term t = bool_term(((bits >> 0) & 1u) != 0);  // v_k
  for (unsigned j = k - 1; j >= 1; --j) {
    const bool vj = ((bits >> (k - j)) & 1u) != 0;
    t = Term::application(
        Term::application(builtin("PAIR"), bool_term(vj)), std::move(t));
  }
  return t;
}

// Projection of v_index from the tuple variable: FST (SND^(index-1) a),
// with the last slot just SND^(k-1) a, and the bare variable for k = 1.
Term projection(const std::string& a, unsigned index, unsigned k) {
  Term t = Term::variable(a);
  if (k == 1) return t;
  for (unsigned j = 1; j < index; ++j)
    t = Term::application(builtin("SND"), std::move(t));
  if (index < k) t = Term::application(builtin("FST"), std::move(t));
  return t;
}

Term compile_formula(const FNode& n, const std::string& a, unsigned k) {
  const Term IF = builtin("IF");
  auto if3 = [&](Term c, Term t, Term e) {
    return Term::application(
        Term::application(Term::application(IF, std::move(c)), std::move(t)),
        std::move(e));
  };
  switch (n.kind) {
    case FNode::Kind::Var:
      return projection(a, n.index, k);
    case FNode::Kind::Not:
      return if3(compile_formula(*n.left, a, k), builtin("F"), builtin("T"));
    case FNode::Kind::And:
      return if3(compile_formula(*n.left, a, k),
                 compile_formula(*n.right, a, k), builtin("F"));
    case FNode::Kind::Or:
      return if3(compile_formula(*n.left, a, k), builtin("T"),
                 compile_formula(*n.right, a, k));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Term all_assignments(unsigned k) {
  if (k == 0 || k > 20)
    throw std::invalid_argument("all_assignments: k must be in 1..20");
  std::vector<Term> tuples;
  tuples.reserve(1u << k);
  for (unsigned bits = 0; bits < (1u << k); ++bits)
    tuples.push_back(assignment_tuple(k, bits));
  return mk_collection(std::move(tuples));
}

Term build_check(const BoolFormula& f, unsigned k) {
  if (k == 0 || k > 20)
    throw std::invalid_argument("build_check: k must be in 1..20");
  if (f.max_var() > k)
    throw std::invalid_argument("build_check: formula variable above k");
  return Term::abstraction("a", compile_formula(f.node(), "a", k));
}

Term sat_pipeline_value(const BoolFormula& f, unsigned k,
                        const EvalConfig& cfg) {
  Term pipeline = mk_collection(
      {builtin("I"),
       Term::application(builtin("REMOVE-F"),
                         Term::application(build_check(f, k),
                                           all_assignments(k)))});
  EvalConfig qcfg = cfg;
  qcfg.level = Level::Q;
  return evaluate(pipeline, qcfg);
}

SatOutcome sat_observe(const BoolFormula& f, unsigned k,
                       const EvalConfig& cfg, unsigned trials, Rng& rng) {
  const Term value = sat_pipeline_value(f, k, cfg);
  const Term truth = builtin("T");
  for (unsigned trial = 0; trial < trials; ++trial) {
    Rng draw = rng.split(trial);
    Term outcome = xi_sample(value, draw);
    if (term_equal(outcome, truth)) return SatOutcome::Satisfiable;
  }
  return SatOutcome::Inconclusive;
}

}  // namespace lamq
