// lambdaq: parse, evaluate, observe and analyze terms of the plain,
// collection and signed-collection lambda calculi.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lamq/eval.hpp"
#include "lamq/observe.hpp"
#include "lamq/prelude.hpp"
#include "lamq/rewrite.hpp"
#include "lamq/syntax.hpp"
#include "lamq/term.hpp"

namespace {

using namespace lamq;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;        // parse or evaluation failure
constexpr int kExitUnobservable = 2; // empty collection after cancellation

Level parse_level(const std::string& s) {
  if (s == "l") return Level::Lambda;
  if (s == "p") return Level::P;
  if (s == "q") return Level::Q;
  throw CLI::ValidationError("--level must be one of l, p, q");
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Session {
  Level level = Level::Q;
  EvalConfig cfg{};
  Rng rng{0};
  std::uint64_t draws = 0;  // draw counter for stream splitting
  bool trace = false;
  Env env;

  explicit Session(Level lvl, std::uint64_t seed, std::uint64_t fuel)
      : level(lvl), rng(seed) {
    cfg.level = lvl;
    cfg.fuel = fuel;
    env = default_env(lvl);
  }

  void set_level(Level lvl) {
    level = lvl;
    cfg.level = lvl;
    env = default_env(lvl);
  }

  Term eval_term(const Term& resolved, std::ostream& out) {
    if (!trace) return evaluate(resolved, cfg);
    return evaluate_traced(resolved, cfg, [&](const Step& s) {
      out << s.rule << " @ " << s.path.to_string() << ": " << print(s.term)
          << "\n";
    });
  }

  Term observe_value(const Term& value) {
    Rng draw = rng.split(draws++);
    switch (level) {
      case Level::Lambda: return value;
      case Level::P: return theta_sample(value, draw);
      case Level::Q: return xi_sample(value, draw);
    }
    return value;
  }
};

int run_once(Session& session, const std::string& mode, const Term& main_term,
             std::uint64_t samples, std::ostream& out) {
  Term value = session.eval_term(session.env.resolve(main_term), out);

  if (mode == "eval") {
    out << print(value) << "\n";
    return kExitOk;
  }
  if (mode == "observe") {
    out << "seed: " << session.rng.seed() << "\n";
    out << print(session.observe_value(value)) << "\n";
    return kExitOk;
  }
  if (mode == "dist") {
    Distribution d = session.level == Level::Lambda
                         ? Distribution::point(value)
                         : exact_distribution(value);
    out << d.serialize();
    return kExitOk;
  }
  if (mode == "sample") {
    out << "seed: " << session.rng.seed() << "\n";
    std::map<CanonicalTerm, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < samples; ++i) {
      Term drawn = session.observe_value(value);
      auto key = alpha_canonical(drawn);
      ++counts.emplace(std::move(key), 0).first->second;
    }
    for (const auto& [term, count] : counts)
      out << count << "/" << samples << " " << print(term.get()) << "\n";
    return kExitOk;
  }
  throw CLI::ValidationError("--mode must be one of eval, observe, dist, sample");
}

void repl(Session& session, std::istream& in, std::ostream& out) {
  out << "lambdaq repl (level " << level_name(session.level)
      << ", seed " << session.rng.seed() << "); :quit to exit\n";
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    try {
      if (line[first] == ':') {
        std::istringstream cmd(line.substr(first + 1));
        std::string word;
        cmd >> word;
        if (word == "quit" || word == "q") return;
        if (word == "trace") {
          std::string flag;
          cmd >> flag;
          session.trace = flag == "on";
          out << "trace " << (session.trace ? "on" : "off") << "\n";
        } else if (word == "seed") {
          std::uint64_t s;
          if (cmd >> s) {
            session.rng = Rng(s);
            session.draws = 0;
          }
          out << "seed: " << session.rng.seed() << "\n";
        } else if (word == "fuel") {
          std::uint64_t f;
          if (cmd >> f && f >= 1) session.cfg.fuel = f;
          out << "fuel: " << session.cfg.fuel << "\n";
        } else if (word == "level") {
          std::string lvl;
          if (cmd >> lvl) session.set_level(parse_level(lvl));
          out << "level: " << level_name(session.level) << "\n";
        } else if (word == "load") {
          std::string path;
          cmd >> path;
          std::ifstream file(path);
          if (!file) {
            out << "cannot open " << path << "\n";
            continue;
          }
          std::stringstream buffer;
          buffer << file.rdbuf();
          auto prog = parse_program(buffer.str(), session.level);
          auto main_term = session.env.load(prog);
          out << "loaded " << prog.definitions.size() << " definition(s)\n";
          if (main_term)
            out << print(session.observe_value(
                       session.eval_term(*main_term, out)))
                << "\n";
        } else if (word == "dist" || word == "obs" || word == "sample") {
          std::uint64_t n = 1;
          if (word == "sample") cmd >> n;
          std::string rest;
          std::getline(cmd, rest);
          Term t = session.env.resolve(parse(rest, session.level));
          Term value = session.eval_term(t, out);
          if (word == "dist") {
            Distribution d = session.level == Level::Lambda
                                 ? Distribution::point(value)
                                 : exact_distribution(value);
            out << d.serialize();
          } else if (word == "obs") {
            out << print(session.observe_value(value)) << "\n";
          } else {
            std::map<CanonicalTerm, std::uint64_t> counts;
            for (std::uint64_t i = 0; i < n; ++i) {
              auto key = alpha_canonical(session.observe_value(value));
              ++counts.emplace(std::move(key), 0).first->second;
            }
            for (const auto& [term, count] : counts)
              out << count << "/" << n << " " << print(term.get()) << "\n";
          }
        } else {
          out << "directives: :dist <t>  :obs <t>  :sample <n> <t>  "
                 ":trace on|off  :seed <n>  :fuel <n>  :load <file>  "
                 ":level [l|p|q]  :quit\n";
        }
        continue;
      }
      // `let name = term` extends the session; a bare term is observed.
      auto prog = parse_program(line, session.level);
      auto main_term = session.env.load(prog);
      if (main_term)
        out << print(session.observe_value(session.eval_term(*main_term, out)))
            << "\n";
    } catch (const ParseError& e) {
      out << e.to_string() << "\n";
    } catch (const EvalError& e) {
      out << e.message() << "\n";
    } catch (const ObservationFailure& e) {
      out << e.message() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Interpreter for the lambda calculus with collections (random "
      "sampling) and signed collections (cancellation at observation)"};

  std::string level_str = "q";
  std::string mode = "observe";
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1;
  std::uint64_t fuel = 1'000'000;
  bool trace = false;
  bool want_repl = false;
  std::optional<std::string> expr;
  std::optional<std::string> source_arg;

  app.add_option("--level", level_str, "Language level: l, p or q")
      ->check(CLI::IsMember({"l", "p", "q"}));
  app.add_option("--mode", mode, "eval | observe | dist | sample")
      ->check(CLI::IsMember({"eval", "observe", "dist", "sample"}));
  app.add_option("--seed", seed, "Seed for the deterministic generator");
  app.add_option("--samples", samples, "Draw count for --mode sample")
      ->check(CLI::PositiveNumber);
  app.add_option("--fuel", fuel, "Maximum beta contractions")
      ->check(CLI::PositiveNumber);
  app.add_flag("--trace", trace, "Print each reduction step");
  app.add_flag("--repl", want_repl, "Start an interactive session");
  app.add_option("--expr", expr, "Inline term or program text");
  app.add_option("source", source_arg,
                 "Program file (falls back to inline text)");

  CLI11_PARSE(app, argc, argv);

  const Level level = parse_level(level_str);
  Session session(level, seed.value_or(entropy_seed()), fuel);
  session.trace = trace;

  try {
    if (want_repl || (!expr && !source_arg)) {
      repl(session, std::cin, std::cout);
      return kExitOk;
    }

    std::string text;
    if (expr) {
      text = *expr;
    } else {
      std::error_code ec;
      if (std::filesystem::exists(*source_arg, ec)) {
        std::ifstream file(*source_arg);
        std::stringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
      } else {
        text = *source_arg;  // inline text
      }
    }

    SourceProgram prog = parse_program(text, level);
    std::optional<Term> main_term;
    for (const auto& [name, body] : prog.definitions)
      session.env.define(name, body);
    if (prog.main) main_term = *prog.main;
    if (!main_term) {
      std::cerr << "no term to run (definitions only)\n";
      return kExitError;
    }
    return run_once(session, mode, *main_term, samples, std::cout);
  } catch (const ParseError& e) {
    std::cerr << e.to_string() << "\n";
    return kExitError;
  } catch (const EvalError& e) {
    std::cerr << e.message() << "\n";
    return kExitError;
  } catch (const ObservationFailure& e) {
    std::cerr << e.message() << "\n";
    return kExitUnobservable;
  }
}
