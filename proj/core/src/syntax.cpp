#include "lamq/syntax.hpp"

#include <cctype>
#include <cerrno>
#include <set>
#include <sstream>

#include "lamq/prelude.hpp"
#include "lamq/rewrite.hpp"

namespace lamq {

const char* level_name(Level level) {
  switch (level) {
    case Level::Lambda: return "lambda";
    case Level::P: return "lambda-p";
    case Level::Q: return "lambda-q";
  }
  return "?";
}

std::string ParseError::to_string() const {
  std::ostringstream os;
  os << "parse error at " << line << ":" << column << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << ", ";
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

namespace {

enum class Tok {
  Lambda, Dot, Comma, Tilde, LParen, RParen,
  Let, Equals, Semi, Ident, Int, End,
};

struct Token {
  Tok kind;
  std::string text;   // identifier spelling
  long long value = 0;  // integer literal
  std::size_t line = 1;
  std::size_t column = 1;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Let: return "'let'";
    case Tok::Equals: return "'='";
    case Tok::Semi: return "';'";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '\'' || c == '?' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError{line_, column_, msg, {}};
  }

  void advance() {
    skip_space();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '\\': current_.kind = Tok::Lambda; bump(); return;
      case '.': current_.kind = Tok::Dot; bump(); return;
      case ',': current_.kind = Tok::Comma; bump(); return;
      case '~': current_.kind = Tok::Tilde; bump(); return;
      case '(': current_.kind = Tok::LParen; bump(); return;
      case ')': current_.kind = Tok::RParen; bump(); return;
      case '=': current_.kind = Tok::Equals; bump(); return;
      case ';': current_.kind = Tok::Semi; bump(); return;
      default: break;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-' && (pos_ + 1 >= text_.size() ||
                       !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
        fail("stray '-' (negative literals are '-<digits>')");
      lex_int();
      return;
    }
    if (ident_start(c)) {
      lex_ident();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void lex_int() {
    std::string digits;
    bool negative = false;
    if (text_[pos_] == '-') {
      negative = true;
      bump();
    }
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      bump();
    }
    errno = 0;
    const long long v = std::stoll(digits);
    if (v > 1000000) fail("integer literal too large");
    current_.kind = Tok::Int;
    current_.value = negative ? -v : v;
  }

  void lex_ident() {
    std::string name;
    while (pos_ < text_.size() && ident_cont(text_[pos_])) {
      name += text_[pos_];
      bump();
    }
    if (name == "let") {
      current_.kind = Tok::Let;
    } else {
      current_.kind = Tok::Ident;
      current_.text = std::move(name);
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(const std::string& text, Level level) : lex_(text), level_(level) {}

  Term parse_term_all() {
    Term t = parse_cterm();
    expect(Tok::End);
    return t;
  }

  SourceProgram parse_program_all() {
    SourceProgram prog;
    while (lex_.peek().kind == Tok::Let) {
      lex_.take();
      Token name = expect(Tok::Ident);
      for (const auto& [n, _] : prog.definitions)
        if (n == name.text)
          throw ParseError{name.line, name.column,
                           "duplicate definition of '" + name.text + "'", {}};
      expect(Tok::Equals);
      Term body = parse_cterm();
      expect(Tok::Semi);
      prog.definitions.emplace_back(name.text, std::move(body));
    }
    if (lex_.peek().kind != Tok::End) prog.main = parse_cterm();
    expect(Tok::End);
    return prog;
  }

 private:
  Token expect(Tok kind) {
    if (lex_.peek().kind != kind) {
      const Token& t = lex_.peek();
      throw ParseError{t.line, t.column,
                       std::string("unexpected ") + tok_name(t.kind),
                       {tok_name(kind)}};
    }
    return lex_.take();
  }

  // cterm := aterm (',' aterm)*            collections, lowest precedence
  Term parse_cterm() {
    std::vector<Term> members;
    members.push_back(parse_aterm());
    while (lex_.peek().kind == Tok::Comma) {
      const Token comma = lex_.take();
      if (level_ == Level::Lambda)
        throw ParseError{comma.line, comma.column,
                         "collections are not part of the lambda level", {}};
      members.push_back(parse_aterm());
    }
    return members.size() == 1 ? members.front()
                               : mk_collection(std::move(members));
  }

  // aterm := '\' IDENT '.' aterm | appseq
  Term parse_aterm() {
    if (lex_.peek().kind == Tok::Lambda) return parse_lambda(Sign::Positive);
    return parse_appseq();
  }

  Term parse_lambda(Sign sign) {
    expect(Tok::Lambda);
    Token binder = expect(Tok::Ident);
    expect(Tok::Dot);
    Term body = parse_aterm();
    return Term::abstraction(binder.text, std::move(body), sign);
  }

  // appseq := atom+ ['\' IDENT '.' aterm]   left-associative application;
  // a trailing unparenthesized abstraction extends to the end of the aterm.
  Term parse_appseq() {
    Term t = parse_atom();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::Lambda) {
        t = Term::application(std::move(t), parse_lambda(Sign::Positive));
        return t;
      }
      if (k == Tok::Ident || k == Tok::Int || k == Tok::LParen ||
          k == Tok::Tilde) {
        t = Term::application(std::move(t), parse_atom());
        continue;
      }
      return t;
    }
  }

  // atom := IDENT | INT | '(' cterm ')' | '~' satom
  Term parse_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token id = lex_.take();
        return Term::variable(id.text);
      }
      case Tok::Int: {
        Token lit = lex_.take();
        if (lit.value >= 0) return church(static_cast<unsigned>(lit.value));
        return int_term(lit.value);
      }
      case Tok::LParen: {
        lex_.take();
        Term inner = parse_cterm();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Tilde: {
        Token tilde = lex_.take();
        if (level_ != Level::Q)
          throw ParseError{tilde.line, tilde.column,
                           "signs are not part of the " +
                               std::string(level_name(level_)) + " level",
                           {}};
        Term inner = parse_signable(tilde);
        return scale(Sign::Negative, inner);
      }
      default:
        throw ParseError{t.line, t.column,
                         std::string("unexpected ") + tok_name(t.kind),
                         {"identifier", "integer", "'('", "'\\'", "'~'"}};
    }
  }

  // The sign attaches to a variable or an abstraction (possibly
  // parenthesized, possibly an integer literal's expansion).
  Term parse_signable(const Token& tilde) {
    const Tok k = lex_.peek().kind;
    Term inner;
    if (k == Tok::Ident) {
      inner = Term::variable(lex_.take().text);
    } else if (k == Tok::Lambda) {
      inner = parse_lambda(Sign::Positive);
    } else if (k == Tok::Int) {
      Token lit = lex_.take();
      inner = lit.value >= 0 ? church(static_cast<unsigned>(lit.value))
                             : int_term(lit.value);
    } else if (k == Tok::LParen) {
      lex_.take();
      inner = parse_cterm();
      expect(Tok::RParen);
      if (!inner.is(TermKind::Variable) && !inner.is(TermKind::Abstraction))
        throw ParseError{tilde.line, tilde.column,
                         "'~' applies to a variable or an abstraction", {}};
    } else {
      throw ParseError{tilde.line, tilde.column,
                       "'~' applies to a variable or an abstraction", {}};
    }
    return inner;
  }

  Lexer lex_;
  Level level_;
};

}  // namespace

Term parse(const std::string& text, Level level) {
  return Parser(text, level).parse_term_all();
}

SourceProgram parse_program(const std::string& text, Level level) {
  return Parser(text, level).parse_program_all();
}

namespace {

// Rendering context, loosest to tightest.
enum class Ctx {
  Top,      // collection members allowed unparenthesized
  Member,   // inside a collection: no bare commas
  Operator, // operator of an application
  Operand,  // non-final operand
  Trailing, // final operand: a trailing abstraction may stay bare
};

bool is_canonical_binder(const std::string& name) {
  return !name.empty() && name[0] == '$';
}

struct Printer {
  std::map<std::string, std::string> display;  // canonical binder -> shown
  std::set<std::string> taken;

  std::string pick_display(const std::string& binder) {
    if (!is_canonical_binder(binder)) return binder;
    auto it = display.find(binder);
    if (it != display.end()) return it->second;
    static const char* pool = "abcdefghijklmnopqrstuvwxyz";
    for (std::size_t round = 0;; ++round) {
      for (std::size_t i = 0; i < 26; ++i) {
        std::string candidate(1, pool[i]);
        if (round > 0) candidate += std::to_string(round);
        if (!taken.count(candidate)) {
          taken.insert(candidate);
          display[binder] = candidate;
          return candidate;
        }
      }
    }
  }

  std::string var_name(const std::string& name) {
    if (!is_canonical_binder(name)) return name;
    auto it = display.find(name);
    return it != display.end() ? it->second : name;
  }

  void render(const Term& t, Ctx ctx, std::string& out) {
    switch (t.kind()) {
      case TermKind::Variable:
        if (t.sign() == Sign::Negative) out += '~';
        out += var_name(t.name());
        return;
      case TermKind::Abstraction: {
        const bool parens = ctx == Ctx::Operator || ctx == Ctx::Operand;
        if (parens) out += '(';
        if (t.sign() == Sign::Negative) out += '~';
        out += '\\';
        const std::string shown = pick_display(t.binder());
        out += shown;
        out += '.';
        render(t.body(), Ctx::Member, out);
        if (parens) out += ')';
        return;
      }
      case TermKind::Application: {
        const bool parens = ctx == Ctx::Operand || ctx == Ctx::Trailing;
        if (parens) out += '(';
        render(t.fn(), Ctx::Operator, out);
        out += ' ';
        // A bare application in operator position has more operands
        // following it, so its own operand may not be a bare abstraction.
        render(t.arg(),
               (!parens && ctx == Ctx::Operator) ? Ctx::Operand : Ctx::Trailing,
               out);
        if (parens) out += ')';
        return;
      }
      case TermKind::Collection: {
        const bool parens = ctx != Ctx::Top;
        if (parens) out += '(';
        const auto& ms = t.members();
        for (std::size_t i = 0; i < ms.size(); ++i) {
          if (i) out += ", ";
          render(ms[i], Ctx::Member, out);
        }
        if (parens) out += ')';
        return;
      }
      case TermKind::Negated: {
        // Residual wrapper on an application; cannot be normalized away.
        out += "~(";
        render(t.inner(), Ctx::Top, out);
        out += ')';
        return;
      }
    }
  }
};

}  // namespace

std::string print(const Term& t) {
  Printer p;
  // Reserve every free variable's spelling so display names never collide.
  for (const auto& v : free_vars(t))
    if (!is_canonical_binder(v)) p.taken.insert(v);
  std::string out;
  p.render(t, Ctx::Top, out);
  return out;
}

Term Env::resolve(const Term& t) const {
  Term cur = t;
  // Later entries only reference earlier ones; substituting in reverse
  // definition order resolves chains in one pass.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    cur = substitute(cur, it->second, it->first);
  return cur;
}

void Env::define(const std::string& name, const Term& body) {
  Term resolved = resolve(body);
  const auto fv = free_vars(resolved);
  if (!fv.empty())
    throw ParseError{
        1, 1, "definition '" + name + "' references unknown name '" +
                  *fv.begin() + "'", {}};
  auto it = index_.find(name);
  if (it != index_.end()) {
    entries_[it->second].second = std::move(resolved);
  } else {
    index_[name] = entries_.size();
    entries_.emplace_back(name, std::move(resolved));
  }
}

std::optional<Term> Env::load(const SourceProgram& program) {
  for (const auto& [name, body] : program.definitions) define(name, body);
  if (!program.main) return std::nullopt;
  return resolve(*program.main);
}

const Term* Env::lookup(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second].second;
}

namespace {

void scan_level(const Term& t, bool& has_collection, bool& has_negative) {
  switch (t.kind()) {
    case TermKind::Variable:
      if (t.sign() == Sign::Negative) has_negative = true;
      return;
    case TermKind::Abstraction:
      if (t.sign() == Sign::Negative) has_negative = true;
      scan_level(t.body(), has_collection, has_negative);
      return;
    case TermKind::Application:
      scan_level(t.fn(), has_collection, has_negative);
      scan_level(t.arg(), has_collection, has_negative);
      return;
    case TermKind::Collection:
      has_collection = true;
      for (const auto& m : t.members())
        scan_level(m, has_collection, has_negative);
      return;
    case TermKind::Negated:
      has_negative = true;
      scan_level(t.inner(), has_collection, has_negative);
      return;
  }
}

}  // namespace

Level min_level(const Term& t) {
  bool has_collection = false, has_negative = false;
  scan_level(t, has_collection, has_negative);
  if (has_negative) return Level::Q;
  if (has_collection) return Level::P;
  return Level::Lambda;
}

std::optional<Term> find_level_violation(const Term& t, Level level) {
  switch (t.kind()) {
    case TermKind::Variable:
      if (t.sign() == Sign::Negative && level != Level::Q) return t;
      return std::nullopt;
    case TermKind::Abstraction:
      if (t.sign() == Sign::Negative && level != Level::Q) return t;
      return find_level_violation(t.body(), level);
    case TermKind::Application:
      if (auto v = find_level_violation(t.fn(), level)) return v;
      return find_level_violation(t.arg(), level);
    case TermKind::Collection:
      if (level == Level::Lambda) return t;
      for (const auto& m : t.members())
        if (auto v = find_level_violation(m, level)) return v;
      return std::nullopt;
    case TermKind::Negated:
      if (level != Level::Q) return t;
      return find_level_violation(t.inner(), level);
  }
  return std::nullopt;
}

}  // namespace lamq
