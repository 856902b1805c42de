#include "defring/sexpr.hpp"

#include <cctype>
#include <cstdlib>

#include "defring/errors.hpp"

namespace defring::sexpr {

using namespace defring::lang;
using defring::poly::MonicPoly;

namespace {

void print_term(Term t, std::string& out) {
  switch (t->kind) {
    case TermKind::Zero: out += '0'; return;
    case TermKind::One: out += '1'; return;
    case TermKind::Int: out += std::to_string(t->num); return;
    case TermKind::Rat:
      out += std::to_string(t->num);
      out += '/';
      out += std::to_string(t->den);
      return;
    case TermKind::Var: out += t->var.text(); return;
    case TermKind::Add:
    case TermKind::Mul:
      out += t->kind == TermKind::Add ? "(+ " : "(* ";
      print_term(t->a, out);
      out += ' ';
      print_term(t->b, out);
      out += ')';
      return;
    case TermKind::Bar:
      out += "(bar ";
      print_term(t->a, out);
      out += ')';
      return;
  }
}

void print_formula(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FKind::True: out += "true"; return;
    case FKind::False: out += "false"; return;
    case FKind::Eq:
      out += "(= ";
      print_term(f->t1, out);
      out += ' ';
      print_term(f->t2, out);
      out += ')';
      return;
    case FKind::Not:
      out += "(not ";
      print_formula(f->a, out);
      out += ')';
      return;
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff: {
      const char* op = f->kind == FKind::Or        ? "or"
                       : f->kind == FKind::And     ? "and"
                       : f->kind == FKind::Implies ? "implies"
                                                   : "iff";
      out += '(';
      out += op;
      out += ' ';
      print_formula(f->a, out);
      out += ' ';
      print_formula(f->b, out);
      out += ')';
      return;
    }
    case FKind::Exists:
    case FKind::Forall:
      out += f->kind == FKind::Exists ? "(exists " : "(forall ";
      out += f->var.text();
      out += ' ';
      print_formula(f->a, out);
      out += ')';
      return;
  }
}

// --- parsing ------------------------------------------------------------

struct Token {
  enum Kind { LParen, RParen, Atom, End } kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      bump(src[pos]);
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur.kind = Token::End;
      cur.text.clear();
      return;
    }
    char c = src[pos];
    if (c == '(') {
      cur.kind = Token::LParen;
      cur.text = "(";
      bump(c);
      return;
    }
    if (c == ')') {
      cur.kind = Token::RParen;
      cur.text = ")";
      bump(c);
      return;
    }
    cur.kind = Token::Atom;
    cur.text.clear();
    while (pos < src.size()) {
      char d = src[pos];
      if (d == '(' || d == ')' || std::isspace(static_cast<unsigned char>(d))) break;
      cur.text += d;
      bump(d);
    }
  }
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  throw parse_error(msg, t.line, t.col);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_integer_atom(const std::string& s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i >= s.size()) return false;
  return all_digits(s.substr(i));
}

bool is_rational_atom(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 >= s.size()) return false;
  return is_integer_atom(s.substr(0, slash)) && all_digits(s.substr(slash + 1));
}

Var parse_var_atom(const Token& tok) {
  const std::string& s = tok.text;
  if (s.empty()) fail(tok, "empty variable atom");
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '_') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  // Trailing all-digit segments form the index; everything before is the name.
  size_t name_end = parts.size();
  while (name_end > 1 && all_digits(parts[name_end - 1])) --name_end;
  if (all_digits(parts[0]) || is_rational_atom(parts[0]))
    fail(tok, "variable name may not be numeric: " + s);
  Var v;
  v.name = parts[0];
  for (size_t i = 1; i < name_end; ++i) v.name += "_" + parts[i];
  for (size_t i = name_end; i < parts.size(); ++i)
    v.index.push_back(std::atoi(parts[i].c_str()));
  return v;
}

struct Parser {
  Lexer lx;
  explicit Parser(const std::string& s) : lx(s) {}

  const Token& tok() const { return lx.cur; }
  void next() { lx.advance(); }

  void expect_rparen(const char* what) {
    if (tok().kind != Token::RParen) fail(tok(), std::string("expected ')' to close ") + what);
    next();
  }

  std::string take_head() {
    if (tok().kind != Token::Atom) fail(tok(), "expected operator atom after '('");
    std::string h = tok().text;
    next();
    return h;
  }

  Term term() {
    if (tok().kind == Token::Atom) {
      Token t = tok();
      next();
      if (t.text == "0") return t_zero();
      if (t.text == "1") return t_one();
      if (is_integer_atom(t.text)) return t_int(std::atoll(t.text.c_str()));
      if (is_rational_atom(t.text)) {
        auto slash = t.text.find('/');
        long long num = std::atoll(t.text.substr(0, slash).c_str());
        long long den = std::atoll(t.text.substr(slash + 1).c_str());
        Term r = t_rat(num, den);
        // A denormalized literal would not round-trip canonically.
        return r;
      }
      return t_var(parse_var_atom(t));
    }
    if (tok().kind != Token::LParen) fail(tok(), "expected term");
    Token open = tok();
    next();
    std::string h = take_head();
    if (h == "+" || h == "*") {
      Term a = term();
      Term b = term();
      expect_rparen(h == "+" ? "(+ ...)" : "(* ...)");
      return h == "+" ? t_add(a, b) : t_mul(a, b);
    }
    if (h == "bar") {
      Term a = term();
      expect_rparen("(bar ...)");
      return t_bar(a);
    }
    fail(open, "unknown term operator '" + h + "'");
  }

  Var var() {
    if (tok().kind != Token::Atom) fail(tok(), "expected variable");
    Token t = tok();
    next();
    return parse_var_atom(t);
  }

  Formula formula() {
    if (tok().kind == Token::Atom) {
      if (tok().text == "true") {
        next();
        return f_true();
      }
      if (tok().text == "false") {
        next();
        return f_false();
      }
      fail(tok(), "expected formula, got atom '" + tok().text + "'");
    }
    if (tok().kind != Token::LParen) fail(tok(), "expected formula");
    Token open = tok();
    next();
    std::string h = take_head();
    if (h == "=") {
      Term a = term();
      Term b = term();
      expect_rparen("(= ...)");
      return f_eq(a, b);
    }
    if (h == "not") {
      Formula a = formula();
      expect_rparen("(not ...)");
      return f_not(a);
    }
    if (h == "or" || h == "and" || h == "implies" || h == "iff") {
      Formula a = formula();
      Formula b = formula();
      expect_rparen("binary connective");
      if (h == "or") return f_or(a, b);
      if (h == "and") return f_and(a, b);
      if (h == "implies") return f_implies(a, b);
      return f_iff(a, b);
    }
    if (h == "exists" || h == "forall") {
      Var v = var();
      Formula a = formula();
      expect_rparen("quantifier");
      return h == "exists" ? f_exists(v, a) : f_forall(v, a);
    }
    fail(open, "unknown formula operator '" + h + "'");
  }

  VirtualSet vset_tail(const Token& open) {
    (void)open;
    if (tok().kind != Token::LParen) fail(tok(), "expected (sig ...)");
    next();
    if (tok().kind != Token::Atom || tok().text != "sig") fail(tok(), "expected 'sig'");
    next();
    VirtualSet vs;
    while (tok().kind == Token::Atom) vs.sig.push_back(var());
    expect_rparen("(sig ...)");
    vs.body = formula();
    expect_rparen("(vset ...)");
    vs.lang = formula_contains_bar(vs.body) ? Lang::RingWithInvolution : Lang::Ring;
    return vs;
  }

  MonicPoly monic_tail(const Token& open) {
    if (tok().kind != Token::Atom || !all_digits(tok().text))
      fail(tok(), "expected degree after 'monic'");
    size_t n = static_cast<size_t>(std::atoll(tok().text.c_str()));
    next();
    std::vector<Term> cs;
    while (tok().kind != Token::RParen && tok().kind != Token::End) cs.push_back(term());
    expect_rparen("(monic ...)");
    if (cs.size() != n) fail(open, "monic degree does not match coefficient count");
    return MonicPoly(n, std::move(cs));
  }

  void expect_end() {
    if (tok().kind != Token::End) fail(tok(), "trailing input after expression");
  }
};

}  // namespace

std::string to_sexpr(Term t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string to_sexpr(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

std::string to_sexpr(const VirtualSet& v) {
  std::string out = "(vset (sig";
  for (const Var& x : v.sig) {
    out += ' ';
    out += x.text();
  }
  out += ") ";
  print_formula(v.body, out);
  out += ')';
  return out;
}

std::string to_sexpr(const MonicPoly& p) {
  std::string out = "(monic " + std::to_string(p.degree);
  for (Term c : p.coeffs) {
    out += ' ';
    print_term(c, out);
  }
  out += ')';
  return out;
}

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

Formula parse_formula(const std::string& text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

VirtualSet parse_vset(const std::string& text) {
  Parser p(text);
  if (p.tok().kind != Token::LParen) fail(p.tok(), "expected (vset ...)");
  Token open = p.tok();
  p.next();
  if (p.take_head() != "vset") fail(open, "expected 'vset'");
  VirtualSet vs = p.vset_tail(open);
  p.expect_end();
  return vs;
}

MonicPoly parse_monic(const std::string& text) {
  Parser p(text);
  if (p.tok().kind != Token::LParen) fail(p.tok(), "expected (monic ...)");
  Token open = p.tok();
  p.next();
  if (p.take_head() != "monic") fail(open, "expected 'monic'");
  MonicPoly m = p.monic_tail(open);
  p.expect_end();
  return m;
}

Object parse_object(const std::string& text) {
  Parser p(text);
  if (p.tok().kind == Token::LParen) {
    Lexer probe = p.lx;  // one-token lookahead past '('
    probe.advance();
    if (probe.cur.kind == Token::Atom && probe.cur.text == "vset") {
      Token open = p.tok();
      p.next();
      p.take_head();
      VirtualSet vs = p.vset_tail(open);
      p.expect_end();
      return vs;
    }
    if (probe.cur.kind == Token::Atom && probe.cur.text == "monic") {
      Token open = p.tok();
      p.next();
      p.take_head();
      MonicPoly m = p.monic_tail(open);
      p.expect_end();
      return m;
    }
  }
  Formula f = p.formula();
  p.expect_end();
  return f;
}

}  // namespace defring::sexpr
