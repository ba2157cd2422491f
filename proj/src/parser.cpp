#include "cap/parser.hpp"

#include <cctype>
#include <vector>

#include "cap/errors.hpp"
#include "cap/typecheck.hpp"

namespace cap {

namespace {

enum class Tok {
  Ident,
  Atom,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Arrow,
  DArrow,
  Plus,
  At,
  Pipe,
  Comma,
  Colon,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string s, size_t n) {
      out.push_back(Token{k, std::move(s), tl, tc});
      advance(n);
    };
    switch (c) {
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      case '{': push(Tok::LBrace, "{", 1); continue;
      case '}': push(Tok::RBrace, "}", 1); continue;
      case '[': push(Tok::LBracket, "[", 1); continue;
      case ']': push(Tok::RBracket, "]", 1); continue;
      case '+': push(Tok::Plus, "+", 1); continue;
      case '@': push(Tok::At, "@", 1); continue;
      case '|': push(Tok::Pipe, "|", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case ':': push(Tok::Colon, ":", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      default: break;
    }
    if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Tok::Arrow, "->", 2);
        continue;
      }
      throw parse_error("stray '-'", line, col);
    }
    if (c == '=') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Tok::DArrow, "=>", 2);
        continue;
      }
      throw parse_error("stray '='", line, col);
    }
    if (c == '\'') {
      size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      if (j == i + 1) throw parse_error("empty constant name after '", line, col);
      push(Tok::Atom, text.substr(i + 1, j - i - 1), j - i);
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(Tok::Ident, text.substr(i, j - i), j - i);
      continue;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  TypeRef type_all() {
    TypeRef t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  TermRef term_all() {
    TermRef t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  TypeRef type() { return arrow(); }

  TermRef term() { return appterm(); }

 private:
  const Token& cur() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw parse_error(std::string("expected ") + what, cur().line, cur().col);
    return take();
  }

  // Types -----------------------------------------------------------------

  TypeRef arrow() {
    TypeRef l = uni();
    if (accept(Tok::Arrow)) return mk_arrow(l, arrow());
    return l;
  }

  TypeRef uni() {
    TypeRef l = app();
    while (accept(Tok::Plus)) l = mk_union(l, app());
    return l;
  }

  TypeRef app() {
    TypeRef l = tprimary();
    while (accept(Tok::At)) l = mk_comp(l, tprimary());
    return l;
  }

  static bool capitalized(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
  }

  TypeRef tprimary() {
    if (at(Tok::Atom)) return mk_atom(take().text);
    if (at(Tok::Ident)) {
      Token t = take();
      if (t.text == "mu") {
        Token binder = expect(Tok::Ident, "mu binder name");
        expect(Tok::Dot, "'.' after mu binder");
        TypeRef body = arrow();  // extends maximally right
        return mk_mu(binder.text, capitalized(binder.text) ? Sort::Type : Sort::Datatype, body);
      }
      return capitalized(t.text) ? mk_tvar(t.text) : mk_dvar(t.text);
    }
    if (accept(Tok::LParen)) {
      TypeRef t = arrow();
      expect(Tok::RParen, "')'");
      return t;
    }
    throw parse_error("expected a type", cur().line, cur().col);
  }

  // Terms -----------------------------------------------------------------

  bool starts_factor() const {
    return at(Tok::Ident) || at(Tok::Atom) || at(Tok::LBrace) || at(Tok::LParen);
  }

  TermRef appterm() {
    TermRef f = factor();
    while (starts_factor()) f = term_app(f, factor());
    return f;
  }

  TermRef factor() {
    if (at(Tok::Ident)) return term_var(take().text);
    if (at(Tok::Atom)) return term_const(take().text);
    if (accept(Tok::LBrace)) {
      std::vector<Branch> branches;
      branches.push_back(branch());
      while (accept(Tok::Pipe)) branches.push_back(branch());
      expect(Tok::RBrace, "'}'");
      return term_abs(std::move(branches));
    }
    if (accept(Tok::LParen)) {
      TermRef t = appterm();
      expect(Tok::RParen, "')'");
      return t;
    }
    throw parse_error("expected a term", cur().line, cur().col);
  }

  Branch branch() {
    PatternRef p = pattern();
    TypingContext theta;
    if (accept(Tok::LBracket)) {
      if (!at(Tok::RBracket)) {
        do {
          Token name = expect(Tok::Ident, "context variable name");
          expect(Tok::Colon, "':'");
          TypeRef ty = arrow();
          if (!theta.emplace(name.text, ty).second)
            throw parse_error("duplicate context entry '" + name.text + "'", name.line, name.col);
        } while (accept(Tok::Comma));
      }
      expect(Tok::RBracket, "']'");
    }
    expect(Tok::DArrow, "'=>'");
    TermRef body = appterm();
    return Branch{std::move(p), std::move(theta), std::move(body)};
  }

  bool starts_patfactor() const { return at(Tok::Ident) || at(Tok::Atom) || at(Tok::LParen); }

  PatternRef pattern() {
    PatternRef f = patfactor();
    while (starts_patfactor()) f = pat_comp(f, patfactor());
    return f;
  }

  PatternRef patfactor() {
    if (at(Tok::Ident)) return pat_matchable(take().text);
    if (at(Tok::Atom)) return pat_const(take().text);
    if (accept(Tok::LParen)) {
      PatternRef p = pattern();
      expect(Tok::RParen, "')'");
      return p;
    }
    throw parse_error("expected a pattern", cur().line, cur().col);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

TypeRef parse_type(const std::string& text) { return Parser(text).type_all(); }

TermRef parse_term(const std::string& text) {
  TermRef t = Parser(text).term_all();
  if (auto err = validate(t)) throw validation_error(err->message);
  return t;
}

TypingContext parse_context(const std::string& text) {
  TypingContext ctx;
  size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line =
        end == std::string::npos ? text.substr(start) : text.substr(start, end - start);
    ++lineno;
    if (size_t dash = line.find("--"); dash != std::string::npos) line = line.substr(0, dash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) {
      size_t colon = line.find(':');
      if (colon == std::string::npos)
        throw parse_error("context line is not 'name : Type'", lineno, 1);
      std::string name = line.substr(0, colon);
      // trim
      size_t b = name.find_first_not_of(" \t");
      size_t e = name.find_last_not_of(" \t");
      if (b == std::string::npos) throw parse_error("missing name in context line", lineno, 1);
      name = name.substr(b, e - b + 1);
      TypeRef ty = parse_type(line.substr(colon + 1));
      if (!ctx.emplace(name, ty).second)
        throw parse_error("duplicate context name '" + name + "'", lineno, 1);
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return ctx;
}

namespace {

// Precedence levels: arrow/mu = 0, union = 1, app = 2, leaf = 3.
void render_type_rec(TypeRef t, int min_level, std::string& out) {
  int level = 3;
  std::string s;
  switch (t->kind) {
    case TypeKind::Atom:
      out += "'";
      out += str(t->name);
      return;
    case TypeKind::DVar:
    case TypeKind::TVar:
      out += str(t->name);
      return;
    case TypeKind::Arrow:
      level = 0;
      break;
    case TypeKind::Union:
      level = 1;
      break;
    case TypeKind::Comp:
      level = 2;
      break;
    case TypeKind::Mu:
      level = 0;
      break;
  }
  bool parens = level < min_level;
  if (parens) out += "(";
  switch (t->kind) {
    case TypeKind::Arrow:
      render_type_rec(t->a, 1, out);
      out += " -> ";
      render_type_rec(t->b, 0, out);
      break;
    case TypeKind::Union:
      render_type_rec(t->a, 1, out);
      out += " + ";
      render_type_rec(t->b, 2, out);
      break;
    case TypeKind::Comp:
      render_type_rec(t->a, 2, out);
      out += " @ ";
      render_type_rec(t->b, 3, out);
      break;
    case TypeKind::Mu:
      out += "mu ";
      out += str(t->name);
      out += " . ";
      render_type_rec(t->a, 0, out);
      break;
    default:
      break;
  }
  if (parens) out += ")";
}

void render_pattern_rec(const PatternRef& p, bool arg_position, std::string& out) {
  switch (p->k) {
    case Pattern::K::Matchable:
      out += p->name;
      return;
    case Pattern::K::Const:
      out += "'";
      out += p->name;
      return;
    case Pattern::K::Comp:
      if (arg_position) out += "(";
      render_pattern_rec(p->a, false, out);
      out += " ";
      render_pattern_rec(p->b, true, out);
      if (arg_position) out += ")";
      return;
  }
}

void render_term_rec(const TermRef& t, bool arg_position, std::string& out) {
  switch (t->k) {
    case Term::K::Var:
      out += t->name;
      return;
    case Term::K::Const:
      out += "'";
      out += t->name;
      return;
    case Term::K::App:
      if (arg_position) out += "(";
      render_term_rec(t->fn, false, out);
      out += " ";
      render_term_rec(t->arg, true, out);
      if (arg_position) out += ")";
      return;
    case Term::K::Abs: {
      out += "{ ";
      bool first_branch = true;
      for (const Branch& br : t->branches) {
        if (!first_branch) out += " | ";
        first_branch = false;
        render_pattern_rec(br.pattern, false, out);
        if (!br.theta.empty()) {
          out += " [";
          bool first = true;
          for (const auto& [x, ty] : br.theta) {
            if (!first) out += ", ";
            first = false;
            out += x;
            out += " : ";
            render_type_rec(ty, 0, out);
          }
          out += "]";
        }
        out += " => ";
        render_term_rec(br.body, false, out);
      }
      out += " }";
      return;
    }
  }
}

}  // namespace

std::string render_type(TypeRef t) {
  std::string out;
  render_type_rec(t, 0, out);
  return out;
}

std::string render_term(const TermRef& t) {
  std::string out;
  render_term_rec(t, false, out);
  return out;
}

std::string render_pattern(const PatternRef& p) {
  std::string out;
  render_pattern_rec(p, false, out);
  return out;
}

}  // namespace cap
