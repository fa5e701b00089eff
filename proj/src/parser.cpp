#include "gm/parser.hpp"

#include <cctype>
#include <set>

namespace gm {

namespace {

enum class Tok {
  End, Int, Ident, True, False,
  Fun, Clam, Cfun, Let, In, Ref, Forall, Eps,
  TInt, TBool, TUnit, TRef, TCode,
  LParen, RParen, LBrace, RBrace, LBrack, RBrack,
  Lt, Gt, SubtypeOf,   // <  >  <:
  Arrow, FatArrow, Assign, Colon, Semi, Dot, Bang, Tilde,
  Backtick, Question, At, Plus, Minus, Star, Eq, Comma,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long ival = 0;
  Span span;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.span = {line, col};
    if (pos >= src.size()) return t;
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t s = pos;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        advance();
      t.kind = Tok::Int;
      t.text = src.substr(s, pos - s);
      t.ival = std::stol(t.text);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t s = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_'))
        advance();
      t.text = src.substr(s, pos - s);
      if (t.text == "true") t.kind = Tok::True;
      else if (t.text == "false") t.kind = Tok::False;
      else if (t.text == "fun") t.kind = Tok::Fun;
      else if (t.text == "clam") t.kind = Tok::Clam;
      else if (t.text == "cfun") t.kind = Tok::Cfun;
      else if (t.text == "let") t.kind = Tok::Let;
      else if (t.text == "in") t.kind = Tok::In;
      else if (t.text == "ref") t.kind = Tok::Ref;
      else if (t.text == "forall") t.kind = Tok::Forall;
      else if (t.text == "eps") t.kind = Tok::Eps;
      else if (t.text == "Int") t.kind = Tok::TInt;
      else if (t.text == "Bool") t.kind = Tok::TBool;
      else if (t.text == "Unit") t.kind = Tok::TUnit;
      else if (t.text == "Ref") t.kind = Tok::TRef;
      else if (t.text == "Code") t.kind = Tok::TCode;
      else t.kind = Tok::Ident;
      return t;
    }
    if (two('-', '>')) { advance(2); t.kind = Tok::Arrow; return t; }
    if (two('=', '>')) { advance(2); t.kind = Tok::FatArrow; return t; }
    if (two(':', '=')) { advance(2); t.kind = Tok::Assign; return t; }
    if (two('<', ':')) { advance(2); t.kind = Tok::SubtypeOf; return t; }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case '[': t.kind = Tok::LBrack; return t;
      case ']': t.kind = Tok::RBrack; return t;
      case '<': t.kind = Tok::Lt; return t;
      case '>': t.kind = Tok::Gt; return t;
      case ':': t.kind = Tok::Colon; return t;
      case ';': t.kind = Tok::Semi; return t;
      case '.': t.kind = Tok::Dot; return t;
      case '!': t.kind = Tok::Bang; return t;
      case '~': t.kind = Tok::Tilde; return t;
      case '`': t.kind = Tok::Backtick; return t;
      case '?': t.kind = Tok::Question; return t;
      case '@': t.kind = Tok::At; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '-': t.kind = Tok::Minus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '=': t.kind = Tok::Eq; return t;
      case ',': t.kind = Tok::Comma; return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         t.span);
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t idx = 0;
  std::vector<Span> labels;
  std::set<std::string> classifier_binders;

  explicit Parser(const std::string& src) {
    Lexer lx(src);
    for (;;) {
      Token t = lx.next();
      bool end = t.kind == Tok::End;
      toks.push_back(std::move(t));
      if (end) break;
    }
  }

  const Token& peek(size_t k = 0) const {
    size_t i = idx + k;
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token eat() { return toks[idx < toks.size() - 1 ? idx++ : idx]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().span);
    return eat();
  }
  static TermPtr spanned(TermPtr t, Span s) {
    auto n = std::make_shared<Term>(*t);
    n->span = s;
    return n;
  }
  int fresh_label(Span s) {
    labels.push_back(s);
    return static_cast<int>(labels.size()) - 1;
  }
  void declare_classifier(const std::string& name, Span s) {
    if (!classifier_binders.insert(name).second)
      throw ParseError("classifier binder '" + name +
                           "' is already bound; binders must be distinct",
                       s);
  }

  // ---- classifiers and types ----

  Classifier parse_classifier() {
    if (at(Tok::Eps)) {
      eat();
      return Classifier::eps();
    }
    if (at(Tok::Ident)) return Classifier::named(eat().text);
    throw ParseError("expected a classifier (eps or an identifier)",
                     peek().span);
  }

  GClassifier parse_gclassifier() {
    if (at(Tok::Question)) {
      eat();
      return GClassifier::unknown();
    }
    return GClassifier::known(parse_classifier());
  }

  CodeTypePtr parse_code_atom() {
    switch (peek().kind) {
      case Tok::TInt: eat(); return ct_int();
      case Tok::TBool: eat(); return ct_bool();
      case Tok::TUnit: eat(); return ct_unit();
      case Tok::Question: eat(); return ct_star();
      case Tok::LParen: {
        eat();
        CodeTypePtr t = parse_code_type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: throw ParseError("expected a code type", peek().span);
    }
  }

  CodeTypePtr parse_code_type() {
    CodeTypePtr t = parse_code_atom();
    if (at(Tok::Arrow)) {
      eat();
      return ct_arrow(std::move(t), parse_code_type());
    }
    return t;
  }

  TypePtr parse_type() {
    switch (peek().kind) {
      case Tok::Forall: {
        // Type-level binders are alpha-renamed by the checker, so the same
        // name may recur across annotations.
        eat();
        std::string a = expect(Tok::Ident, "classifier variable").text;
        expect(Tok::Dot, "'.'");
        return t_forall(a, parse_type());
      }
      case Tok::LBrack: {
        eat();
        Classifier lo = parse_classifier();
        expect(Tok::SubtypeOf, "'<:'");
        Classifier hi = parse_classifier();
        expect(Tok::RBrack, "']'");
        expect(Tok::FatArrow, "'=>'");
        return t_constr(std::move(lo), std::move(hi), parse_type());
      }
      default: break;
    }
    TypePtr t = parse_type_atom();
    if (at(Tok::Arrow)) {
      eat();
      return t_arrow(std::move(t), parse_type());
    }
    return t;
  }

  TypePtr parse_type_atom() {
    switch (peek().kind) {
      case Tok::TInt: eat(); return t_int();
      case Tok::TBool: eat(); return t_bool();
      case Tok::TUnit: eat(); return t_unit();
      case Tok::Question: eat(); return t_star();
      case Tok::TRef: eat(); return t_ref(parse_type_atom());
      case Tok::TCode: {
        eat();
        expect(Tok::Lt, "'<'");
        CodeTypePtr c = parse_code_type();
        expect(Tok::Gt, "'>'");
        expect(Tok::At, "'@'");
        GClassifier e = parse_gclassifier();
        return t_quote(std::move(c), std::move(e));
      }
      case Tok::LParen: {
        eat();
        TypePtr t = parse_type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: throw ParseError("expected a type", peek().span);
    }
  }

  // ---- terms ----

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case Tok::Int:
      case Tok::True:
      case Tok::False:
      case Tok::Ident:
      case Tok::LParen:
      case Tok::Backtick:
      case Tok::Tilde:
      case Tok::Bang:
      case Tok::Ref:
      case Tok::Fun:
      case Tok::Clam:
      case Tok::Cfun:
      case Tok::Let: return true;
      default: return false;
    }
  }

  TermPtr parse_expr() {
    TermPtr lhs = parse_assign();
    if (at(Tok::Semi)) {
      Span s = eat().span;
      return spanned(tm_seq(std::move(lhs), parse_expr()), s);
    }
    return lhs;
  }

  TermPtr parse_assign() {
    TermPtr lhs = parse_additive();
    if (at(Tok::Assign)) {
      Span s = eat().span;
      TermPtr rhs = parse_additive();
      return spanned(tm_assign(std::move(lhs), std::move(rhs), fresh_label(s)),
                     s);
    }
    return lhs;
  }

  TermPtr parse_additive() {
    TermPtr lhs = parse_mult();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      char op = at(Tok::Plus) ? '+' : '-';
      Span s = eat().span;
      lhs = spanned(tm_binop(op, std::move(lhs), parse_mult(), fresh_label(s)),
                    s);
    }
    return lhs;
  }

  TermPtr parse_mult() {
    TermPtr lhs = parse_app();
    while (at(Tok::Star)) {
      Span s = eat().span;
      lhs = spanned(tm_binop('*', std::move(lhs), parse_app(), fresh_label(s)),
                    s);
    }
    return lhs;
  }

  TermPtr parse_app() {
    TermPtr acc = parse_unary();
    for (;;) {
      if (at(Tok::LBrack)) {
        Span s = eat().span;
        Classifier e = parse_classifier();
        expect(Tok::RBrack, "']'");
        acc = spanned(tm_capp(std::move(acc), std::move(e), fresh_label(s)),
                      s);
      } else if (at(Tok::Bang) && !starts_atom(peek(1))) {
        Span s = eat().span;
        acc = spanned(tm_celim(std::move(acc), fresh_label(s)), s);
      } else if (starts_atom(peek())) {
        Span s = peek().span;
        acc = spanned(tm_app(std::move(acc), parse_unary(), fresh_label(s)),
                      s);
      } else {
        return acc;
      }
    }
  }

  TermPtr parse_unary() {
    if (at(Tok::Bang)) {
      Span s = eat().span;
      return spanned(tm_deref(parse_unary(), fresh_label(s)), s);
    }
    if (at(Tok::Ref)) {
      Span s = eat().span;
      return spanned(tm_ref(parse_unary()), s);
    }
    return parse_atom();
  }

  TermPtr parse_atom() {
    Span atom_span = peek().span;
    TermPtr r = parse_atom_inner();
    return spanned(std::move(r), atom_span);
  }

  TermPtr parse_atom_inner() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return tm_int(eat().ival);
      case Tok::True: eat(); return tm_bool(true);
      case Tok::False: eat(); return tm_bool(false);
      case Tok::Ident: return tm_var(eat().text);
      case Tok::LParen: {
        eat();
        if (at(Tok::RParen)) {
          eat();
          return tm_unit();
        }
        TermPtr m = parse_expr();
        expect(Tok::RParen, "')'");
        return m;
      }
      case Tok::Backtick: {
        eat();
        Classifier e = parse_classifier();
        expect(Tok::LBrace, "'{'");
        TermPtr body = parse_expr();
        expect(Tok::RBrace, "'}'");
        return tm_quote(std::move(e), std::move(body));
      }
      case Tok::Tilde: {
        Span s = eat().span;
        expect(Tok::LParen, "'('");
        TermPtr m = parse_expr();
        expect(Tok::RParen, "')'");
        return tm_splice(std::move(m), fresh_label(s));
      }
      case Tok::Fun: {
        eat();
        expect(Tok::LParen, "'('");
        std::string x = expect(Tok::Ident, "parameter name").text;
        expect(Tok::Colon, "':'");
        TypePtr ann = parse_type();
        expect(Tok::RParen, "')'");
        return tm_lam(std::move(x), std::move(ann), parse_expr());
      }
      case Tok::Clam: {
        Span s = eat().span;
        expect(Tok::LParen, "'('");
        std::string x = expect(Tok::Ident, "parameter name").text;
        expect(Tok::Colon, "':'");
        CodeTypePtr ann = parse_code_type();
        expect(Tok::RParen, "')'");
        expect(Tok::At, "'@'");
        std::string a = expect(Tok::Ident, "classifier binder").text;
        declare_classifier(a, s);
        expect(Tok::Dot, "'.'");
        return tm_codelam(std::move(x), std::move(ann), std::move(a),
                          parse_expr());
      }
      case Tok::Cfun: {
        Span s = eat().span;
        std::string a = expect(Tok::Ident, "classifier binder").text;
        declare_classifier(a, s);
        expect(Tok::Dot, "'.'");
        return tm_cabs(std::move(a), parse_expr());
      }
      case Tok::Let: {
        Span s = eat().span;
        std::string x = expect(Tok::Ident, "binding name").text;
        expect(Tok::Colon, "':'");
        TypePtr ann = parse_type();
        expect(Tok::Eq, "'='");
        TermPtr rhs = parse_expr();
        expect(Tok::In, "'in'");
        TermPtr body = parse_expr();
        return tm_app(tm_lam(std::move(x), std::move(ann), std::move(body)),
                      std::move(rhs), fresh_label(s));
      }
      case Tok::LBrack: {
        eat();
        Classifier lo = parse_classifier();
        expect(Tok::SubtypeOf, "'<:'");
        Classifier hi = parse_classifier();
        expect(Tok::RBrack, "']'");
        expect(Tok::FatArrow, "'=>'");
        return tm_cintro(std::move(lo), std::move(hi), parse_expr());
      }
      default: throw ParseError("expected an expression", t.span);
    }
  }
};

}  // namespace

Program parse_program(const std::string& src) {
  Parser p(src);
  Program prog;
  prog.term = p.parse_expr();
  if (!p.at(Tok::End))
    throw ParseError("unexpected trailing input", p.peek().span);
  prog.label_spans = std::move(p.labels);
  return prog;
}

TypePtr parse_type_string(const std::string& src) {
  Parser p(src);
  TypePtr t = p.parse_type();
  if (!p.at(Tok::End))
    throw ParseError("unexpected trailing input", p.peek().span);
  return t;
}

}  // namespace gm
