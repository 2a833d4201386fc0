#pragma once

#include <cctype>
#include <map>
#include <variant>

#include "rl2/formula.hpp"
#include "rl2/printer.hpp"
#include "rl2/sequent.hpp"

namespace rl2 {

struct SourceSpan {
  size_t byte_start = 0;
  size_t byte_end = 0;
  size_t line = 1;
  size_t column = 1;
};

struct ParseError {
  SourceSpan span;
  std::vector<std::string> expected;  // nonempty
  std::string found;
  std::string hint;

  std::string message() const {
    std::string out = "expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i) out += expected.size() == 2 ? " or " : (i + 1 == expected.size() ? ", or " : ", ");
      out += expected[i];
    }
    out += ", found " + found;
    out += " at " + std::to_string(span.line) + ":" + std::to_string(span.column);
    if (!hint.empty()) out += " (" + hint + ")";
    return out;
  }
};

template <class T>
using ParseResult = std::variant<T, ParseError>;

template <class T>
bool parse_ok(const ParseResult<T>& r) {
  return std::holds_alternative<T>(r);
}

namespace detail {

enum class Tok {
  Ident,     // classified identifier, e.g. a1, X, P3
  Keyword,   // iota
  LParen,
  RParen,
  Comma,
  Dot,
  Bang,
  Amp,
  Pipe,
  Arrow,      // ->
  DArrow,     // <->
  Eq,         // =
  SeqArrow,   // =>
  Lambda,     // backslash
  LBrace,
  RBrace,
  Semi,
  Colon,
  Number,
  End,
};

struct Token {
  Tok tok = Tok::End;
  std::string text;
  SourceSpan span;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  size_t line = 1;
  size_t col = 1;

  explicit Lexer(std::string_view s) : src(s) {}

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  bool starts_with(std::string_view s) const { return src.substr(pos, s.size()) == s; }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() && (std::isspace((unsigned char)src[pos]) || src[pos] == '$'))
        advance(1);
      // LaTeX spacing macros read as whitespace
      static constexpr std::string_view spacing[] = {"\\,", "\\;", "\\ ", "\\quad", "\\qquad",
                                                     "\\!"};
      bool ate = false;
      for (auto s : spacing)
        if (starts_with(s)) {
          advance(s.size());
          ate = true;
          break;
        }
      if (!ate) return;
    }
  }

  SourceSpan span_from(size_t start, size_t sline, size_t scol) const {
    return {start, pos, sline, scol};
  }

  Token make(Tok t, size_t start, size_t sline, size_t scol) {
    return {t, std::string(src.substr(start, pos - start)), span_from(start, sline, scol)};
  }

  // Maps LaTeX commands onto the ASCII tokens they stand for.
  std::optional<Token> latex_command(size_t start, size_t sline, size_t scol) {
    struct Cmd {
      std::string_view name;
      Tok tok;
      std::string text;
    };
    static const Cmd cmds[] = {
        {"\\Rightarrow", Tok::SeqArrow, "=>"},
        {"\\leftrightarrow", Tok::DArrow, "<->"},
        {"\\rightarrow", Tok::Arrow, "->"},
        {"\\to", Tok::Arrow, "->"},
        {"\\land", Tok::Amp, "&"},
        {"\\wedge", Tok::Amp, "&"},
        {"\\lor", Tok::Pipe, "|"},
        {"\\vee", Tok::Pipe, "|"},
        {"\\neg", Tok::Bang, "!"},
        {"\\lnot", Tok::Bang, "!"},
        {"\\forall", Tok::Ident, "A"},
        {"\\exists", Tok::Ident, "E"},
        {"\\lambda", Tok::Lambda, "\\"},
        {"\\iota", Tok::Keyword, "iota"},
    };
    for (auto& c : cmds) {
      if (starts_with(c.name)) {
        // command must not continue as a longer letter sequence
        size_t after = pos + c.name.size();
        if (after < src.size() && std::isalpha((unsigned char)src[after])) continue;
        advance(c.name.size());
        Token t = make(c.tok, start, sline, scol);
        t.text = c.text;
        return t;
      }
    }
    return std::nullopt;
  }

  Token next() {
    skip_ws();
    size_t start = pos, sline = line, scol = col;
    if (pos >= src.size()) return make(Tok::End, start, sline, scol);
    char c = src[pos];
    switch (c) {
      case '(': advance(1); return make(Tok::LParen, start, sline, scol);
      case ')': advance(1); return make(Tok::RParen, start, sline, scol);
      case '{': advance(1); return make(Tok::LBrace, start, sline, scol);
      case '}': advance(1); return make(Tok::RBrace, start, sline, scol);
      case ',': advance(1); return make(Tok::Comma, start, sline, scol);
      case '.': advance(1); return make(Tok::Dot, start, sline, scol);
      case ';': advance(1); return make(Tok::Semi, start, sline, scol);
      case ':': advance(1); return make(Tok::Colon, start, sline, scol);
      case '!': advance(1); return make(Tok::Bang, start, sline, scol);
      case '&': advance(1); return make(Tok::Amp, start, sline, scol);
      case '|': advance(1); return make(Tok::Pipe, start, sline, scol);
      case '\\': {
        if (auto t = latex_command(start, sline, scol)) return *t;
        advance(1);
        return make(Tok::Lambda, start, sline, scol);
      }
      case '-':
        if (starts_with("->")) {
          advance(2);
          return make(Tok::Arrow, start, sline, scol);
        }
        break;
      case '<':
        if (starts_with("<->")) {
          advance(3);
          return make(Tok::DArrow, start, sline, scol);
        }
        break;
      case '=':
        if (starts_with("=>")) {
          advance(2);
          return make(Tok::SeqArrow, start, sline, scol);
        }
        advance(1);
        return make(Tok::Eq, start, sline, scol);
      default: break;
    }
    if (std::isdigit((unsigned char)c)) {
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) advance(1);
      return make(Tok::Number, start, sline, scol);
    }
    if (std::isalpha((unsigned char)c)) {
      while (pos < src.size() && std::isalnum((unsigned char)src[pos])) advance(1);
      // subscripted index: a_1 or a_{12}
      if (pos < src.size() && src[pos] == '_') {
        size_t save = pos;
        advance(1);
        bool braced = pos < src.size() && src[pos] == '{';
        if (braced) advance(1);
        size_t digits = 0;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
          advance(1);
          ++digits;
        }
        bool closed = !braced || (pos < src.size() && src[pos] == '}');
        if (digits && closed) {
          if (braced) advance(1);
        } else {
          pos = save;  // not a subscript; leave '_' for the error path
        }
      }
      Token t = make(Tok::Ident, start, sline, scol);
      // normalize subscripts to the plain spelling
      std::string norm;
      for (char ch : t.text)
        if (ch != '_' && ch != '{' && ch != '}') norm += ch;
      t.text = norm;
      if (t.text == "iota") t.tok = Tok::Keyword;
      return t;
    }
    // unknown byte: emit it as a keyword token no grammar rule expects, so
    // the parser reports it with a proper span
    advance(1);
    return Token{Tok::Keyword, std::string(1, c), span_from(start, sline, scol)};
  }
};

// Arity inference across one parse unit. Symbols join equivalence classes;
// an application pins the class arity; unconstrained classes default to 1.
struct ArityTable {
  struct Entry {
    int parent;
    int arity = 0;  // 0 = unknown
  };
  std::vector<Entry> nodes;
  std::map<std::tuple<SymbolKind, std::string, int>, int> ids;

  int find(int i) {
    while (nodes[i].parent != i) i = nodes[i].parent = nodes[nodes[i].parent].parent;
    return i;
  }
  int id_of(SymbolKind kind, const std::string& base, std::optional<int> index) {
    auto key = std::make_tuple(kind, base, index ? *index : -1);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = (int)nodes.size();
    nodes.push_back({id, 0});
    ids.emplace(key, id);
    return id;
  }
  // returns false on clash
  bool constrain(int id, int arity) {
    int r = find(id);
    if (nodes[r].arity == 0) {
      nodes[r].arity = arity;
      return true;
    }
    return nodes[r].arity == arity;
  }
  bool unify(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    if (nodes[ra].arity && nodes[rb].arity && nodes[ra].arity != nodes[rb].arity) return false;
    if (!nodes[ra].arity) std::swap(ra, rb);
    nodes[rb].parent = ra;
    return true;
  }
  int arity_of(int id) {
    int a = nodes[find(id)].arity;
    return a ? a : 1;  // default when never applied
  }
};

struct PendingSym {
  SymbolKind kind;
  std::string base;
  std::optional<int> index;
  int arity_id = -1;  // relational/pred kinds only
};

// Formula skeleton carrying unresolved arities; finalized once the whole
// unit has been read.
struct Parser {
  Lexer lex;
  Token cur;
  ArityTable arities;
  std::optional<ParseError> error;

  explicit Parser(std::string_view src) : lex(src) { cur = lex.next(); }

  void bump() { cur = lex.next(); }

  bool fail(std::vector<std::string> expected, std::string hint = "") {
    if (!error)
      error = ParseError{cur.span, std::move(expected),
                         cur.tok == Tok::End ? "end of input" : "'" + cur.text + "'",
                         std::move(hint)};
    return false;
  }

  bool expect(Tok t, const char* what) {
    if (cur.tok != t) return fail({what});
    bump();
    return true;
  }

  static std::optional<std::pair<std::string, std::optional<int>>> split_ident(
      const std::string& text) {
    if (text.empty() || !std::isalpha((unsigned char)text[0])) return std::nullopt;
    std::string base(1, text[0]);
    if (text.size() == 1) return std::make_pair(base, std::optional<int>());
    for (size_t i = 1; i < text.size(); ++i)
      if (!std::isdigit((unsigned char)text[i])) return std::nullopt;
    return std::make_pair(base, std::optional<int>(std::stoi(text.substr(1))));
  }

  // Classified identifier at the cursor, without consuming it.
  std::optional<PendingSym> peek_symbol() {
    if (cur.tok != Tok::Ident) return std::nullopt;
    auto split = split_ident(cur.text);
    if (!split) return std::nullopt;
    auto kind = classify_base(split->first);
    if (!kind) return std::nullopt;
    PendingSym s{*kind, split->first, split->second, -1};
    return s;
  }

  PendingSym take_symbol(PendingSym s) {
    if (s.kind == SymbolKind::RelVar || s.kind == SymbolKind::RelPar ||
        s.kind == SymbolKind::RelConst || s.kind == SymbolKind::PredSym)
      s.arity_id = arities.id_of(s.kind, s.base, s.index);
    bump();
    return s;
  }

  SymbolName resolve(const PendingSym& s) {
    SymbolName n{s.kind, s.base, s.index, 0};
    if (s.arity_id >= 0) n.arity = arities.arity_of(s.arity_id);
    return n;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// The grammar:
//   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
//   or := and ("|" and)* ; and := unary ("&" unary)* ;
//   unary := "!" unary | quant | atom ;
//   quant := ("A"|"E") indvar "." formula | ("A2"|"E2") relvar "." formula ;
//   atom := pred "(" terms ")" | relsym "(" terms ")" | term "=" term
//         | relsym "=" relsym | "(" "\" indvar formula ")" lamarg1
//         | "(" "\" relvar formula ")" lamarg2 | "(" formula ")" ;
//   lamarg1 := term | "(" "iota" indvar "." formula ")" ;
//   lamarg2 := "(" "iota" relvar "." formula ")" ;
// ---------------------------------------------------------------------------

namespace detail {

// Skeleton tree; arities resolve after the pass.
struct Skel;
using SkelPtr = std::shared_ptr<Skel>;
struct Skel {
  enum Kind { Atom, IndEqK, RelAppK, RelEqK, NegK, BinK, QuantK, Lam1K, Lam2K } kind;
  PendingSym head;                 // Atom/RelApp head, Quant/Lam binder
  std::vector<PendingSym> terms;   // atom args or the two identity sides
  BinOp op{};
  QuantKind qk{};
  SkelPtr lhs, rhs, body, cond;
  PendingSym iota_var;             // Lam1K (iota form) / Lam2K
  bool lam1_plain_term = false;    // Lam1K: argument is terms[0]
};

struct FormulaParser : Parser {
  using Parser::Parser;

  bool is_quant_head() {
    if (cur.tok != Tok::Ident) return false;
    return cur.text == "A" || cur.text == "E" || cur.text == "A2" || cur.text == "E2";
  }

  SkelPtr parse_formula_top() {
    SkelPtr f = parse_iff();
    return f;
  }

  SkelPtr parse_iff() {
    SkelPtr l = parse_imp();
    if (!l) return nullptr;
    while (cur.tok == Tok::DArrow) {
      bump();
      SkelPtr r = parse_imp();
      if (!r) return nullptr;
      auto n = std::make_shared<Skel>();
      n->kind = Skel::BinK;
      n->op = BinOp::Iff;
      n->lhs = l;
      n->rhs = r;
      l = n;
    }
    return l;
  }

  SkelPtr parse_imp() {
    SkelPtr l = parse_or();
    if (!l) return nullptr;
    if (cur.tok == Tok::Arrow) {
      bump();
      SkelPtr r = parse_imp();
      if (!r) return nullptr;
      auto n = std::make_shared<Skel>();
      n->kind = Skel::BinK;
      n->op = BinOp::Imp;
      n->lhs = l;
      n->rhs = r;
      return n;
    }
    return l;
  }

  SkelPtr parse_or() {
    SkelPtr l = parse_and();
    if (!l) return nullptr;
    while (cur.tok == Tok::Pipe) {
      bump();
      SkelPtr r = parse_and();
      if (!r) return nullptr;
      auto n = std::make_shared<Skel>();
      n->kind = Skel::BinK;
      n->op = BinOp::Or;
      n->lhs = l;
      n->rhs = r;
      l = n;
    }
    return l;
  }

  SkelPtr parse_and() {
    SkelPtr l = parse_unary();
    if (!l) return nullptr;
    while (cur.tok == Tok::Amp) {
      bump();
      SkelPtr r = parse_unary();
      if (!r) return nullptr;
      auto n = std::make_shared<Skel>();
      n->kind = Skel::BinK;
      n->op = BinOp::And;
      n->lhs = l;
      n->rhs = r;
      l = n;
    }
    return l;
  }

  SkelPtr parse_unary() {
    if (cur.tok == Tok::Bang) {
      bump();
      SkelPtr b = parse_unary();
      if (!b) return nullptr;
      auto n = std::make_shared<Skel>();
      n->kind = Skel::NegK;
      n->body = b;
      return n;
    }
    if (is_quant_head()) return parse_quant();
    return parse_atom();
  }

  SkelPtr parse_quant() {
    std::string head = cur.text;
    bool forall = head[0] == 'A';
    bool second = head.size() == 2;  // A2 / E2
    // "A2"/"E2" double as relational-parameter spellings ("A2(a)", "E..."):
    // only a following variable of the right sort makes this a quantifier.
    Lexer save_lex = lex;
    Token save_cur = cur;
    bump();
    auto var = peek_symbol();
    bool var_ok = var && (second ? var->kind == SymbolKind::RelVar
                                 : (var->kind == SymbolKind::IndVar ||
                                    var->kind == SymbolKind::RelVar));
    if (!var_ok) {
      lex = save_lex;
      cur = save_cur;
      return parse_atom();
    }
    if (!second && var->kind == SymbolKind::RelVar) second = true;  // \forall X. ...
    PendingSym v = take_symbol(*var);
    if (!expect(Tok::Dot, "'.'")) return nullptr;
    SkelPtr body = parse_iff();
    if (!body) return nullptr;
    auto n = std::make_shared<Skel>();
    n->kind = Skel::QuantK;
    n->qk = second ? (forall ? QuantKind::ForallRel : QuantKind::ExistsRel)
                   : (forall ? QuantKind::ForallInd : QuantKind::ExistsInd);
    n->head = v;
    n->body = body;
    return n;
  }

  bool parse_term_list(std::vector<PendingSym>& out) {
    if (!expect(Tok::LParen, "'('")) return false;
    for (;;) {
      auto s = peek_symbol();
      if (!s || !is_individual(s->kind)) return fail({"a term"});
      out.push_back(take_symbol(*s));
      if (cur.tok == Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    return expect(Tok::RParen, "')'");
  }

  SkelPtr parse_atom() {
    if (cur.tok == Tok::LParen) {
      bump();
      if (cur.tok == Tok::Lambda) return parse_lambda_atom();
      SkelPtr inner = parse_iff();
      if (!inner) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return inner;
    }
    auto s = peek_symbol();
    if (!s) {
      fail({"a formula"});
      return nullptr;
    }
    if (s->kind == SymbolKind::PredSym || is_relational(s->kind)) {
      PendingSym head = take_symbol(*s);
      if (cur.tok == Tok::LParen) {
        auto n = std::make_shared<Skel>();
        n->kind = head.kind == SymbolKind::PredSym ? Skel::Atom : Skel::RelAppK;
        n->head = head;
        if (!parse_term_list(n->terms)) return nullptr;
        if (!arities.constrain(head.arity_id, (int)n->terms.size())) {
          fail({"consistent arity"}, "symbol " + head.base + " used at two arities");
          return nullptr;
        }
        return n;
      }
      if (cur.tok == Tok::Eq) {
        if (head.kind == SymbolKind::PredSym) {
          fail({"'('"}, "a predicate symbol cannot stand in an identity");
          return nullptr;
        }
        bump();
        auto rhs = peek_symbol();
        if (!rhs || !is_relational(rhs->kind)) {
          fail({"a relational symbol"});
          return nullptr;
        }
        PendingSym r = take_symbol(*rhs);
        if (!arities.unify(head.arity_id, r.arity_id)) {
          fail({"consistent arity"},
               "identity sides " + head.base + ", " + r.base + " have different arities");
          return nullptr;
        }
        auto n = std::make_shared<Skel>();
        n->kind = Skel::RelEqK;
        n->terms = {head, r};
        return n;
      }
      fail({"'('", "'='"});
      return nullptr;
    }
    // individual term: must start an identity
    PendingSym l = take_symbol(*s);
    if (cur.tok != Tok::Eq) {
      fail({"'='"}, "a bare term is not a formula");
      return nullptr;
    }
    bump();
    auto rhs = peek_symbol();
    if (!rhs || !is_individual(rhs->kind)) {
      fail({"a term"});
      return nullptr;
    }
    PendingSym r = take_symbol(*rhs);
    auto n = std::make_shared<Skel>();
    n->kind = Skel::IndEqK;
    n->terms = {l, r};
    return n;
  }

  // cursor on '\' just after '('
  SkelPtr parse_lambda_atom() {
    bump();  // consume backslash
    auto v = peek_symbol();
    if (!v || (v->kind != SymbolKind::IndVar && v->kind != SymbolKind::RelVar)) {
      fail({"a bound variable"});
      return nullptr;
    }
    bool second = v->kind == SymbolKind::RelVar;
    PendingSym var = take_symbol(*v);
    SkelPtr body = parse_iff();
    if (!body) return nullptr;
    if (!expect(Tok::RParen, "')'")) return nullptr;
    auto n = std::make_shared<Skel>();
    n->kind = second ? Skel::Lam2K : Skel::Lam1K;
    n->head = var;
    n->body = body;
    if (!second) {
      // lamarg1 := term | "(" "iota" indvar "." formula ")"
      if (auto t = peek_symbol(); t && is_individual(t->kind)) {
        n->lam1_plain_term = true;
        n->terms = {take_symbol(*t)};
        return n;
      }
      if (cur.tok != Tok::LParen) {
        fail({"a term", "'(iota ...)'"});
        return nullptr;
      }
      bump();
      if (cur.tok != Tok::Keyword || cur.text != "iota") {
        fail({"'iota'"});
        return nullptr;
      }
      bump();
      auto iv = peek_symbol();
      if (!iv || iv->kind != SymbolKind::IndVar) {
        fail({"an individual variable"});
        return nullptr;
      }
      n->iota_var = take_symbol(*iv);
      if (!expect(Tok::Dot, "'.'")) return nullptr;
      n->cond = parse_iff();
      if (!n->cond) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return n;
    }
    // lamarg2 := "(" "iota" relvar "." formula ")"
    if (cur.tok != Tok::LParen) {
      fail({"'(iota ...)'"}, "a relational abstract applies only to a description");
      return nullptr;
    }
    bump();
    if (cur.tok != Tok::Keyword || cur.text != "iota") {
      fail({"'iota'"});
      return nullptr;
    }
    bump();
    auto iv = peek_symbol();
    if (!iv || iv->kind != SymbolKind::RelVar) {
      fail({"a relational variable"});
      return nullptr;
    }
    n->iota_var = take_symbol(*iv);
    if (!arities.unify(var.arity_id, n->iota_var.arity_id)) {
      fail({"consistent arity"}, "abstract and description variables differ in arity");
      return nullptr;
    }
    if (!expect(Tok::Dot, "'.'")) return nullptr;
    n->cond = parse_iff();
    if (!n->cond) return nullptr;
    if (!expect(Tok::RParen, "')'")) return nullptr;
    return n;
  }

  FormulaPtr realize(const SkelPtr& s) {
    switch (s->kind) {
      case Skel::Atom: {
        std::vector<Term> args;
        for (auto& t : s->terms) args.emplace_back(resolve(t));
        return mk_pred_atom(resolve(s->head), std::move(args));
      }
      case Skel::RelAppK: {
        std::vector<Term> args;
        for (auto& t : s->terms) args.emplace_back(resolve(t));
        return mk_rel_app(resolve(s->head), std::move(args));
      }
      case Skel::IndEqK:
        return mk_ind_eq(Term(resolve(s->terms[0])), Term(resolve(s->terms[1])));
      case Skel::RelEqK:
        return mk_rel_eq(resolve(s->terms[0]), resolve(s->terms[1]));
      case Skel::NegK:
        return mk_neg(realize(s->body));
      case Skel::BinK:
        return mk_bin(s->op, realize(s->lhs), realize(s->rhs));
      case Skel::QuantK:
        return mk_quant(s->qk, resolve(s->head), realize(s->body));
      case Skel::Lam1K: {
        Lam1Arg arg = s->lam1_plain_term
                          ? Lam1Arg(Term(resolve(s->terms[0])))
                          : Lam1Arg(Iota1{resolve(s->iota_var), realize(s->cond)});
        return mk_lam1(resolve(s->head), realize(s->body), std::move(arg));
      }
      case Skel::Lam2K:
        return mk_lam2(resolve(s->head), realize(s->body),
                       Iota2{resolve(s->iota_var), realize(s->cond)});
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace detail

// A ParserContext keeps one arity table alive across several parses, so a
// multi-formula document enforces arities globally.
class ParserContext {
 public:
  ParseResult<FormulaPtr> parse_formula(std::string_view src) {
    detail::FormulaParser p(src);
    p.arities = arities_;
    auto fin = finish_formula(p, src);
    if (parse_ok(fin)) arities_ = p.arities;
    return fin;
  }

  ParseResult<Sequent> parse_sequent(std::string_view src) {
    detail::FormulaParser p(src);
    p.arities = arities_;
    std::vector<detail::SkelPtr> ant, suc;
    if (p.cur.tok != detail::Tok::SeqArrow) {
      for (;;) {
        auto f = p.parse_formula_top();
        if (!f) return *p.error;
        ant.push_back(f);
        if (p.cur.tok == detail::Tok::Comma) {
          p.bump();
          continue;
        }
        break;
      }
    }
    if (p.cur.tok != detail::Tok::SeqArrow) {
      p.fail({"'=>'", "','"});
      return *p.error;
    }
    p.bump();
    if (p.cur.tok != detail::Tok::End) {
      for (;;) {
        auto f = p.parse_formula_top();
        if (!f) return *p.error;
        suc.push_back(f);
        if (p.cur.tok == detail::Tok::Comma) {
          p.bump();
          continue;
        }
        break;
      }
    }
    if (p.cur.tok != detail::Tok::End) {
      p.fail({"end of input"});
      return *p.error;
    }
    std::vector<FormulaPtr> a, s;
    try {
      for (auto& f : ant) a.push_back(p.realize(f));
      for (auto& f : suc) s.push_back(p.realize(f));
    } catch (const std::exception& e) {
      return ParseError{{0, src.size(), 1, 1}, {"a well-formed sequent"}, "input", e.what()};
    }
    arities_ = p.arities;
    return Sequent(std::move(a), std::move(s));
  }

 private:
  detail::ArityTable arities_;

  ParseResult<FormulaPtr> finish_formula(detail::FormulaParser& p, std::string_view src) {
    auto skel = p.parse_formula_top();
    if (!skel) return *p.error;
    if (p.cur.tok != detail::Tok::End) {
      p.fail({"end of input"});
      return *p.error;
    }
    try {
      return p.realize(skel);
    } catch (const std::exception& e) {
      return ParseError{{0, src.size(), 1, 1}, {"a well-formed formula"}, "input", e.what()};
    }
  }
};

inline ParseResult<FormulaPtr> parse_formula(std::string_view src) {
  ParserContext ctx;
  return ctx.parse_formula(src);
}

inline ParseResult<Sequent> parse_sequent(std::string_view src) {
  ParserContext ctx;
  return ctx.parse_sequent(src);
}

// Convenience for fixtures and tests: throws on error.
inline FormulaPtr fml(std::string_view src) {
  auto r = parse_formula(src);
  if (auto* e = std::get_if<ParseError>(&r)) throw std::runtime_error(e->message());
  return std::get<FormulaPtr>(r);
}
inline Sequent seq(std::string_view src) {
  auto r = parse_sequent(src);
  if (auto* e = std::get_if<ParseError>(&r)) throw std::runtime_error(e->message());
  return std::get<Sequent>(r);
}

}  // namespace rl2
