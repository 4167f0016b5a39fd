#include <cctype>
#include <charconv>

#include "iospec/dsl.hpp"

namespace iospec {

ParseError::ParseError(int line, int column, std::string message, std::vector<std::string> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message + " at " + v.path;
  }
  return out;
}

}  // namespace

WellFormednessError::WellFormednessError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

namespace {

enum class Tok { End, Ident, Int, Punct, Quote };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::string show(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Quote:
      return "string literal";
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Specification parse_program() {
    Specification s = parse_block();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + show(peek()), {"statement", "end of input"});
    return s;
  }

  Term parse_single_term() {
    Term t = parse_or();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + show(peek()), {"end of input"});
    return t;
  }

 private:
  // ---- lexing ----

  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= src_.size(); }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail_here(std::string message, std::vector<std::string> expected = {}) const {
    throw ParseError(line_, col_, std::move(message), std::move(expected));
  }

  [[noreturn]] static void fail(const Token& at, std::string message, std::vector<std::string> expected = {}) {
    throw ParseError(at.line, at.col, std::move(message), std::move(expected));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(cur()))) {
      // Splices live inside a single-line string literal.
      if (splice_depth_ > 0 && (cur() == '\n' || cur() == '\r')) fail_here("unterminated string literal");
      bump();
    }
  }

  Token lex() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (at_end()) return t;
    const char c = cur();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      t.kind = Tok::Ident;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) {
        t.text += cur();
        bump();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(cur()))) {
        t.text += cur();
        bump();
      }
      return t;
    }
    if (c == '"') {
      t.kind = Tok::Quote;
      t.text = "\"";
      bump();
      return t;
    }
    static constexpr std::string_view kTwo[] = {"==", "/=", "<=", ">=", "&&", "||"};
    for (auto op : kTwo) {
      if (src_.substr(pos_, 2) == op) {
        t.kind = Tok::Punct;
        t.text = std::string(op);
        bump();
        bump();
        return t;
      }
    }
    if (std::string_view(":[]|(){},+-*<>").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      bump();
      return t;
    }
    fail_here(std::string("unexpected character '") + c + "'");
  }

  const Token& peek() {
    if (!buffered_) {
      la_ = lex();
      buffered_ = true;
    }
    return la_;
  }

  Token advance() {
    peek();
    buffered_ = false;
    return la_;
  }

  bool is_punct(std::string_view p) { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(std::string_view w) { return peek().kind == Tok::Ident && peek().text == w; }

  Token expect_punct(std::string_view p) {
    if (!is_punct(p)) {
      fail(peek(), "expected '" + std::string(p) + "', found " + show(peek()), {"'" + std::string(p) + "'"});
    }
    return advance();
  }

  Token expect_word(std::string_view w) {
    if (!is_word(w)) fail(peek(), "expected '" + std::string(w) + "', found " + show(peek()), {std::string(w)});
    return advance();
  }

  Token expect_ident() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected identifier, found " + show(peek()), {"identifier"});
    return advance();
  }

  std::int64_t parse_signed_int() {
    bool negative = false;
    Token first = peek();
    if (is_punct("-")) {
      advance();
      negative = true;
    }
    if (peek().kind != Tok::Int) fail(peek(), "expected integer, found " + show(peek()), {"integer"});
    Token digits = advance();
    std::string text = (negative ? "-" : "") + digits.text;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail(first, "integer literal out of range");
    return v;
  }

  // ---- statements ----

  Specification parse_block() {
    std::vector<Specification> stmts;
    while (peek().kind != Tok::End && !is_punct("}")) stmts.push_back(parse_stmt());
    Specification out;
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) out = seq(*it, std::move(out));
    return out;
  }

  Specification parse_braced_block() {
    expect_punct("{");
    Specification body = parse_block();
    expect_punct("}");
    return body;
  }

  Specification parse_stmt() {
    static const std::vector<std::string> kStmt = {"read", "write", "if", "loop", "exit"};
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected statement, found " + show(t), kStmt);
    if (t.text == "read") {
      advance();
      Token var = expect_ident();
      expect_punct(":");
      return read_input(var.text, parse_value_set());
    }
    if (t.text == "write") {
      advance();
      expect_punct("[");
      std::vector<OutputPattern> alts;
      alts.push_back(parse_pattern());
      while (is_punct("|")) {
        advance();
        alts.push_back(parse_pattern());
      }
      expect_punct("]");
      return write_output(std::move(alts));
    }
    if (t.text == "if") {
      advance();
      expect_punct("(");
      Token at = peek();
      Term cond = parse_or();
      if (cond.kind() != TermKind::Bool) fail(at, "condition must be boolean");
      expect_punct(")");
      expect_word("then");
      Specification then_part = parse_braced_block();
      expect_word("else");
      Specification else_part = parse_braced_block();
      return branch(std::move(cond), std::move(else_part), std::move(then_part));
    }
    if (t.text == "loop") {
      advance();
      return till_exit(parse_braced_block());
    }
    if (t.text == "exit") {
      advance();
      return exit_loop();
    }
    fail(t, "expected statement, found " + show(t), kStmt);
  }

  ValueSet parse_value_set() {
    Token t = peek();
    if (is_word("ints")) {
      advance();
      return ValueSet::ints();
    }
    if (is_word("nats")) {
      advance();
      return ValueSet::nats();
    }
    if (is_word("range")) {
      advance();
      expect_punct("(");
      std::int64_t lo = parse_signed_int();
      expect_punct(",");
      std::int64_t hi = parse_signed_int();
      expect_punct(")");
      if (lo > hi) fail(t, "empty range");
      return ValueSet::range(lo, hi);
    }
    fail(t, "expected value set, found " + show(t), {"ints", "nats", "range"});
  }

  OutputPattern parse_pattern() {
    if (is_word("skip")) {
      advance();
      return OutputPattern::skip();
    }
    if (peek().kind != Tok::Quote) {
      fail(peek(), "expected output pattern, found " + show(peek()), {"string literal", "skip"});
    }
    advance();
    std::vector<OutputPattern::Segment> segments;
    std::string literal;
    for (;;) {
      if (at_end() || cur() == '\n' || cur() == '\r') fail_here("unterminated string literal", {"'\"'"});
      const char c = cur();
      if (c == '"') {
        bump();
        break;
      }
      if (c == '\\') {
        bump();
        if (at_end()) fail_here("unterminated string literal");
        const char e = cur();
        switch (e) {
          case '\\':
          case '"':
          case '{':
          case '}':
            literal += e;
            break;
          case 't':
            literal += '\t';
            break;
          default:
            fail_here(std::string("unknown escape '\\") + e + "'");
        }
        bump();
        continue;
      }
      if (c == '}') fail_here("unescaped '}' in string literal");
      if (c == '{') {
        bump();
        segments.emplace_back(std::move(literal));
        literal.clear();
        ++splice_depth_;
        Token at = peek();
        Term t = parse_or();
        if (t.kind() == TermKind::Bool) fail(at, "boolean term cannot be printed");
        expect_punct("}");
        --splice_depth_;
        segments.emplace_back(std::move(t));
        continue;
      }
      literal += c;
      bump();
    }
    segments.emplace_back(std::move(literal));
    return OutputPattern(std::move(segments));
  }

  // ---- terms ----

  Term build(const Token& at, TermOp op, std::vector<Term> kids) {
    try {
      return Term::make(op, std::move(kids));
    } catch (const KindError& e) {
      fail(at, std::string("type error: ") + e.what());
    }
  }

  Term parse_or() {
    Term left = parse_and();
    while (is_punct("||")) {
      Token op = advance();
      left = build(op, TermOp::Or, {std::move(left), parse_and()});
    }
    return left;
  }

  Term parse_and() {
    Term left = parse_not();
    while (is_punct("&&")) {
      Token op = advance();
      left = build(op, TermOp::And, {std::move(left), parse_not()});
    }
    return left;
  }

  Term parse_not() {
    if (is_word("not")) {
      Token op = advance();
      return build(op, TermOp::Not, {parse_not()});
    }
    return parse_cmp();
  }

  Term parse_cmp() {
    static const std::pair<std::string_view, TermOp> kOps[] = {
        {"==", TermOp::Eq}, {"/=", TermOp::Neq}, {"<", TermOp::Lt},
        {"<=", TermOp::Leq}, {">", TermOp::Gt},  {">=", TermOp::Geq},
    };
    Term left = parse_add();
    for (const auto& [text, op] : kOps) {
      if (is_punct(text)) {
        Token at = advance();
        return build(at, op, {std::move(left), parse_add()});
      }
    }
    return left;
  }

  Term parse_add() {
    Term left = parse_mul();
    while (is_punct("+") || is_punct("-")) {
      Token op = advance();
      left = build(op, op.text == "+" ? TermOp::Add : TermOp::Sub, {std::move(left), parse_mul()});
    }
    return left;
  }

  Term parse_mul() {
    Term left = parse_atom();
    while (is_punct("*")) {
      Token op = advance();
      left = build(op, TermOp::Mul, {std::move(left), parse_atom()});
    }
    return left;
  }

  Term parse_atom() {
    static const std::vector<std::string> kAtom = {"integer", "'('", "all", "curr", "len", "sum", "prod", "not"};
    const Token t = peek();
    if (t.kind == Tok::Int || is_punct("-")) return term::lit(parse_signed_int());
    if (is_punct("(")) {
      advance();
      Term inner = parse_or();
      expect_punct(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "all" || t.text == "curr") {
        advance();
        expect_punct("(");
        Token var = expect_ident();
        expect_punct(")");
        return t.text == "all" ? term::all(var.text) : term::curr(var.text);
      }
      if (t.text == "len" || t.text == "sum" || t.text == "prod") {
        advance();
        expect_punct("(");
        Term arg = parse_or();
        expect_punct(")");
        TermOp op = t.text == "len" ? TermOp::Length : t.text == "sum" ? TermOp::Sum : TermOp::Product;
        return build(t, op, {std::move(arg)});
      }
    }
    fail(t, "expected term, found " + show(t), kAtom);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int splice_depth_ = 0;
  Token la_;
  bool buffered_ = false;
};

}  // namespace

Specification parse_spec(std::string_view source) {
  Specification s = Parser(source).parse_program();
  auto violations = well_formed(s);
  if (!violations.empty()) throw WellFormednessError(std::move(violations));
  return s;
}

Term parse_term(std::string_view source) { return Parser(source).parse_single_term(); }

}  // namespace iospec
