#include "iospec/dsl.hpp"

namespace iospec {

namespace {

int precedence(const Term& t) {
  switch (t.op()) {
    case TermOp::Or:
      return 1;
    case TermOp::And:
      return 2;
    case TermOp::Not:
      return 3;
    case TermOp::Eq:
    case TermOp::Neq:
    case TermOp::Lt:
    case TermOp::Leq:
    case TermOp::Gt:
    case TermOp::Geq:
      return 4;
    case TermOp::Add:
    case TermOp::Sub:
      return 5;
    case TermOp::Mul:
      return 6;
    default:
      return 7;
  }
}

std::string_view symbol(TermOp op) {
  switch (op) {
    case TermOp::Or:
      return "||";
    case TermOp::And:
      return "&&";
    case TermOp::Eq:
      return "==";
    case TermOp::Neq:
      return "/=";
    case TermOp::Lt:
      return "<";
    case TermOp::Leq:
      return "<=";
    case TermOp::Gt:
      return ">";
    case TermOp::Geq:
      return ">=";
    case TermOp::Add:
      return "+";
    case TermOp::Sub:
      return "-";
    case TermOp::Mul:
      return "*";
    default:
      return "?";
  }
}

void print(const Term& t, int min_prec, std::string& out) {
  const int p = precedence(t);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  auto kids = t.children();
  switch (t.op()) {
    case TermOp::GetAll:
      out += "all(" + t.var().str() + ")";
      break;
    case TermOp::GetCurrent:
      out += "curr(" + t.var().str() + ")";
      break;
    case TermOp::IntLit:
      out += std::to_string(t.literal());
      break;
    case TermOp::Sum:
    case TermOp::Product:
    case TermOp::Length:
      out += t.op() == TermOp::Sum ? "sum(" : t.op() == TermOp::Product ? "prod(" : "len(";
      print(kids[0], 0, out);
      out += ')';
      break;
    case TermOp::Not:
      out += "not ";
      print(kids[0], 3, out);
      break;
    default: {
      // Comparisons do not chain; everything else is left-associative.
      const bool chainable = p != 4;
      print(kids[0], chainable ? p : p + 1, out);
      out += ' ';
      out += symbol(t.op());
      out += ' ';
      print(kids[1], p + 1, out);
    }
  }
  if (parens) out += ')';
}

std::string escape_literal(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '\\':
      case '"':
      case '{':
      case '}':
        out += '\\';
        out += c;
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

bool is_atomic(const Specification& s) {
  return s.as<ReadInput>() || s.as<WriteOutput>() || s.as<Exit>();
}

void print_stmts(const Specification& s, int indent, std::string& out);

std::string print_atomic(const Specification& s) {
  if (const auto* r = s.as<ReadInput>()) return "read " + r->var.str() + " : " + print_value_set(r->values);
  if (const auto* w = s.as<WriteOutput>()) {
    std::string out = "write [";
    for (std::size_t i = 0; i < w->alternatives.size(); ++i) {
      if (i > 0) out += " | ";
      out += print_pattern(w->alternatives[i]);
    }
    return out + "]";
  }
  return "exit";
}

std::string inline_block(const Specification& s) {
  return s.is_nop() ? "{ }" : "{ " + print_atomic(s) + " }";
}

void print_stmt(const Specification& s, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_atomic(s)) {
    out += pad + print_atomic(s) + "\n";
    return;
  }
  if (const auto* b = s.as<Branch>()) {
    out += pad + "if (" + print_term(b->condition) + ") then ";
    const bool fits = (b->if_true.is_nop() || is_atomic(b->if_true)) &&
                      (b->if_false.is_nop() || is_atomic(b->if_false));
    if (fits) {
      out += inline_block(b->if_true) + " else " + inline_block(b->if_false) + "\n";
      return;
    }
    out += "{\n";
    print_stmts(b->if_true, indent + 2, out);
    out += pad + "} else {\n";
    print_stmts(b->if_false, indent + 2, out);
    out += pad + "}\n";
    return;
  }
  if (const auto* l = s.as<TillExit>()) {
    if (l->body.is_nop()) {
      out += pad + "loop { }\n";
      return;
    }
    out += pad + "loop {\n";
    print_stmts(l->body, indent + 2, out);
    out += pad + "}\n";
  }
}

void print_stmts(const Specification& s, int indent, std::string& out) {
  for (const auto& stmt : statements(s)) print_stmt(stmt, indent, out);
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

std::string print_value_set(const ValueSet& vs) {
  switch (vs.kind()) {
    case ValueSet::Kind::Ints:
      return "ints";
    case ValueSet::Kind::Nats:
      return "nats";
    case ValueSet::Kind::Range:
      return "range(" + std::to_string(vs.lo()) + ", " + std::to_string(vs.hi()) + ")";
  }
  return "?";
}

std::string print_pattern(const OutputPattern& p) {
  if (p.empty()) return "skip";
  std::string out = "\"";
  for (const auto& seg : p.segments()) {
    if (const auto* text = std::get_if<std::string>(&seg)) {
      out += escape_literal(*text);
    } else {
      out += "{" + print_term(std::get<Term>(seg)) + "}";
    }
  }
  return out + "\"";
}

std::string print_spec(const Specification& s) {
  std::string out;
  print_stmts(s, 0, out);
  return out;
}

}  // namespace iospec
