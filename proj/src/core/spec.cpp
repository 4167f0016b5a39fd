#include "iospec/spec.hpp"

#include <algorithm>
#include <set>

#include "iospec/rng.hpp"

namespace iospec {

ValueSet ValueSet::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("range requires lo <= hi");
  return ValueSet(Kind::Range, lo, hi);
}

bool ValueSet::contains(std::int64_t v) const {
  switch (kind_) {
    case Kind::Ints:
      return true;
    case Kind::Nats:
      return v >= 0;
    case Kind::Range:
      return lo_ <= v && v <= hi_;
  }
  return false;
}

std::pair<std::int64_t, std::int64_t> ValueSet::sampling_interval(const SamplerBounds& bounds) const {
  switch (kind_) {
    case Kind::Ints:
      return {bounds.ints_min, bounds.ints_max};
    case Kind::Nats:
      return {0, bounds.nats_max};
    case Kind::Range:
      return {lo_, hi_};
  }
  return {0, 0};
}

std::int64_t ValueSet::sample(Rng& rng, const SamplerBounds& bounds) const {
  auto [lo, hi] = sampling_interval(bounds);
  return rng.uniform(lo, hi);
}

OutputPattern::OutputPattern(std::vector<Segment> segments) {
  for (auto& seg : segments) {
    if (auto* text = std::get_if<std::string>(&seg)) {
      if (text->find_first_of("\r\n") != std::string::npos) {
        throw std::invalid_argument("output literal contains a line break");
      }
      if (text->empty()) continue;
      if (!segments_.empty()) {
        if (auto* prev = std::get_if<std::string>(&segments_.back())) {
          *prev += *text;
          continue;
        }
      }
      segments_.emplace_back(std::move(*text));
    } else {
      const Term& t = std::get<Term>(seg);
      if (t.kind() == TermKind::Bool) throw KindError("boolean terms cannot be printed");
      segments_.emplace_back(t);
    }
  }
}

OutputPattern OutputPattern::text(std::string literal) {
  return OutputPattern({Segment(std::move(literal))});
}

OutputPattern OutputPattern::splice(Term t) { return OutputPattern({Segment(std::move(t))}); }

std::string OutputPattern::render(const Environment& env) const {
  std::string out;
  for (const auto& seg : segments_) {
    if (const auto* text = std::get_if<std::string>(&seg)) {
      out += *text;
      continue;
    }
    Value v = eval_term(std::get<Term>(seg), env);
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
      out += std::to_string(*i);
    } else {
      out += show_list(std::get<std::vector<std::int64_t>>(v));
    }
  }
  return out;
}

namespace {
const SpecNode kNopNode{Nop{}};
}

Specification make_node(SpecNode node) {
  return Specification(std::make_shared<const SpecNode>(std::move(node)));
}

const SpecNode& Specification::node() const { return node_ ? *node_ : kNopNode; }

bool Specification::is_nop() const { return std::holds_alternative<Nop>(node().value); }

bool operator==(const Specification& a, const Specification& b) {
  if (a.node_ == b.node_) return true;
  return a.node().value == b.node().value;
}

Specification nop() { return Specification(); }

Specification read_input(std::string_view var, ValueSet values) {
  return make_node(SpecNode{ReadInput{Varname(std::string(var)), values}});
}

Specification write_output(std::vector<OutputPattern> alternatives) {
  if (alternatives.empty()) throw std::invalid_argument("write needs at least one alternative");
  return make_node(SpecNode{WriteOutput{std::move(alternatives)}});
}

Specification write_output(OutputPattern pattern) {
  return write_output(std::vector<OutputPattern>{std::move(pattern)});
}

Specification branch(Term condition, Specification if_false, Specification if_true) {
  if (condition.kind() != TermKind::Bool) throw KindError("branch condition must be boolean");
  return make_node(SpecNode{Branch{std::move(condition), std::move(if_false), std::move(if_true)}});
}

Specification till_exit(Specification body) { return make_node(SpecNode{TillExit{std::move(body)}}); }

Specification exit_loop() { return make_node(SpecNode{Exit{}}); }

Specification seq(Specification a, Specification b) {
  if (a.is_nop()) return b;
  if (b.is_nop()) return a;
  if (const auto* s = a.as<Seq>()) {
    return seq(s->first, seq(s->second, std::move(b)));
  }
  return make_node(SpecNode{Seq{std::move(a), std::move(b)}});
}

Specification seq(std::initializer_list<Specification> parts) {
  Specification out;
  for (auto it = std::rbegin(parts); it != std::rend(parts); ++it) out = seq(*it, std::move(out));
  return out;
}

std::vector<Specification> statements(const Specification& s) {
  std::vector<Specification> out;
  Specification cur = s;
  while (!cur.is_nop()) {
    if (const auto* q = cur.as<Seq>()) {
      out.push_back(q->first);
      cur = q->second;
    } else {
      out.push_back(cur);
      break;
    }
  }
  return out;
}

namespace {

void collect_reads(const Specification& s, std::vector<Varname>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ReadInput>) {
          if (std::find(out.begin(), out.end(), n.var) == out.end()) out.push_back(n.var);
        } else if constexpr (std::is_same_v<T, Branch>) {
          collect_reads(n.if_true, out);
          collect_reads(n.if_false, out);
        } else if constexpr (std::is_same_v<T, TillExit>) {
          collect_reads(n.body, out);
        } else if constexpr (std::is_same_v<T, Seq>) {
          collect_reads(n.first, out);
          collect_reads(n.second, out);
        }
      },
      s.node().value);
}

void term_variables(const Term& t, std::vector<std::string>& out) {
  if (t.op() == TermOp::GetAll || t.op() == TermOp::GetCurrent) out.push_back(t.var().str());
  for (const auto& c : t.children()) term_variables(c, out);
}

class Checker {
 public:
  explicit Checker(std::set<std::string> bound) : bound_(std::move(bound)) {}

  void walk(const Specification& s, const std::string& path, int loop_depth) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Exit>) {
            if (loop_depth == 0) report(path, "exit outside loop");
          } else if constexpr (std::is_same_v<T, WriteOutput>) {
            if (n.alternatives.empty()) report(path, "write without alternatives");
            for (const auto& alt : n.alternatives) {
              for (const auto& seg : alt.segments()) {
                if (const auto* t = std::get_if<Term>(&seg)) check_term(*t, path);
              }
            }
          } else if constexpr (std::is_same_v<T, Branch>) {
            check_term(n.condition, path);
            walk(n.if_true, join(path, "then"), loop_depth);
            walk(n.if_false, join(path, "else"), loop_depth);
          } else if constexpr (std::is_same_v<T, TillExit>) {
            walk(n.body, join(path, "loop"), loop_depth + 1);
          } else if constexpr (std::is_same_v<T, Seq>) {
            auto parts = statements(s);
            for (std::size_t i = 0; i < parts.size(); ++i) {
              walk(parts[i], join(path, "stmt[" + std::to_string(i) + "]"), loop_depth);
            }
          }
        },
        s.node().value);
  }

  std::vector<Violation> violations;

 private:
  static std::string join(const std::string& path, const std::string& step) {
    return path.empty() ? step : path + "." + step;
  }

  void report(const std::string& path, std::string message) {
    violations.push_back({path.empty() ? "root" : path, std::move(message)});
  }

  void check_term(const Term& t, const std::string& path) {
    std::vector<std::string> vars;
    term_variables(t, vars);
    std::set<std::string> seen;
    for (const auto& v : vars) {
      if (!bound_.contains(v) && seen.insert(v).second) report(path, "unbound variable '" + v + "'");
    }
  }

  std::set<std::string> bound_;
};

}  // namespace

std::vector<Varname> read_variables(const Specification& s) {
  std::vector<Varname> out;
  collect_reads(s, out);
  return out;
}

std::vector<Violation> well_formed(const Specification& s) {
  std::set<std::string> bound;
  for (const auto& v : read_variables(s)) bound.insert(v.str());
  Checker checker(std::move(bound));
  checker.walk(s, "", 0);
  return std::move(checker.violations);
}

Specification example_specification() {
  using namespace term;
  return seq({
      read_input("n", ValueSet::nats()),
      till_exit(branch(eq(len(all("x")), curr("n")), read_input("x", ValueSet::ints()), exit_loop())),
      write_output(OutputPattern::splice(sum(all("x")))),
  });
}

}  // namespace iospec
