#pragma once

// Seeded generators for property tests. Deliberately broader than the
// library's own spec generator: arbitrary nesting, odd variable names,
// literals needing escapes, skip alternatives.

#include <string>
#include <vector>

#include "iospec/rng.hpp"
#include "iospec/spec.hpp"

namespace iospec::testgen {

inline const std::vector<std::string>& var_pool() {
  // Keywords are legal variable names; keep one around to exercise that.
  static const std::vector<std::string> pool = {"a", "b", "x", "n", "loop", "v_2"};
  return pool;
}

inline Term int_term(Rng& rng, int depth) {
  using namespace term;
  const auto& vars = var_pool();
  if (depth <= 0 || rng.bernoulli(1, 3)) {
    switch (rng.index(3)) {
      case 0:
        return lit(rng.uniform(-20, 20));
      case 1:
        return curr(rng.pick(vars));
      default:
        return len(all(rng.pick(vars)));
    }
  }
  switch (rng.index(6)) {
    case 0:
      return add(int_term(rng, depth - 1), int_term(rng, depth - 1));
    case 1:
      return sub(int_term(rng, depth - 1), int_term(rng, depth - 1));
    case 2:
      return mul(int_term(rng, depth - 1), int_term(rng, depth - 1));
    case 3:
      return sum(all(rng.pick(vars)));
    case 4:
      return prod(all(rng.pick(vars)));
    default:
      return len(all(rng.pick(vars)));
  }
}

inline Term bool_term(Rng& rng, int depth) {
  using namespace term;
  static const std::vector<TermOp> cmps = {TermOp::Eq, TermOp::Neq, TermOp::Lt,
                                           TermOp::Leq, TermOp::Gt, TermOp::Geq};
  if (depth <= 0 || rng.bernoulli(1, 2)) {
    return compare(rng.pick(cmps), int_term(rng, depth - 1), int_term(rng, depth - 1));
  }
  switch (rng.index(3)) {
    case 0:
      return conj(bool_term(rng, depth - 1), bool_term(rng, depth - 1));
    case 1:
      return disj(bool_term(rng, depth - 1), bool_term(rng, depth - 1));
    default:
      return negate(bool_term(rng, depth - 1));
  }
}

inline Term any_term(Rng& rng, int depth) {
  switch (rng.index(3)) {
    case 0:
      return int_term(rng, depth);
    case 1:
      return term::all(rng.pick(var_pool()));
    default:
      return bool_term(rng, depth);
  }
}

inline std::string literal_text(Rng& rng) {
  static const std::string alphabet = "ab Z09 {}\"\\\t-+=:!?";
  std::string s;
  const std::size_t n = rng.index(6);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.index(alphabet.size())];
  return s;
}

inline OutputPattern pattern(Rng& rng) {
  if (rng.bernoulli(1, 6)) return OutputPattern::skip();
  std::vector<OutputPattern::Segment> segs;
  const std::size_t n = 1 + rng.index(3);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(1, 2)) {
      segs.emplace_back(literal_text(rng));
    } else if (rng.bernoulli(1, 5)) {
      segs.emplace_back(term::all(rng.pick(var_pool())));
    } else {
      segs.emplace_back(int_term(rng, 2));
    }
  }
  return OutputPattern(std::move(segs));
}

inline ValueSet value_set(Rng& rng) {
  switch (rng.index(3)) {
    case 0:
      return ValueSet::ints();
    case 1:
      return ValueSet::nats();
    default: {
      std::int64_t lo = rng.uniform(-50, 50);
      return ValueSet::range(lo, lo + rng.uniform(0, 20));
    }
  }
}

inline Specification body(Rng& rng, int depth, bool in_loop) {
  std::vector<Specification> stmts;
  const std::size_t n = rng.index(4);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t choice = rng.index(depth > 0 ? 6 : 3);
    switch (choice) {
      case 0:
        stmts.push_back(read_input(rng.pick(var_pool()), value_set(rng)));
        break;
      case 1: {
        std::vector<OutputPattern> alts;
        const std::size_t k = 1 + rng.index(2);
        for (std::size_t j = 0; j < k; ++j) alts.push_back(pattern(rng));
        stmts.push_back(write_output(std::move(alts)));
        break;
      }
      case 2:
        if (in_loop) {
          stmts.push_back(exit_loop());
        } else {
          stmts.push_back(read_input(rng.pick(var_pool()), value_set(rng)));
        }
        break;
      case 3:
      case 4:
        stmts.push_back(
            branch(bool_term(rng, 2), body(rng, depth - 1, in_loop), body(rng, depth - 1, in_loop)));
        break;
      default:
        stmts.push_back(till_exit(body(rng, depth - 1, true)));
    }
  }
  Specification out;
  for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) out = seq(*it, std::move(out));
  return out;
}

/// Well-formed (every mentioned variable is read somewhere, exits in loops),
/// not necessarily terminating.
inline Specification well_formed_spec(Rng& rng, int depth = 3) {
  Specification b = body(rng, depth, false);
  Specification reads;
  for (const auto& v : var_pool()) reads = seq(reads, read_input(v, ValueSet::ints()));
  if (rng.bernoulli(1, 8) && well_formed(b).empty()) return b;
  return seq(reads, b);
}

}  // namespace iospec::testgen
