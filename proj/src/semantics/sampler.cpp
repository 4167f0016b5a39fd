#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "executor.hpp"

namespace iospec {

namespace {

// Exit test of the form `curr(var) <op> literal` found directly in a loop body.
struct ExitGuard {
  std::string var;
  TermOp op;
  std::int64_t literal;
};

TermOp flip(TermOp op) {
  switch (op) {
    case TermOp::Lt:
      return TermOp::Gt;
    case TermOp::Gt:
      return TermOp::Lt;
    case TermOp::Leq:
      return TermOp::Geq;
    case TermOp::Geq:
      return TermOp::Leq;
    default:
      return op;
  }
}

TermOp negation(TermOp op) {
  switch (op) {
    case TermOp::Eq:
      return TermOp::Neq;
    case TermOp::Neq:
      return TermOp::Eq;
    case TermOp::Lt:
      return TermOp::Geq;
    case TermOp::Geq:
      return TermOp::Lt;
    case TermOp::Gt:
      return TermOp::Leq;
    case TermOp::Leq:
      return TermOp::Gt;
    default:
      return op;
  }
}

bool contains_exit(const Specification& arm) {
  for (const auto& st : statements(arm)) {
    if (st.as<Exit>()) return true;
  }
  return false;
}

std::optional<ExitGuard> guard_of(const Branch& b) {
  const Term& c = b.condition;
  if (!is_comparison(c.op())) return std::nullopt;
  auto kids = c.children();
  TermOp op = c.op();
  const Term* var_side = &kids[0];
  const Term* lit_side = &kids[1];
  if (var_side->op() != TermOp::GetCurrent) {
    std::swap(var_side, lit_side);
    op = flip(op);
  }
  if (var_side->op() != TermOp::GetCurrent || lit_side->op() != TermOp::IntLit) return std::nullopt;
  if (contains_exit(b.if_true)) return ExitGuard{var_side->var().str(), op, lit_side->literal()};
  if (contains_exit(b.if_false)) return ExitGuard{var_side->var().str(), negation(op), lit_side->literal()};
  return std::nullopt;
}

bool is_length_of_history(const Term& t) {
  return t.op() == TermOp::Length && t.children()[0].op() == TermOp::GetAll;
}

void find_count_vars(const Term& t, std::set<std::string>& out) {
  if (is_comparison(t.op())) {
    auto kids = t.children();
    for (int i = 0; i < 2; ++i) {
      if (kids[i].op() == TermOp::GetCurrent && is_length_of_history(kids[1 - i])) out.insert(kids[i].var().str());
    }
  }
  for (const auto& k : t.children()) find_count_vars(k, out);
}

struct Plan {
  std::set<std::string> count_vars;
  std::map<const TillExit*, std::vector<ExitGuard>> guards;
};

void analyse(const Specification& s, Plan& plan) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WriteOutput>) {
          for (const auto& alt : n.alternatives) {
            for (const auto& seg : alt.segments()) {
              if (const auto* t = std::get_if<Term>(&seg)) find_count_vars(*t, plan.count_vars);
            }
          }
        } else if constexpr (std::is_same_v<T, Branch>) {
          find_count_vars(n.condition, plan.count_vars);
          analyse(n.if_true, plan);
          analyse(n.if_false, plan);
        } else if constexpr (std::is_same_v<T, TillExit>) {
          auto& guards = plan.guards[&n];
          for (const auto& st : statements(n.body)) {
            if (const auto* b = st.template as<Branch>()) {
              if (auto g = guard_of(*b)) guards.push_back(*g);
            }
          }
          analyse(n.body, plan);
        } else if constexpr (std::is_same_v<T, Seq>) {
          analyse(n.first, plan);
          analyse(n.second, plan);
        }
      },
      s.node().value);
}

// A value in [lo, hi] satisfying `value <op> literal`, if any.
std::optional<std::int64_t> satisfying(TermOp op, std::int64_t literal, std::int64_t lo, std::int64_t hi, Rng& rng) {
  switch (op) {
    case TermOp::Eq:
      if (lo <= literal && literal <= hi) return literal;
      return std::nullopt;
    case TermOp::Neq: {
      if (lo == hi && lo == literal) return std::nullopt;
      if (literal < lo || literal > hi) return rng.uniform(lo, hi);
      // Draw from the interval with the literal removed.
      std::int64_t v = lo == hi ? lo : rng.uniform(lo, hi - 1);
      return v >= literal ? v + 1 : v;
    }
    case TermOp::Lt:
      if (literal == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
      hi = std::min(hi, literal - 1);
      break;
    case TermOp::Leq:
      hi = std::min(hi, literal);
      break;
    case TermOp::Gt:
      if (literal == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
      lo = std::max(lo, literal + 1);
      break;
    case TermOp::Geq:
      lo = std::max(lo, literal);
      break;
    default:
      return std::nullopt;
  }
  if (lo > hi) return std::nullopt;
  return rng.uniform(lo, hi);
}

class SamplerSource {
 public:
  SamplerSource(const Plan& plan, Rng& rng, const SamplerConfig& config) : plan_(plan), rng_(rng), config_(config) {}

  std::int64_t next(const ReadInput& read, const std::vector<detail::LoopFrame>& loops) {
    auto [lo, hi] = read.values.sampling_interval(config_.bounds);
    const std::string& var = read.var.str();
    std::int64_t v = draw(var, lo, hi, loops);
    feed.push_back(v);
    return v;
  }

  std::vector<std::int64_t> feed;

 private:
  std::int64_t draw(const std::string& var, std::int64_t lo, std::int64_t hi,
                    const std::vector<detail::LoopFrame>& loops) {
    for (auto frame = loops.rbegin(); frame != loops.rend(); ++frame) {
      auto it = plan_.guards.find(frame->loop);
      if (it == plan_.guards.end()) continue;
      for (const auto& g : it->second) {
        if (g.var != var) continue;
        const bool forced = frame->iterations >= kForceAfter;
        if (forced || rng_.bernoulli(1, 4)) {
          if (auto v = satisfying(g.op, g.literal, lo, hi, rng_)) return *v;
        }
      }
    }
    if (plan_.count_vars.contains(var)) {
      const std::int64_t nlo = std::max<std::int64_t>(lo, 0);
      const std::int64_t nhi = std::min(hi, config_.count_max);
      if (nlo <= nhi) return rng_.uniform(nlo, nhi);
    }
    return rng_.uniform(lo, hi);
  }

  static constexpr std::int64_t kForceAfter = 10;

  const Plan& plan_;
  Rng& rng_;
  const SamplerConfig& config_;
};

}  // namespace

std::vector<std::int64_t> sample_inputs(const Specification& s, Rng& rng, const Limits& limits,
                                        const SamplerConfig& config) {
  Plan plan;
  analyse(s, plan);
  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, config.retries); ++attempt) {
    SamplerSource source(plan, rng, config);
    try {
      detail::Executor<SamplerSource>(limits, source).run(s);
      return std::move(source.feed);
    } catch (const InterpretError& e) {
      last_error = e.what();
    }
  }
  throw SamplingFailed("could not sample a terminating input feed: " + last_error);
}

std::vector<Trace> example_traces(const Specification& s, std::size_t n, Rng& rng, const Limits& limits,
                                  const SamplerConfig& config) {
  constexpr int kDuplicateRetries = 100;
  std::vector<std::pair<std::size_t, Trace>> found;  // (feed length, trace)
  for (std::size_t slot = 0; slot < n; ++slot) {
    std::vector<std::int64_t> feed;
    Trace t;
    for (int attempt = 0; attempt <= kDuplicateRetries; ++attempt) {
      feed = sample_inputs(s, rng, limits, config);
      t = interpret(s, feed, limits);
      const bool duplicate =
          std::any_of(found.begin(), found.end(), [&](const auto& p) { return p.second == t; });
      if (!duplicate) break;
    }
    found.emplace_back(feed.size(), std::move(t));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Trace> out;
  out.reserve(found.size());
  for (auto& p : found) out.push_back(std::move(p.second));
  return out;
}

}  // namespace iospec
