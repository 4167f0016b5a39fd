#include "iospec/specgen.hpp"

#include <algorithm>

#include "iospec/semantics.hpp"

namespace iospec {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::CountLoop:
      return "count";
    case Family::SentinelLoop:
      return "sentinel";
    case Family::BranchOutput:
      return "branch";
  }
  return "?";
}

std::string_view to_string(Aggregate a) {
  switch (a) {
    case Aggregate::Sum:
      return "sum";
    case Aggregate::Product:
      return "prod";
    case Aggregate::Length:
      return "len";
  }
  return "?";
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::SwapAggregate:
      return "swap-aggregate";
    case Mutation::SwapComparison:
      return "swap-comparison";
    case Mutation::PerturbLiteral:
      return "perturb-literal";
    case Mutation::SwapValueSet:
      return "swap-value-set";
  }
  return "?";
}

namespace {

using namespace term;

const std::vector<TermOp> kComparisons = {TermOp::Eq, TermOp::Neq, TermOp::Lt, TermOp::Leq, TermOp::Gt, TermOp::Geq};
// `len(all(x)) < curr(n)` never exits for n = 0, and `>=` behaves exactly
// like `==` because the length grows by one from zero.
const std::vector<TermOp> kCountGuards = {TermOp::Eq, TermOp::Neq, TermOp::Leq, TermOp::Gt};

const std::vector<std::string> kWords = {"yes", "no", "equal", "first", "second", "bigger", "smaller", "ok"};

// One piece of a branch-family output pattern.
struct Piece {
  enum class Kind { Word, CurrA, CurrB, Plus, Minus, Times, AOffset, BScaled } kind;
  std::string word;
  std::int64_t k = 0;  // AOffset / BScaled literal
  friend bool operator==(const Piece&, const Piece&) = default;
};

using Pattern = std::vector<Piece>;

struct Params {
  Family family = Family::CountLoop;
  // Loop families.
  std::vector<Aggregate> aggregates;
  ValueSet count_values = ValueSet::nats();
  ValueSet item_values = ValueSet::ints();
  TermOp guard = TermOp::Eq;
  std::int64_t sentinel = 0;
  // Branch family.
  ValueSet a_values = ValueSet::ints();
  ValueSet b_values = ValueSet::ints();
  TermOp comparison = TermOp::Lt;
  Pattern when_true, when_false;

  friend bool operator==(const Params&, const Params&) = default;
};

Term aggregate_term(Aggregate a) {
  switch (a) {
    case Aggregate::Sum:
      return sum(all("x"));
    case Aggregate::Product:
      return prod(all("x"));
    case Aggregate::Length:
      return len(all("x"));
  }
  return sum(all("x"));
}

OutputPattern aggregate_pattern(const std::vector<Aggregate>& aggs) {
  std::vector<OutputPattern::Segment> segs;
  for (std::size_t i = 0; i < aggs.size(); ++i) {
    if (i > 0) segs.emplace_back(std::string(" "));
    segs.emplace_back(aggregate_term(aggs[i]));
  }
  return OutputPattern(std::move(segs));
}

OutputPattern branch_pattern(const Pattern& p) {
  std::vector<OutputPattern::Segment> segs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) segs.emplace_back(std::string(" "));
    const Piece& piece = p[i];
    switch (piece.kind) {
      case Piece::Kind::Word:
        segs.emplace_back(piece.word);
        break;
      case Piece::Kind::CurrA:
        segs.emplace_back(curr("a"));
        break;
      case Piece::Kind::CurrB:
        segs.emplace_back(curr("b"));
        break;
      case Piece::Kind::Plus:
        segs.emplace_back(add(curr("a"), curr("b")));
        break;
      case Piece::Kind::Minus:
        segs.emplace_back(sub(curr("a"), curr("b")));
        break;
      case Piece::Kind::Times:
        segs.emplace_back(mul(curr("a"), curr("b")));
        break;
      case Piece::Kind::AOffset:
        segs.emplace_back(add(curr("a"), lit(piece.k)));
        break;
      case Piece::Kind::BScaled:
        segs.emplace_back(mul(lit(piece.k), curr("b")));
        break;
    }
  }
  return OutputPattern(std::move(segs));
}

Specification build(const Params& p) {
  switch (p.family) {
    case Family::CountLoop:
      return seq({read_input("n", p.count_values),
                  till_exit(branch(compare(p.guard, len(all("x")), curr("n")), read_input("x", p.item_values),
                                   exit_loop())),
                  write_output(aggregate_pattern(p.aggregates))});
    case Family::SentinelLoop:
      return seq(till_exit(seq(read_input("x", p.item_values),
                               branch(compare(p.guard, curr("x"), lit(p.sentinel)), nop(), exit_loop()))),
                 write_output(aggregate_pattern(p.aggregates)));
    case Family::BranchOutput:
      return seq({read_input("a", p.a_values), read_input("b", p.b_values),
                  branch(compare(p.comparison, curr("a"), curr("b")), write_output(branch_pattern(p.when_false)),
                         write_output(branch_pattern(p.when_true)))});
  }
  return nop();
}

Piece random_piece(Rng& rng) {
  switch (rng.index(8)) {
    case 0:
      return {Piece::Kind::Word, rng.pick(kWords), 0};
    case 1:
      return {Piece::Kind::CurrA, "", 0};
    case 2:
      return {Piece::Kind::CurrB, "", 0};
    case 3:
      return {Piece::Kind::Plus, "", 0};
    case 4:
      return {Piece::Kind::Minus, "", 0};
    case 5:
      return {Piece::Kind::Times, "", 0};
    case 6:
      return {Piece::Kind::AOffset, "", rng.uniform(1, 5)};
    default:
      return {Piece::Kind::BScaled, "", rng.uniform(2, 5)};
  }
}

Pattern random_pattern(Rng& rng, int size_hint) {
  const std::size_t pieces = 1 + (size_hint > 3 ? rng.index(static_cast<std::size_t>(size_hint - 2)) : 0);
  Pattern p;
  for (std::size_t i = 0; i < pieces; ++i) p.push_back(random_piece(rng));
  return p;
}

std::vector<Aggregate> random_aggregates(Rng& rng, const GenConfig& cfg) {
  std::vector<Aggregate> pool = {Aggregate::Sum, Aggregate::Product, Aggregate::Length};
  std::vector<Aggregate> out;
  out.push_back(cfg.aggregate ? *cfg.aggregate : rng.pick(pool));
  if (cfg.size_hint > 3) {
    const std::size_t extra = rng.index(static_cast<std::size_t>(cfg.size_hint - 2));
    for (std::size_t i = 0; i < extra && i < 2; ++i) {
      std::vector<Aggregate> rest;
      for (auto a : pool) {
        if (std::find(out.begin(), out.end(), a) == out.end()) rest.push_back(a);
      }
      out.push_back(rng.pick(rest));
    }
  }
  return out;
}

bool has_product(const std::vector<Aggregate>& aggs) {
  return std::find(aggs.begin(), aggs.end(), Aggregate::Product) != aggs.end();
}

Params random_params(Rng& rng, const GenConfig& cfg) {
  Params p;
  p.family = cfg.family ? *cfg.family
                        : std::vector<Family>{Family::CountLoop, Family::SentinelLoop, Family::BranchOutput}[rng.index(3)];
  switch (p.family) {
    case Family::CountLoop:
      p.aggregates = random_aggregates(rng, cfg);
      // Products stay within 64 bits for short loops over small values.
      if (has_product(p.aggregates)) p.item_values = ValueSet::range(-9, 9);
      break;
    case Family::SentinelLoop:
      p.aggregates = random_aggregates(rng, cfg);
      if (has_product(p.aggregates)) {
        p.item_values = ValueSet::range(-9, 9);
        p.sentinel = rng.bernoulli(1, 2) ? 1 : -1;  // a zero stop value would zero the product
      } else {
        p.sentinel = rng.uniform(-1, 1);
      }
      break;
    case Family::BranchOutput:
      p.comparison = rng.pick(kComparisons);
      p.when_true = random_pattern(rng, cfg.size_hint);
      do {
        p.when_false = random_pattern(rng, cfg.size_hint);
      } while (p.when_false == p.when_true);
      break;
  }
  return p;
}

std::vector<Mutation> applicable(const Params& p) {
  std::vector<Mutation> out = {Mutation::SwapComparison};
  // A negative count never terminates, so only the item set is worth swapping.
  if (p.family == Family::BranchOutput || p.item_values.kind() != ValueSet::Kind::Range) {
    out.push_back(Mutation::SwapValueSet);
  }
  if (p.family != Family::BranchOutput) out.push_back(Mutation::SwapAggregate);
  bool literal = p.family == Family::SentinelLoop;
  for (const Pattern* pat : {&p.when_true, &p.when_false}) {
    for (const auto& piece : *pat) {
      literal = literal || piece.kind == Piece::Kind::AOffset || piece.kind == Piece::Kind::BScaled;
    }
  }
  if (literal) out.push_back(Mutation::PerturbLiteral);
  return out;
}

ValueSet swapped(const ValueSet& vs) {
  if (vs.kind() == ValueSet::Kind::Ints) return ValueSet::nats();
  if (vs.kind() == ValueSet::Kind::Nats) return ValueSet::ints();
  return vs;
}

TermOp other_comparison(Rng& rng, const std::vector<TermOp>& pool, TermOp current) {
  std::vector<TermOp> rest;
  for (auto op : pool) {
    if (op != current) rest.push_back(op);
  }
  return rng.pick(rest);
}

Params mutate(const Params& p, Mutation m, Rng& rng) {
  Params q = p;
  switch (m) {
    case Mutation::SwapAggregate: {
      const std::size_t i = rng.index(q.aggregates.size());
      std::vector<Aggregate> rest;
      for (auto a : {Aggregate::Sum, Aggregate::Product, Aggregate::Length}) {
        if (std::find(q.aggregates.begin(), q.aggregates.end(), a) == q.aggregates.end()) rest.push_back(a);
      }
      if (!rest.empty()) q.aggregates[i] = rng.pick(rest);
      break;
    }
    case Mutation::SwapComparison:
      if (q.family == Family::BranchOutput) {
        q.comparison = other_comparison(rng, kComparisons, q.comparison);
      } else if (q.family == Family::CountLoop) {
        q.guard = other_comparison(rng, kCountGuards, q.guard);
      } else {
        q.guard = other_comparison(rng, kComparisons, q.guard);
      }
      break;
    case Mutation::PerturbLiteral: {
      const std::int64_t delta = rng.bernoulli(1, 2) ? 1 : -1;
      if (q.family == Family::SentinelLoop) {
        q.sentinel += delta;
        break;
      }
      std::vector<Piece*> literal_pieces;
      for (Pattern* pat : {&q.when_true, &q.when_false}) {
        for (auto& piece : *pat) {
          if (piece.kind == Piece::Kind::AOffset || piece.kind == Piece::Kind::BScaled) literal_pieces.push_back(&piece);
        }
      }
      if (!literal_pieces.empty()) literal_pieces[rng.index(literal_pieces.size())]->k += delta;
      break;
    }
    case Mutation::SwapValueSet:
      if (q.family == Family::BranchOutput) {
        if (rng.bernoulli(1, 2)) {
          q.a_values = swapped(q.a_values);
        } else {
          q.b_values = swapped(q.b_values);
        }
      } else {
        q.item_values = swapped(q.item_values);
      }
      break;
  }
  return q;
}

}  // namespace

GeneratedSpec generate_specification(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  Params p = random_params(rng, cfg);
  return {build(p), p.family};
}

Specification random_specification(const GenConfig& cfg) { return generate_specification(cfg).spec; }

bool distinguishes(const Specification& s1, const Specification& s2, std::span<const std::int64_t> feed,
                   bool value_set_rejections_count) {
  std::optional<Trace> t1, t2;
  bool rejected1 = false, rejected2 = false;
  try {
    t1 = interpret(s1, feed);
  } catch (const InterpretError& e) {
    rejected1 = e.kind() == InterpretErrorKind::ValueOutsideSet;
  }
  try {
    t2 = interpret(s2, feed);
  } catch (const InterpretError& e) {
    rejected2 = e.kind() == InterpretErrorKind::ValueOutsideSet;
  }
  if (t1 && t2) return display(*t1) != display(*t2);
  if (!value_set_rejections_count) return false;
  return (t1 && rejected2) || (t2 && rejected1);
}

SimilarPair similar_specifications(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  const Params base = random_params(rng, cfg);
  const Specification first = build(base);
  for (int attempt = 0; attempt < cfg.mutation_retries; ++attempt) {
    const Mutation m = rng.pick(applicable(base));
    const Params mutated = mutate(base, m, rng);
    if (mutated == base) continue;
    const Specification second = build(mutated);
    const bool by_value_set = m == Mutation::SwapValueSet;
    for (int trial = 0; trial < cfg.witness_trials; ++trial) {
      std::vector<std::int64_t> feed;
      try {
        feed = sample_inputs(trial % 2 == 0 ? first : second, rng);
      } catch (const SamplingFailed&) {
        continue;
      }
      if (distinguishes(first, second, feed, by_value_set)) return {first, second, std::move(feed), base.family, m};
    }
  }
  throw GenerationFailed("no behaviorally different mutation after " + std::to_string(cfg.mutation_retries) +
                         " attempts");
}

}  // namespace iospec
