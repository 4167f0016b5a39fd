#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "iospec/rng.hpp"
#include "iospec/spec.hpp"

namespace iospec {

enum class Family {
  CountLoop,     // read n, then n values
  SentinelLoop,  // values until a stop value
  BranchOutput,  // two reads, output depends on a comparison
};

enum class Aggregate { Sum, Product, Length };

enum class Mutation { SwapAggregate, SwapComparison, PerturbLiteral, SwapValueSet };

std::string_view to_string(Family f);
std::string_view to_string(Aggregate a);
std::string_view to_string(Mutation m);

struct GenConfig {
  std::uint64_t seed = 0;
  // Above 3, outputs combine several aggregates or pattern pieces.
  int size_hint = 3;
  int witness_trials = 1000;
  int mutation_retries = 50;
  std::optional<Family> family;
  std::optional<Aggregate> aggregate;  // loop families only
};

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratedSpec {
  Specification spec;
  Family family;
};

/// Deterministic in cfg. CountLoop with a forced Sum aggregate yields
/// example_specification().
GeneratedSpec generate_specification(const GenConfig& cfg);
Specification random_specification(const GenConfig& cfg);

struct SimilarPair {
  Specification first;
  Specification second;
  std::vector<std::int64_t> witness;
  Family family;
  Mutation mutation;
};

/// first is random_specification(cfg); second differs by one mutation and
/// behaves differently on witness. Throws GenerationFailed.
SimilarPair similar_specifications(const GenConfig& cfg);

/// Whether the feed tells the two specifications apart: both run and produce
/// different traces, or, when value sets may differ, exactly one rejects a
/// value as inadmissible.
bool distinguishes(const Specification& s1, const Specification& s2, std::span<const std::int64_t> feed,
                   bool value_set_rejections_count);

}  // namespace iospec
