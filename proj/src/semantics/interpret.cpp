#include "executor.hpp"

namespace iospec {

std::string_view to_string(InterpretErrorKind kind) {
  switch (kind) {
    case InterpretErrorKind::InputsExhausted:
      return "InputsExhausted";
    case InterpretErrorKind::ValueOutsideSet:
      return "ValueOutsideSet";
    case InterpretErrorKind::LoopLimitExceeded:
      return "LoopLimitExceeded";
    case InterpretErrorKind::TraceLimitExceeded:
      return "TraceLimitExceeded";
    case InterpretErrorKind::Eval:
      return "EvalError";
  }
  return "?";
}

namespace {

class FeedSource {
 public:
  explicit FeedSource(std::span<const std::int64_t> feed) : feed_(feed) {}

  std::int64_t next(const ReadInput& read, const std::vector<detail::LoopFrame>&) {
    if (index_ >= feed_.size()) {
      throw InterpretError(InterpretErrorKind::InputsExhausted,
                           "no input left for read of '" + read.var.str() + "'");
    }
    const std::int64_t v = feed_[index_++];
    if (!read.values.contains(v)) {
      throw InterpretError(InterpretErrorKind::ValueOutsideSet,
                           "value " + std::to_string(v) + " is not admissible for '" + read.var.str() + "'");
    }
    return v;
  }

 private:
  std::span<const std::int64_t> feed_;
  std::size_t index_ = 0;
};

}  // namespace

Trace interpret(const Specification& s, std::span<const std::int64_t> feed, const Limits& limits) {
  FeedSource source(feed);
  return detail::Executor<FeedSource>(limits, source).run(s);
}

}  // namespace iospec
