#pragma once

#include <vector>

#include "iospec/semantics.hpp"

namespace iospec::detail {

struct LoopFrame {
  const TillExit* loop;
  std::int64_t iterations;  // body executions started so far
};

/// Deterministic co-execution of a specification; the source decides which
/// value each read produces.
template <class Source>
class Executor {
 public:
  Executor(const Limits& limits, Source& source) : limits_(limits), source_(source) {}

  Trace run(const Specification& s) {
    for (const auto& v : read_variables(s)) env_.declare(v);
    exec(s);
    return std::move(trace_);
  }

 private:
  enum class Flow { Normal, Exit };

  Flow exec(const Specification& s) {
    Specification cur = s;
    while (const auto* q = cur.as<Seq>()) {
      if (exec_one(q->first) == Flow::Exit) return Flow::Exit;
      cur = q->second;
    }
    return exec_one(cur);
  }

  Flow exec_one(const Specification& s) {
    const auto& v = s.node().value;
    if (const auto* r = std::get_if<ReadInput>(&v)) {
      const std::int64_t value = source_.next(*r, loops_);
      env_.append(r->var, value);
      trace_.input(value);
      count_event();
      return Flow::Normal;
    }
    if (const auto* w = std::get_if<WriteOutput>(&v)) {
      const OutputPattern& first = w->alternatives.front();
      if (!first.empty()) {
        try {
          trace_.output(first.render(env_));
        } catch (const EvalError& e) {
          throw InterpretError(InterpretErrorKind::Eval, e.what());
        }
        count_event();
      }
      return Flow::Normal;
    }
    if (const auto* b = std::get_if<Branch>(&v)) {
      bool taken;
      try {
        taken = eval_bool(b->condition, env_);
      } catch (const EvalError& e) {
        throw InterpretError(InterpretErrorKind::Eval, e.what());
      }
      return exec(taken ? b->if_true : b->if_false);
    }
    if (const auto* l = std::get_if<TillExit>(&v)) {
      loops_.push_back({l, 0});
      for (;;) {
        if (++loops_.back().iterations > limits_.max_loop_iterations) {
          throw InterpretError(InterpretErrorKind::LoopLimitExceeded, "loop iteration limit exceeded");
        }
        if (exec(l->body) == Flow::Exit) break;
      }
      loops_.pop_back();
      return Flow::Normal;
    }
    if (std::holds_alternative<Exit>(v)) return Flow::Exit;
    return Flow::Normal;
  }

  void count_event() {
    if (static_cast<std::int64_t>(trace_.events.size()) > limits_.max_trace_events) {
      throw InterpretError(InterpretErrorKind::TraceLimitExceeded, "trace event limit exceeded");
    }
  }

  const Limits& limits_;
  Source& source_;
  Environment env_;
  Trace trace_;
  std::vector<LoopFrame> loops_;
};

}  // namespace iospec::detail
