#include <memory>

#include "iospec/semantics.hpp"

namespace iospec {

namespace {

// Continuation of the walk: either "then run this" or "loop back".
struct Frame;
using Cont = std::shared_ptr<const Frame>;

struct Frame {
  Specification then;       // used when loop == nullptr
  const TillExit* loop;     // loop to re-enter
  std::int64_t iterations;  // iterations of `loop` started so far
  Cont next;
};

Cont push_then(Specification s, Cont next) {
  return std::make_shared<const Frame>(Frame{std::move(s), nullptr, 0, std::move(next)});
}

Cont push_loop(const TillExit* loop, std::int64_t iterations, Cont next) {
  return std::make_shared<const Frame>(Frame{Specification(), loop, iterations, std::move(next)});
}

class Acceptor {
 public:
  Acceptor(const Trace& trace, const Limits& limits) : events_(trace.events), limits_(limits) {}

  bool walk(Specification spec, Cont cont, std::size_t pos, Environment env) {
    for (;;) {
      if (--budget_ < 0) return false;
      const auto& v = spec.node().value;
      if (std::holds_alternative<Nop>(v)) {
        if (!cont) return pos == events_.size();
        const Frame& f = *cont;
        if (f.loop == nullptr) {
          spec = f.then;
          cont = f.next;
        } else {
          if (f.iterations >= limits_.max_loop_iterations) return false;
          spec = f.loop->body;
          cont = push_loop(f.loop, f.iterations + 1, f.next);
        }
      } else if (const auto* q = std::get_if<Seq>(&v)) {
        cont = push_then(q->second, std::move(cont));
        spec = q->first;
      } else if (const auto* r = std::get_if<ReadInput>(&v)) {
        if (pos >= events_.size()) return false;
        const auto* in = std::get_if<InputEvent>(&events_[pos]);
        if (in == nullptr || !r->values.contains(in->value)) return false;
        env.append(r->var, in->value);
        ++pos;
        spec = Specification();
      } else if (const auto* w = std::get_if<WriteOutput>(&v)) {
        bool can_skip = false;
        bool can_match = false;
        const OutputEvent* out = pos < events_.size() ? std::get_if<OutputEvent>(&events_[pos]) : nullptr;
        for (const auto& alt : w->alternatives) {
          if (alt.empty()) {
            can_skip = true;
            continue;
          }
          if (out == nullptr || can_match) continue;
          try {
            can_match = alt.render(env) == out->text;
          } catch (const EvalError&) {
            // An alternative that cannot be evaluated matches nothing.
          }
        }
        if (can_skip && can_match) {
          if (walk(Specification(), cont, pos, env)) return true;
          if (budget_ < 0) return false;
        }
        if (can_match) {
          ++pos;
        } else if (!can_skip) {
          return false;
        }
        spec = Specification();
      } else if (const auto* b = std::get_if<Branch>(&v)) {
        bool taken;
        try {
          taken = eval_bool(b->condition, env);
        } catch (const EvalError&) {
          return false;
        }
        spec = taken ? b->if_true : b->if_false;
      } else if (const auto* l = std::get_if<TillExit>(&v)) {
        cont = push_loop(l, 1, std::move(cont));
        spec = l->body;
      } else {
        // Exit: drop frames up to and including the innermost loop.
        while (cont && cont->loop == nullptr) cont = cont->next;
        if (cont) cont = cont->next;
        spec = Specification();
      }
    }
  }

 private:
  static constexpr std::int64_t kStepBudget = 2'000'000;

  const std::vector<TraceEvent>& events_;
  const Limits& limits_;
  std::int64_t budget_ = kStepBudget;
};

}  // namespace

bool accept(const Specification& s, const Trace& t, const Limits& limits) {
  if (!t.terminated) return false;
  if (static_cast<std::int64_t>(t.events.size()) > limits.max_trace_events) return false;
  Environment env;
  for (const auto& v : read_variables(s)) env.declare(v);
  return Acceptor(t, limits).walk(s, nullptr, 0, std::move(env));
}

}  // namespace iospec
