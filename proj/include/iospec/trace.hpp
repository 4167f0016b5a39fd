#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iospec {

struct InputEvent {
  std::int64_t value;
  friend bool operator==(const InputEvent&, const InputEvent&) = default;
};

struct OutputEvent {
  std::string text;
  friend bool operator==(const OutputEvent&, const OutputEvent&) = default;
};

using TraceEvent = std::variant<InputEvent, OutputEvent>;

/// Interaction record: inputs consumed and lines printed, in order.
struct Trace {
  std::vector<TraceEvent> events;
  bool terminated = true;

  void input(std::int64_t v) { events.push_back(InputEvent{v}); }
  void output(std::string text) { events.push_back(OutputEvent{std::move(text)}); }

  friend bool operator==(const Trace&, const Trace&) = default;
};

class TraceParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "?2 ?1 ?5 !6 stop". Output text that is empty or contains whitespace,
// quotes or backslashes is written quoted, e.g. !"a b".
std::string display(const Trace& t);

// Inverse of display. A missing "stop" yields an unterminated trace.
Trace parse_trace(std::string_view text);

std::vector<std::int64_t> inputs_of(const Trace& t);

// Number of input events.
std::size_t input_count(const Trace& t);

}  // namespace iospec
