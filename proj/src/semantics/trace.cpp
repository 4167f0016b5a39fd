#include "iospec/trace.hpp"

#include <cctype>
#include <charconv>

namespace iospec {

namespace {

bool needs_quotes(std::string_view text) {
  if (text.empty()) return true;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\\') return true;
  }
  return false;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

std::int64_t parse_int(std::string_view digits, std::string_view token) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw TraceParseError("bad input event '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

std::string display(const Trace& t) {
  std::string out;
  for (const auto& ev : t.events) {
    if (!out.empty()) out += ' ';
    if (const auto* in = std::get_if<InputEvent>(&ev)) {
      out += '?';
      out += std::to_string(in->value);
    } else {
      const auto& text = std::get<OutputEvent>(ev).text;
      out += '!';
      out += needs_quotes(text) ? quote(text) : text;
    }
  }
  if (t.terminated) out += out.empty() ? "stop" : " stop";
  return out;
}

Trace parse_trace(std::string_view text) {
  Trace t;
  t.terminated = false;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (t.terminated) throw TraceParseError("events after 'stop'");
    const std::size_t start = i;
    if (text[i] == '!' && i + 1 < text.size() && text[i + 1] == '"') {
      i += 2;
      std::string out;
      bool closed = false;
      while (i < text.size()) {
        char c = text[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c != '\\') {
          out += c;
          continue;
        }
        if (i >= text.size()) break;
        char e = text[i++];
        switch (e) {
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          case 'r':
            out += '\r';
            break;
          case '"':
          case '\\':
            out += e;
            break;
          default:
            throw TraceParseError(std::string("unknown escape '\\") + e + "'");
        }
      }
      if (!closed) throw TraceParseError("unterminated quoted output");
      if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        throw TraceParseError("missing space after quoted output");
      }
      t.output(std::move(out));
      skip_ws();
      continue;
    }
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view token = text.substr(start, i - start);
    if (token == "stop") {
      t.terminated = true;
    } else if (token.front() == '?') {
      t.input(parse_int(token.substr(1), token));
    } else if (token.front() == '!') {
      if (token.size() == 1) throw TraceParseError("empty output event must be written !\"\"");
      t.output(std::string(token.substr(1)));
    } else {
      throw TraceParseError("unexpected token '" + std::string(token) + "'");
    }
    skip_ws();
  }
  return t;
}

std::vector<std::int64_t> inputs_of(const Trace& t) {
  std::vector<std::int64_t> out;
  for (const auto& ev : t.events) {
    if (const auto* in = std::get_if<InputEvent>(&ev)) out.push_back(in->value);
  }
  return out;
}

std::size_t input_count(const Trace& t) {
  std::size_t n = 0;
  for (const auto& ev : t.events) n += std::holds_alternative<InputEvent>(ev);
  return n;
}

}  // namespace iospec
