#include "doc.hpp"

namespace iospec::render {

namespace {

bool matches(HolePolicy policy, Region r) {
  switch (policy) {
    case HolePolicy::None:
      return false;
    case HolePolicy::ReadsAndPrints:
      return r == Region::Read || r == Region::Print;
    case HolePolicy::LoopBody:
      return r == Region::LoopBody;
  }
  return false;
}

}  // namespace

Rendering Doc::flatten(HolePolicy policy) const {
  Rendering out;
  int depth = 0;       // open regions inside the current hole
  bool in_hole = false;
  std::string fill;
  for (const auto& e : events_) {
    switch (e.kind) {
      case Kind::Text:
        (in_hole ? fill : out.text) += e.text;
        break;
      case Kind::Open:
        if (in_hole) {
          ++depth;
        } else if (matches(policy, e.region)) {
          in_hole = true;
          depth = 0;
          fill.clear();
        }
        break;
      case Kind::Close:
        if (!in_hole) break;
        if (depth > 0) {
          --depth;
          break;
        }
        in_hole = false;
        {
          const std::size_t lead = fill.find_first_not_of(' ');
          std::size_t end = fill.size();
          while (end > 0 && fill[end - 1] == '\n') --end;
          const std::size_t begin = lead == std::string::npos ? end : lead;
          out.text += fill.substr(0, begin);
          out.text += "???";
          out.fills.push_back(fill.substr(begin, end - begin));
          out.text += fill.substr(end);
        }
        break;
    }
  }
  return out;
}

void emit_line(Doc& doc, int indent, const Line& line) {
  doc.text(std::string(static_cast<std::size_t>(indent), ' '));
  for (const auto& p : line) {
    if (p.marked) doc.open(p.region);
    doc.text(p.text);
    if (p.marked) doc.close();
  }
  doc.text("\n");
}

std::string quote(std::string_view s, bool fstring_braces) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '{':
      case '}':
        out += c;
        if (fstring_braces) out += c;
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

}  // namespace iospec::render
