#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iospec/codegen.hpp"

namespace iospec::render {

enum class Region { Read, Print, LoopBody };

// Program text with marked regions that a hole policy may blank out.
class Doc {
 public:
  void text(std::string_view s) { events_.push_back({Kind::Text, std::string(s), Region::Read}); }
  void open(Region r) { events_.push_back({Kind::Open, {}, r}); }
  void close() { events_.push_back({Kind::Close, {}, Region::Read}); }

  // Regions matching the policy become "???" unless nested in another hole.
  // Leading spaces and trailing newlines of a region stay visible.
  Rendering flatten(HolePolicy policy) const;

 private:
  enum class Kind { Text, Open, Close };
  struct Event {
    Kind kind;
    std::string text;
    Region region;
  };
  std::vector<Event> events_;
};

struct Piece {
  std::string text;
  bool marked = false;
  Region region = Region::Read;
};

using Line = std::vector<Piece>;

inline Piece plain(std::string s) { return {std::move(s), false, Region::Read}; }
inline Piece marked(std::string s, Region r) { return {std::move(s), true, r}; }

void emit_line(Doc& doc, int indent, const Line& line);

// Escaped double-quoted literal; python adds f-string brace doubling.
std::string quote(std::string_view s, bool fstring_braces = false);

}  // namespace iospec::render
