#include "surfaces.hpp"

namespace iospec {

namespace {

render::Doc doc_for(const ir::Program& p, Surface surface, Rng& rng) {
  return surface == Surface::Haskell ? render::haskell_doc(p, rng) : render::python_doc(p);
}

void drop_final_newline(std::string& s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
}

ir::Program preferred_ir(const Specification& s) {
  try {
    return lower_to_ir(s, ProgramStyle::FoldState);
  } catch (const StyleUnsupported&) {
    return lower_to_ir(s, ProgramStyle::ListAccum);
  }
}

}  // namespace

std::string render_program(const ir::Program& p, Surface surface, Rng& rng) {
  Rendering r = doc_for(p, surface, rng).flatten(HolePolicy::None);
  drop_final_newline(r.text);
  return r.text;
}

Rendering render_with_holes(const ir::Program& p, RenderTarget target, Rng& rng) {
  Rendering r = doc_for(p, target.surface, rng).flatten(target.holes);
  if (target.holes != HolePolicy::None && r.fills.empty()) {
    throw NoHolableConstruct(target.holes == HolePolicy::LoopBody ? "program has no loop"
                                                                  : "program has no reads or prints");
  }
  drop_final_newline(r.text);
  return r;
}

std::string restore_holes(const Rendering& r) {
  std::string out;
  std::size_t pos = 0, k = 0;
  for (;;) {
    const std::size_t at = r.text.find("???", pos);
    if (at == std::string::npos || k >= r.fills.size()) break;
    out.append(r.text, pos, at - pos);
    out += r.fills[k++];
    pos = at + 3;
  }
  out.append(r.text, pos, std::string::npos);
  return out;
}

std::string haskell_program(const Specification& s, Rng& rng) {
  return render_program(preferred_ir(s), Surface::Haskell, rng);
}

std::string python_program(const Specification& s, Rng& rng) {
  return render_program(lower_to_ir(s, ProgramStyle::ListAccum), Surface::Python, rng);
}

std::pair<std::string, std::string> different_programs(const Specification& s1, const Specification& s2, Rng& rng) {
  const ir::Program p1 = preferred_ir(s1);
  const ir::Program p2 = preferred_ir(s2);
  std::string first = render_program(p1, Surface::Haskell, rng);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::string second = render_program(p2, Surface::Haskell, rng);
    if (second != first) return {std::move(first), std::move(second)};
  }
  throw RetriesExhausted("no distinct rendering after 100 attempts");
}

}  // namespace iospec
