#include "ir_util.hpp"

namespace iospec::ir {

void expr_vars(const Expr& e, std::set<int>& out) {
  if (e.var >= 0) out.insert(e.var);
  for (const auto& k : e.kids) expr_vars(k, out);
}

namespace {

void touched_into(const Stmt& st, std::set<int>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ReadInto>) {
          out.insert(n.var);
        } else if constexpr (std::is_same_v<T, Append>) {
          out.insert(n.list);
          out.insert(n.value);
        } else if constexpr (std::is_same_v<T, Assign>) {
          out.insert(n.var);
          expr_vars(n.value, out);
        } else if constexpr (std::is_same_v<T, InitList>) {
          out.insert(n.list);
        } else if constexpr (std::is_same_v<T, Print>) {
          for (const auto& seg : n.segments) {
            if (const auto* e = std::get_if<Expr>(&seg)) expr_vars(*e, out);
          }
        } else if constexpr (std::is_same_v<T, If>) {
          expr_vars(n.cond, out);
          for (const auto& s : n.then_body) touched_into(s, out);
          for (const auto& s : n.else_body) touched_into(s, out);
        } else if constexpr (std::is_same_v<T, Loop>) {
          for (const auto& s : n.body) touched_into(s, out);
        }
      },
      st.node);
}

void modified_into(const Block& b, std::set<int>& out) {
  for (const auto& st : b) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ReadInto>) {
            out.insert(n.var);
          } else if constexpr (std::is_same_v<T, Append>) {
            out.insert(n.list);
          } else if constexpr (std::is_same_v<T, Assign>) {
            out.insert(n.var);
          } else if constexpr (std::is_same_v<T, InitList>) {
            out.insert(n.list);
          } else if constexpr (std::is_same_v<T, If>) {
            modified_into(n.then_body, out);
            modified_into(n.else_body, out);
          } else if constexpr (std::is_same_v<T, Loop>) {
            modified_into(n.body, out);
          }
        },
        st.node);
  }
}

class Liveness {
 public:
  std::map<const Loop*, LoopLiveness> result;

  // Live variables before the block, given those live after it and those live
  // after the innermost enclosing loop.
  std::set<int> block(const Block& b, std::set<int> live, const std::set<int>& at_break) {
    for (auto it = b.rbegin(); it != b.rend(); ++it) live = stmt(*it, std::move(live), at_break);
    return live;
  }

 private:
  std::set<int> stmt(const Stmt& st, std::set<int> live, const std::set<int>& at_break) {
    return std::visit(
        [&](const auto& n) -> std::set<int> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ReadInto>) {
            live.erase(n.var);
          } else if constexpr (std::is_same_v<T, Append>) {
            live.insert(n.list);
            live.insert(n.value);
          } else if constexpr (std::is_same_v<T, Assign>) {
            live.erase(n.var);
            expr_vars(n.value, live);
          } else if constexpr (std::is_same_v<T, InitList>) {
            live.erase(n.list);
          } else if constexpr (std::is_same_v<T, Print>) {
            for (const auto& seg : n.segments) {
              if (const auto* e = std::get_if<Expr>(&seg)) expr_vars(*e, live);
            }
          } else if constexpr (std::is_same_v<T, If>) {
            std::set<int> out = block(n.then_body, live, at_break);
            std::set<int> other = block(n.else_body, live, at_break);
            out.insert(other.begin(), other.end());
            expr_vars(n.cond, out);
            return out;
          } else if constexpr (std::is_same_v<T, Loop>) {
            std::set<int> entry;
            for (;;) {
              std::set<int> next = block(n.body, entry, live);
              if (next == entry) break;
              entry = std::move(next);
            }
            result[&n] = {entry, live};
            return entry;
          } else if constexpr (std::is_same_v<T, Break>) {
            return at_break;
          }
          return live;
        },
        st.node);
  }
};

}  // namespace

std::set<int> touched_vars(const Stmt& st) {
  std::set<int> out;
  touched_into(st, out);
  return out;
}

std::set<int> modified_vars(const Block& b) {
  std::set<int> out;
  modified_into(b, out);
  return out;
}

std::map<const Loop*, LoopLiveness> loop_liveness(const Program& p) {
  Liveness l;
  l.block(p.body, {}, {});
  return std::move(l.result);
}

bool contains_loop(const Block& b) {
  for (const auto& st : b) {
    if (std::holds_alternative<Loop>(st.node)) return true;
    if (const auto* i = std::get_if<If>(&st.node)) {
      if (contains_loop(i->then_body) || contains_loop(i->else_body)) return true;
    }
  }
  return false;
}

}  // namespace iospec::ir
