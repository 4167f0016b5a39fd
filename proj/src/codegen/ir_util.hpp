#pragma once

#include <map>
#include <set>

#include "iospec/codegen.hpp"

namespace iospec::ir {

void expr_vars(const Expr& e, std::set<int>& out);

// Variables read or written anywhere in the statement.
std::set<int> touched_vars(const Stmt& st);

// Variables written anywhere in the block, nested blocks included.
std::set<int> modified_vars(const Block& b);

struct LoopLiveness {
  std::set<int> entry;  // live at the top of each iteration
  std::set<int> after;  // live once the loop is left
};

std::map<const Loop*, LoopLiveness> loop_liveness(const Program& p);

bool contains_loop(const Block& b);

}  // namespace iospec::ir
