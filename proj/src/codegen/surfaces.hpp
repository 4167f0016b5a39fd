#pragma once

#include "doc.hpp"

namespace iospec::render {

Doc haskell_doc(const ir::Program& p, Rng& rng);
Doc python_doc(const ir::Program& p);

}  // namespace iospec::render
