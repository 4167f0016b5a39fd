#pragma once

#include "iospec/harness.hpp"

namespace iospec::detail {

RunOutcome run_external(const ExternalProgram& prog, std::span<const std::int64_t> feed);

}  // namespace iospec::detail
