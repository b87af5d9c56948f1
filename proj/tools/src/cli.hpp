#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vlex::cli {

/// Dispatches one CLI invocation. `args` excludes the program name.
/// Returns the process exit code: 0 = computed / certified, 1 = a
/// certificate failed (the report carries the witness), 2 = invalid
/// input or usage.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace vlex::cli
