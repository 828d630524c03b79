// Command-line driver.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ucm {

/// Runs the `ucm` command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 model errors, 2 usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ucm
