#pragma once

#include <string>
#include <vector>

namespace wrcm {

// Entry point behind the wrcm binary. Returns 0 on success, 1 on validation
// or usage errors, 2 on runtime failures.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace wrcm
