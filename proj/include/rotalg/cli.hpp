#pragma once

#include <string>
#include <vector>

namespace rotalg {

// Full command-line driver, callable in-process for tests. Arguments are
// everything after argv[0]. Returns the process exit code:
//   0  success
//   1  internal error, or a requested check that the data failed
//   2  invalid input (bad files, bad parameters, violated preconditions)
//   3  a search or tolerance ladder was exhausted (no plan, no certificate)
int run_cli(const std::vector<std::string>& args);

} // namespace rotalg
