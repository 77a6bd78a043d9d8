#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric {

/// Exit codes: 0 all checks pass, 1 a congruence failed, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric
