#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nimfa {

/// Command-line frontend. args excludes the program name.
/// Exit codes: 0 success, 1 validation or assumption failure (and any other
/// library error), 2 usage error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nimfa
