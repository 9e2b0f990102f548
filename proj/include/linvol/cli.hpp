#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linvol {

// Exit codes: 0 success, 1 usage, 2 parse/validation, 3 budget exceeded,
// 4 internal invariant breach.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linvol
