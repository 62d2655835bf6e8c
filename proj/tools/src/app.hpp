#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfocus::cli {

// Entry point shared by main() and the tests.  args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace cfocus::cli
