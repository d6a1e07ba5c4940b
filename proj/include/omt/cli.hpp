#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace omt {

// Runs one omt command. argv excludes the program name.
// Exit codes: 0 success, 1 a single requested predicate is false, 2 error.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err, bool color = false);

// OMT_COLOR=always|never|auto; auto colours only terminals
bool color_from_env(bool is_tty);

}  // namespace omt
