#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lsite/io.hpp"

namespace lsite {

// Exit codes of the command-line front end.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_cap = 3 };

// Built-in workspaces: "empty", "s1", "two-cycle", "zalg".
std::vector<std::string> fixture_names();
Workspace fixture_workspace(const std::string& name, const Field& f);

// Runs one command; the JSON report goes to out, the human summary to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsite
