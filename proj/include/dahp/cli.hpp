// cli.hpp - command-line front end (partition, convert, verify, bench, profile)
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dahp {

// Exit codes: 0 success, 1 verification failure, 2 malformed input or usage.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dahp
