#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssekit::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kDomain = 3,
  kVerification = 4,
  kNotYetFull = 10,
  kDistinguished = 20,
};

/// Runs one command line (args exclude the program name). Results go to
/// `out`; diagnostics go to `err` as `ERROR <code>: <message>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssekit::cli
