#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gini::cli {

enum ExitCode : int {
  kMember = 0,
  kOk = 0,
  kNonMember = 1,
  kUsage = 2,
  kInconclusive = 3,
  kResource = 4,
};

/// Runs one ginicmp invocation. args excludes the program name. stdout
/// receives a single JSON document (or the CSV stream of `slice`); stderr
/// receives diagnostics only.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gini::cli
