#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bernsum::cli {

/// Runs the command line (args exclude the program name) and writes the
/// report to `out`. Exit codes: 0 ok, 1 verification mismatch, 2 usage
/// or invalid spec, 3 enumeration/truncation budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bernsum::cli
