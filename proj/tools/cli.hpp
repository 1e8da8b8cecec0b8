#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace npadi::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumerical = 3,
    kIo = 4,
};

/// Runs one command line. `args` excludes the program name. Reports go to `out`
/// (or to the file named by --output), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Parses "0.5,pi/4,2*pi/16,pi" into numbers. Throws std::invalid_argument.
std::vector<double> parse_number_list(std::string_view text);

} // namespace npadi::cli
