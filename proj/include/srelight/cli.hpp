#pragma once

#include <string>
#include <vector>

namespace srelight {

/// Runs the `srelight` command line. Returns the process exit code:
/// 0 on success, 2 for usage/parameter errors, 3 for data errors.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace srelight
