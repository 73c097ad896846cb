#pragma once

#include <iosfwd>
#include <string>

namespace spectral::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAccuracy = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutEnv = "SPECTRAL_OUT";

/// Parses argv, runs one subcommand and writes its artifacts plus
/// manifest.json into the output directory. Errors are reported on `err`
/// as a single `error code=<n> kind=<kind> message="..."` line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace spectral::cli
