#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmlab::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // verify-all failure, invalid certificate
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;     // enumeration cap, window exhausted
inline constexpr int kFailure = 4;      // malformed input, internal inconsistency

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmlab::cli
