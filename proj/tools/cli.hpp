#pragma once

namespace htwave::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 computation error (diagnostic JSON written),
// 2 usage error.
int parse_and_dispatch(int argc, char** argv);

}  // namespace htwave::cli
