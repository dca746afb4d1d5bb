#pragma once

#include <iosfwd>

namespace ulinf::cli {

// Exit codes: 0 all checks pass, 1 mathematical failure (witness reported), 2 input error.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kInputError = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ulinf::cli
