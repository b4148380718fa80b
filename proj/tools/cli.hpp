#pragma once

#include <ostream>

namespace faircon {

// Exit codes: 0 success, 1 verification failed, 2 budget exceeded, 3 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace faircon
