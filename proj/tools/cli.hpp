#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radgas::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

// Parses argv and runs one subcommand. Human-readable output goes to out;
// errors are written to err as a single JSON object.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lines of the a_k table, "a1 = 1·√2" through "aK = ...".
std::vector<std::string> coeff_table(int K);

// Worker count for sweep: RADGAS_THREADS if set and positive, else the hardware count.
unsigned sweep_threads();

}  // namespace radgas::cli
