#pragma once

#include <iosfwd>

namespace epg::cli {

enum ExitCode : int
{
	kSuccess = 0,
	kUsage = 1,
	kDataError = 2,
	kNumericalError = 3,
	/// `fit` stopped at max_iterations before the partition settled.
	kNotConverged = 4,
};

/// Entry point shared by the executable and the tests. Results go to files
/// named on the command line or to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace epg::cli
