#pragma once

#include <iosfwd>

namespace modlat::cli {

/// Runs the modlat command line. Returns 0 on success, 1 when a reported
/// check failed (tables), 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modlat::cli
