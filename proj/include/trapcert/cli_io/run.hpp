#pragma once

#include <iosfwd>

namespace trapcert::cli_io {

enum ExitCode : int { kOk = 0, kCertificateFailure = 1, kUsageOrConfig = 2 };

/// trapcert <plan|build|certify|verify-dtn|specfun-selftest|plot|report>
///   [--config PATH] [--layers N] [--dimension N] [--out DIR] [--precision D]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trapcert::cli_io
