#ifndef PGAUSS_TOOLS_CLI_HPP
#define PGAUSS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pgauss::cli
{

enum ExitCode : int
{
    kExitSuccess = 0,
    kExitIo = 1,
    kExitValidation = 2,
    kExitVerification = 3,
};

/// Runs the command line `args` (without the program name). Grid and report
/// output goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pgauss::cli

#endif
