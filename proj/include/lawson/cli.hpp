// Command line front end.  Kept in the library so the tests can drive it.
//
//   lawson alpha        --order N [--phi pi/4]
//   lawson omega        --word 2,2,3 [--endpoint 1|i] [--phi pi/4]
//   lawson mzv          --index 1b,2
//   lawson area-table   --gmin 3 --gmax 10 --order 21 [--ca X --tprime Y]
//   lawson genus2-bound [--seed paper|center]
//   lawson ift-genus    --n 1 [--derivs N] [--quadratic] --optimize | --verify params.json
//   lawson selftest
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lawson {

enum ExitCode : int {
  kExitOk = 0,
  kExitComputationError = 1,
  kExitGoldenFailure = 2,
  kExitBadArguments = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Radius of the printed decimal: the disc radius plus the error of printing
/// the center with `digits` significant digits, rounded up to 3 significant digits.
std::string printed_radius(double radius, double center_abs, int digits);

}  // namespace lawson
