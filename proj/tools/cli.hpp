#ifndef DCL_TOOLS_CLI_HPP_
#define DCL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dcl::cli {

  enum ExitCode : int { kOk = 0, kInputError = 2, kCapExceeded = 3 };

  // Runs the dclc front end; args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err);

}  // namespace dcl::cli

#endif  // DCL_TOOLS_CLI_HPP_
