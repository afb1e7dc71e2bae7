// Command-line front end. Exit codes: 0 affirmative, 1 negative result,
// 2 usage or input error.
#ifndef SUBINT_CLI_HPP
#define SUBINT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace subint {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Directory holding the shipped proof scripts and models.
std::string fixtures_dir();

}  // namespace subint

#endif
