#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causalbox::cli {

// Exit codes: 0 success or member, 2 not a member or violated, 1 usage or input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causalbox::cli
