#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latfusion::cli {

// Exit codes: 0 success / property verified, 1 verification or check failed,
// 2 invalid input (bad arguments, unreadable files, unsupported lattices).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latfusion::cli
