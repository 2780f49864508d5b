#pragma once

#include <string>
#include <vector>

namespace nilric {

// Entry point of the nilric binary; args excludes argv[0]. Exit codes:
// 0 positive certificate / passing suite, 1 not_positive / failure,
// 2 usage or input error, 3 inconclusive.
int run_cli(std::vector<std::string> args);

}  // namespace nilric
