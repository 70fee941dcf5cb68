#pragma once

#include <ostream>

namespace sft::cli {

// Exit codes.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace sft::cli
