#pragma once

#include <string>
#include <vector>

namespace gowerslab::cli {

// Exit codes: 0 pass, 1 failed verdict, 2 configuration error.
int main_entry(int argc, const char* const* argv);
int main_entry(const std::vector<std::string>& args); // args without argv[0]

} // namespace gowerslab::cli
