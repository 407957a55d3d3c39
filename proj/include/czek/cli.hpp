#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace czek {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Entry point of the `czek` tool: diagram, criteria, reorder, datasets.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, taking arguments without the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace czek
