#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fermi::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInequality = 3,
  kUnsupported = 4,
  kUnknownPreset = 5,
};

struct CommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> ops;  // library operations reached through this command
};

const std::vector<CommandInfo>& command_registry();

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermi::cli
