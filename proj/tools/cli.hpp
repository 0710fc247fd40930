#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace suppind::cli {

enum ExitCode { kOk = 0, kInternal = 1, kInputError = 2, kInvalidDistribution = 3, kNumericFailure = 4 };

// Entry point shared by the binary and the tests. argv[0] is ignored.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct ExampleEntry {
  std::string name;
  std::string description;
};

const std::vector<ExampleEntry>& example_registry();

struct ExampleOptions {
  int grid = 512;
  unsigned long long seed = 42;
  std::filesystem::path out_dir;
};

// Writes the bundle for one registered example into out_dir / name and
// returns the summary text. Throws InvalidInput for unknown names.
std::string run_example(const std::string& name, const ExampleOptions& opt);

}  // namespace suppind::cli
