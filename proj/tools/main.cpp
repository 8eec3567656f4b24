#include <cstdio>
#include <string>
#include <vector>

#include "gind/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const gind::cli::RunResult r = gind::cli::run(args);
  if (!r.wrote_file) std::fputs(r.output.c_str(), stdout);
  return r.exit_code;
}
