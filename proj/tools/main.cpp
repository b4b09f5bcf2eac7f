#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> env_tol;
  if (const char* v = std::getenv("THIELE_TOL")) env_tol = v;
  return thiele::cli::run(args, std::cout, std::cerr, env_tol);
}
