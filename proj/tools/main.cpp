#include <iostream>

#include "gwloc/cli/config.hpp"

int main(int argc, char** argv) {
  const auto parsed = gwloc::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return gwloc::cli::run(*parsed.config, std::cout, std::cerr);
}
