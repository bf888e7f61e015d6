#include <iostream>

#include "cli.hpp"
#include "uniquemax/kernels.hpp"

int main(int argc, char** argv) {
  uniquemax::apply_thread_limit_from_env();
  const auto parsed = uniquemax::cli::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << "\n";
    return parsed.exit_code;
  }
  return uniquemax::cli::run(*parsed.config, std::cout, std::cerr);
}
