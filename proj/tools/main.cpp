#include <iostream>

#include "ranbench/bench/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return ranbench::bench::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
