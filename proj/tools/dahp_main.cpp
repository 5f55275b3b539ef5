// dahp_main.cpp - command-line entry point
#include <iostream>
#include <string>
#include <vector>

#include "dahp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dahp::runCli(args, std::cout, std::cerr);
}
