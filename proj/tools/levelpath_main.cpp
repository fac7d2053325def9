#include <iostream>
#include <string>
#include <vector>

#include "levelpath/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return levelpath::cli::run(args, std::cout, std::cerr);
}
