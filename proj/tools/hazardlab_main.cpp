#include <iostream>
#include <locale>
#include <string>
#include <vector>

#include "hazardlab/cli.hpp"

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());
  std::vector<std::string> args(argv + 1, argv + argc);
  return hazardlab::cli::dispatch(args, std::cout, std::cerr);
}
