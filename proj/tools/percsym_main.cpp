#include "percsym/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return percsym::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
