#include <iostream>

#include "csg/cli.hpp"

int main(int argc, char** argv) {
  return csg::run_cli(argc, argv, std::cout, std::cerr);
}
