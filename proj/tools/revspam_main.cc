#include <iostream>
#include <string>
#include <vector>

#include "revspam/cli.h"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return revspam::Run(args, std::cout, std::cerr);
}
