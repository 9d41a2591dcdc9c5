#include <iostream>
#include <string>
#include <vector>

#include <braidrep/interface.hpp>

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return braidrep::cli::run(args, std::cout, std::cerr);
}
