#include <string>
#include <vector>

#include "musielak/cli.hpp"

int main(int argc, char** argv) {
  return musielak::cli::run(std::vector<std::string>(argv, argv + argc));
}
