#include <iostream>

#include "wordlen/cli.hpp"

int main(int argc, char** argv) {
  return wordlen::run(argc, argv, std::cout, std::cerr);
}
