#include <iostream>

#include "oraclegen/cli.hpp"

int main(int argc, char** argv) {
    return oraclegen::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
