#include <iostream>
#include <string>
#include <vector>

#include "lgkac/cli.hpp"

int main(int argc, char** argv) {
    return lgkac::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout);
}
