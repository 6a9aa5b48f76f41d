#include <iostream>

#include "hchain/cli.hpp"

int main(int argc, char** argv) {
    return hchain::run_cli(argc, argv, std::cout, std::cerr);
}
