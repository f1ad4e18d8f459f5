#include <iostream>

#include "discordant/cli.hpp"

int main(int argc, char** argv) {
    return discordant::run_cli(argc, argv, std::cout, std::cerr);
}
