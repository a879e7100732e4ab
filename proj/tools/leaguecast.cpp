#include <iostream>
#include <string>
#include <vector>

#include "leaguecast/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return leaguecast::cli::run(args, std::cout, std::cerr);
}
