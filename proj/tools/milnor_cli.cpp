#include "milnor/cli.hpp"

int main(int argc, char** argv) {
    return milnor::cli::run(argc, argv, std::cout, std::cerr);
}
