// Acceptance suite: one pass/fail line per criterion; exit 0 iff all pass.
#include <iostream>
#include <string>

#include "milnor/verify.hpp"

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "all";
    try {
        return milnor::print_suite(milnor::run_suite(suite), std::cout);
    } catch (const std::exception& e) {
        std::cout << "FAIL  suite aborted: " << e.what() << "\n";
        return 1;
    }
}
