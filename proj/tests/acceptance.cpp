// Acceptance suite: one pass/fail line per criterion; nonzero exit on failure.
#include <iostream>

#include "adist/suite.hpp"

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    int failures = adist::suite::run_and_print(std::cout, which);
    if (failures) {
        std::cout << failures << " criterion(s) FAILED\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
