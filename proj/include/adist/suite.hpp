#pragma once

#include <iosfwd>
#include <vector>

#include "adist/dist_elem.hpp"

namespace adist::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the numbered acceptance criteria (empty selection = all 8).
std::vector<CriterionResult> run(const std::vector<int>& which = {});

/// Run and print one pass/fail line per criterion; returns the failure count.
int run_and_print(std::ostream& os, const std::vector<int>& which = {});

}  // namespace adist::suite
