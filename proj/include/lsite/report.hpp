#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lsite/matrix.hpp"

namespace lsite {

// A violation or counterexample with enough data to replay it by hand.
struct Finding {
    std::string kind;
    std::vector<std::string> objects;
    std::vector<std::pair<std::string, Matrix>> data;
    std::string detail;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Finding> violations;

    void fail(Finding f) {
        valid = false;
        violations.push_back(std::move(f));
    }
};

}  // namespace lsite
