#pragma once

#include <string>
#include <vector>

#include "pierce/instance_io.hpp"

namespace pierce {

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Recomputes every report invariant from the instance alone: transversal hits
// every body, tau* against a fresh LP solve, sum m(S) <= D at every candidate in
// integer arithmetic, coverage of z, and the greedy size bound.
std::vector<CheckLine> verify_report(const Instance& inst, const TransversalReport& rep,
                                     const RunConfig& config = {});

}  // namespace pierce
