#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace latticefold {

struct NelderMeadConfig {
    double f_tolerance = 0.001;  // stop when max-min of simplex values drops below
    int max_evals = 2000;
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 0.25;  // simplex spread around the start point
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
};

// Downhill simplex minimization with the standard coefficient set.
// Deterministic given the start point. Throws on non-finite objective values.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadConfig& cfg = {});

}  // namespace latticefold
