#pragma once

#include <string>
#include <vector>

namespace covparam {

/// Evaluation grid described as start:stop:count, optionally log-spaced.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log = false;
};

/// Parse "start:stop:count". Throws ValidationError on malformed input.
GridSpec parse_grid(const std::string& text, bool log = false);

/// Materialize the grid. count == 1 yields {start}; log grids require
/// strictly positive endpoints.
std::vector<double> make_grid(const GridSpec& spec);

}  // namespace covparam
