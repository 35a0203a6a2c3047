#include "covparam/grids.hpp"

#include <cmath>
#include <sstream>

#include "covparam/errors.hpp"

namespace covparam {

GridSpec parse_grid(const std::string& text, bool log) {
    GridSpec spec;
    spec.log = log;
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3)
        throw ValidationError("grid spec must be start:stop:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        spec.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
        spec.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        spec.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw ValidationError("could not parse grid spec '" + text + "'");
    }
    return spec;
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.count < 1) throw ValidationError("grid count must be >= 1");
    if (spec.count == 1) return {spec.start};
    if (!(spec.stop > spec.start))
        throw ValidationError("grid requires stop > start");
    std::vector<double> grid(static_cast<std::size_t>(spec.count));
    if (spec.log) {
        if (!(spec.start > 0.0))
            throw ValidationError("log grid requires positive endpoints");
        const double la = std::log(spec.start), lb = std::log(spec.stop);
        for (int k = 0; k < spec.count; ++k)
            grid[static_cast<std::size_t>(k)] =
                std::exp(la + (lb - la) * k / (spec.count - 1));
    } else {
        for (int k = 0; k < spec.count; ++k)
            grid[static_cast<std::size_t>(k)] =
                spec.start + (spec.stop - spec.start) * k / (spec.count - 1);
    }
    grid.front() = spec.start;
    grid.back() = spec.stop;
    return grid;
}

}  // namespace covparam
