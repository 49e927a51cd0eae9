// Ordered (v1, v2) boundary points of an MSE trade-off region.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace qmetro {

struct Curve {
    std::vector<std::array<double, 2>> pts;  // v1 strictly increasing, v2 non-increasing
    std::string descriptor;
    std::vector<int> dropped;  // input-grid indices that produced no finite point
};

}  // namespace qmetro
