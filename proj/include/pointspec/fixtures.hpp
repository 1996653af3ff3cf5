#pragma once

#include <string>
#include <vector>

#include "pointspec/config.hpp"

namespace pointspec {

// Bundled example configurations: the classic spectrum-collision pairs and the
// rhombus family used throughout the tests and the CLI.
struct Fixture {
    std::string name;
    std::string description;
    std::vector<PointConfiguration> configs;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

// Planar rhombus with squared side a and squared diagonals b, c (so b+c = 4a),
// labeled around the perimeter; requires sqrt(b)/2 and sqrt(c)/2 inside Q(sqrt(d)).
PointConfiguration make_rhombus(const QuadScalar& b, const QuadScalar& c);

}  // namespace pointspec
