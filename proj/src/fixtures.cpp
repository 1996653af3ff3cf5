#include "pointspec/fixtures.hpp"

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

PointConfiguration from_ints(std::vector<std::vector<long>> coords) {
    std::vector<std::vector<QuadScalar>> pts;
    for (auto& row : coords) {
        std::vector<QuadScalar> pt;
        for (long c : row) pt.emplace_back(c);
        pts.push_back(std::move(pt));
    }
    return {coords[0].size(), 1, std::move(pts)};
}

PointConfiguration from_strings(size_t m, long d, std::vector<std::vector<std::string>> coords) {
    std::vector<std::vector<QuadScalar>> pts;
    for (auto& row : coords) {
        std::vector<QuadScalar> pt;
        for (auto& c : row) pt.push_back(parse_scalar(c, d));
        pts.push_back(std::move(pt));
    }
    return {m, d, std::move(pts)};
}

std::vector<Fixture> build() {
    std::vector<Fixture> out;

    out.push_back({"distance_collision_4",
                   "two non-congruent planar 4-point configurations sharing the squared-"
                   "distance multiset {2,2,4,10,10,16}",
                   {from_ints({{0, 0}, {3, 1}, {3, -1}, {4, 0}}),
                    from_ints({{0, 0}, {1, -1}, {3, -1}, {4, 0}})}});

    out.push_back({"area_collision_5",
                   "two affinely inequivalent planar 5-point configurations with equal "
                   "squared-area multisets (one has all points on two parallel lines)",
                   {from_ints({{0, 1}, {1, 1}, {1, 2}, {3, 2}, {5, 2}}),
                    from_ints({{1, 0}, {2, 0}, {2, 1}, {2, 2}, {4, 2}})}});

    out.push_back({"area_collision_6",
                   "two affinely inequivalent planar 6-point configurations with equal "
                   "squared-area multisets",
                   {from_ints({{0, 0}, {1, 0}, {3, 0}, {0, 1}, {1, 1}, {3, 1}}),
                    from_ints({{0, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {3, 1}})}});

    out.push_back({"combined_collision_4",
                   "two planar 4-point configurations over Q(sqrt(2)) with equal distance "
                   "AND area spectra; affinely but not rigidly equivalent",
                   {from_strings(2, 2,
                                 {{"0", "0"},
                                  {"0", "6"},
                                  {"6*sqrt(2)", "0"},
                                  {"2*sqrt(2)", "-1"}}),
                    from_strings(2, 2,
                                 {{"0", "0"},
                                  {"0", "6"},
                                  {"6*sqrt(2)", "0"},
                                  {"2*sqrt(2)", "5"}})}});

    out.push_back({"rhombus_5_4_16",
                   "rhombus with squared side 5 and squared diagonals 4 and 16, labeled "
                   "around the perimeter",
                   {from_ints({{1, 0}, {0, 2}, {-1, 0}, {0, -2}})}});

    out.push_back({"unit_square",
                   "unit square labeled around the perimeter (squared side 1, squared "
                   "diagonals 2 and 2)",
                   {from_ints({{0, 0}, {1, 0}, {1, 1}, {0, 1}})}});

    return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = build();
    return all;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw DomainError("unknown fixture \"" + name + "\" (see `fixtures list`)");
}

PointConfiguration make_rhombus(const QuadScalar& b, const QuadScalar& c) {
    const long d = b.d();
    const QuadScalar four = QuadScalar(4).lift_to(d);
    const auto p = sqrt_in_field(b / four);
    const auto q = sqrt_in_field(c.lift_to(d) / four);
    if (!p || !q)
        throw DomainError("rhombus half-diagonals sqrt(b)/2, sqrt(c)/2 must lie in the field");
    const QuadScalar zero = QuadScalar(0).lift_to(d);
    return {2, d, {{*p, zero}, {zero, *q}, {-*p, zero}, {zero, -*q}}};
}

}  // namespace pointspec
