#include <random>
#include <vector>

#include "doctest.h"
#include "pointspec/config.hpp"
#include "pointspec/fixtures.hpp"
#include "pointspec/jsonio.hpp"
#include "testutil.hpp"

using namespace pointspec;

namespace {

std::vector<QuadScalar> lifted(std::vector<long> vals, long d = 1) {
    std::vector<QuadScalar> out;
    for (long v : vals) out.push_back(QuadScalar(v).lift_to(d));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("pair and subset enumeration") {
    const auto pairs = pair_list(4);
    REQUIRE(pairs.size() == 6);
    CHECK(pairs.front() == std::pair<int, int>{1, 2});
    CHECK(pairs[3] == std::pair<int, int>{2, 3});
    CHECK(pairs.back() == std::pair<int, int>{3, 4});
    for (size_t k = 0; k < pairs.size(); ++k) {
        CHECK(pair_index(4, pairs[k].first, pairs[k].second) == k);
        CHECK(pair_index(4, pairs[k].second, pairs[k].first) == k);  // order-insensitive
    }
    CHECK_THROWS_AS(pair_index(4, 2, 2), IndexOutOfRangeError);
    CHECK_THROWS_AS(pair_index(4, 0, 3), IndexOutOfRangeError);

    const auto triples = subset_list(5, 3);
    REQUIRE(triples.size() == 10);
    CHECK(triples.front() == std::vector<int>{1, 2, 3});
    CHECK(triples[1] == std::vector<int>{1, 2, 4});
    CHECK(triples.back() == std::vector<int>{3, 4, 5});
    CHECK(subset_list(3, 3).size() == 1);
    CHECK(subset_list(3, 4).empty());
}

TEST_CASE("distance spectra of the bundled configurations") {
    const auto& pair4 = fixture("distance_collision_4");
    REQUIRE(pair4.configs.size() == 2);
    CHECK(squared_distance(pair4.configs[0], 1, 4) == QuadScalar(16));
    const auto expected = lifted({2, 2, 4, 10, 10, 16});
    CHECK(distance_spectrum(pair4.configs[0]).values == expected);
    CHECK(distance_spectrum(pair4.configs[1]).values == expected);
    // ...yet the configurations are visibly different: sorted distances from
    // point 1 are (10,10,16) in one and (2,10,16) in the other.
    CHECK(squared_distance(pair4.configs[0], 1, 2) !=
          squared_distance(pair4.configs[1], 1, 2));

    const auto& comb = fixture("combined_collision_4");
    const auto dist = lifted({9, 33, 36, 57, 72, 108}, 2);
    CHECK(distance_spectrum(comb.configs[0]).values == dist);
    CHECK(distance_spectrum(comb.configs[1]).values == dist);

    CHECK(distance_spectrum(fixture("rhombus_5_4_16").configs[0]).values ==
          lifted({4, 5, 5, 5, 5, 16}));
    CHECK(distance_spectrum(fixture("unit_square").configs[0]).values ==
          lifted({1, 1, 1, 1, 2, 2}));

    const auto key = distance_spectrum(pair4.configs[0]).key();
    CHECK(key == "2;2;4;10;10;16");
    CHECK(distance_spectrum(pair4.configs[1]).key() == key);
}

TEST_CASE("signed areas: orientation, arity, and a full table") {
    const auto& five = fixture("area_collision_5");
    const auto subsets = subset_list(5, 3);
    const std::vector<long> table_p = {1, 1, 1, -2, -4, -2, -2, -4, -2, 0};
    const std::vector<long> table_q = {1, 2, 2, 1, -1, -4, 0, -2, -4, -2};
    for (size_t k = 0; k < subsets.size(); ++k) {
        CHECK(signed_volume(five.configs[0], subsets[k]) == QuadScalar(table_p[k]));
        CHECK(signed_volume(five.configs[1], subsets[k]) == QuadScalar(table_q[k]));
    }

    const auto& p = five.configs[0];
    CHECK(signed_volume(p, {2, 1, 3}) == -signed_volume(p, {1, 2, 3}));
    CHECK(signed_volume(p, {3, 1, 2}) == signed_volume(p, {1, 2, 3}));
    CHECK_THROWS_AS(signed_volume(p, {1, 2}), WrongArityError);
    CHECK_THROWS_AS(signed_volume(p, {1, 2, 2}), DuplicateIndexError);
    CHECK_THROWS_AS(signed_volume(p, {1, 2, 9}), IndexOutOfRangeError);
}

TEST_CASE("area spectra agree across each bundled collision pair") {
    const auto& five = fixture("area_collision_5");
    const auto exp5 = lifted({0, 1, 1, 1, 4, 4, 4, 4, 16, 16});
    CHECK(volume_spectrum(five.configs[0]).values == exp5);
    CHECK(volume_spectrum(five.configs[1]).values == exp5);

    const auto& six = fixture("area_collision_6");
    std::vector<long> exp6 = {0, 0};
    for (long v : {1, 4, 9})
        for (int r = 0; r < 6; ++r) exp6.push_back(v);
    CHECK(volume_spectrum(six.configs[0]).values == lifted(exp6));
    CHECK(volume_spectrum(six.configs[1]).values == lifted(exp6));

    const auto& comb = fixture("combined_collision_4");
    const auto expc = lifted({72, 288, 1800, 2592}, 2);
    CHECK(volume_spectrum(comb.configs[0]).values == expc);
    CHECK(volume_spectrum(comb.configs[1]).values == expc);

    // In dimension 1 the two spectra coincide: areas of segments are lengths.
    PointConfiguration line(1, 1, {{QuadScalar(0)}, {QuadScalar(2)}, {QuadScalar(5)}});
    CHECK(volume_spectrum(line).values == distance_spectrum(line).values);
}

TEST_CASE("gram and relation matrices") {
    PointConfiguration tri(2, 1, {{QuadScalar(0), QuadScalar(0)},
                                  {QuadScalar(1), QuadScalar(0)},
                                  {QuadScalar(0), QuadScalar(1)}});
    const QMat g = gram_matrix(tri, 3);
    REQUIRE(g.rows() == 2);
    CHECK(g.at(0, 0) == QuadScalar(1));
    CHECK(g.at(0, 1) == QuadScalar(1));
    CHECK(g.at(1, 0) == QuadScalar(1));
    CHECK(g.at(1, 1) == QuadScalar(2));

    const auto& pair4 = fixture("distance_collision_4");
    const QMat r = relation_matrix(pair4.configs[0]);
    const std::vector<std::vector<long>> expected = {{-32, -8, -8}, {-8, -4, 0}, {-8, 0, -4}};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(r.at(i, j) == QuadScalar(expected[i][j]));
    CHECK(rank(r) == 2);
    CHECK(generic_rank_check(pair4.configs[0]));

    // relation matrix == -2 * gram matrix at the last base point, including
    // under non-Euclidean diagonal forms and over Q(sqrt(d)).
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 12; ++rep) {
        auto p = testutil::random_quad_config(rng, 5, 3, rep % 2 ? 2 : 1);
        if (rep % 3 == 0) {
            std::vector<QuadScalar> w = {QuadScalar(1).lift_to(p.d()),
                                         QuadScalar(2).lift_to(p.d()),
                                         QuadScalar(3).lift_to(p.d())};
            p = PointConfiguration(p.m(), p.d(), p.points(), w);
        }
        const QMat rel = relation_matrix(p);
        const QMat gram = gram_matrix(p);
        const QuadScalar minus2 = QuadScalar(-2).lift_to(p.d());
        REQUIRE(rel.rows() == gram.rows());
        for (size_t i = 0; i < rel.rows(); ++i)
            for (size_t j = 0; j < rel.cols(); ++j)
                CHECK(rel.at(i, j) == minus2 * gram.at(i, j));
    }

    PointConfiguration collinear(2, 1, {{QuadScalar(0), QuadScalar(0)},
                                        {QuadScalar(1), QuadScalar(1)},
                                        {QuadScalar(2), QuadScalar(2)},
                                        {QuadScalar(5), QuadScalar(5)}});
    CHECK(rank(relation_matrix(collinear)) == 1);
    CHECK_FALSE(generic_rank_check(collinear));

    CHECK_THROWS_AS(relation_matrix({QuadScalar(1)}, 4), MissingDistanceError);
}

TEST_CASE("symmetric distance invariants for triangles") {
    PointConfiguration t345(2, 1, {{QuadScalar(0), QuadScalar(0)},
                                   {QuadScalar(3), QuadScalar(0)},
                                   {QuadScalar(0), QuadScalar(4)}});
    const auto inv = symmetric_distance_invariants_n3(t345);
    CHECK(inv.sym1 == QuadScalar(50));
    CHECK(inv.sym2 == QuadScalar(769));
    CHECK(inv.sym3 == QuadScalar(3600));
    CHECK(inv.e1 == doctest::Approx(12.0));
    CHECK(inv.e2 == doctest::Approx(47.0));
    CHECK(inv.e3 == doctest::Approx(60.0));

    PointConfiguration unit(2, 1, {{QuadScalar(0), QuadScalar(0)},
                                   {QuadScalar(1), QuadScalar(0)},
                                   {QuadScalar(0), QuadScalar(1)}});
    const auto inv2 = symmetric_distance_invariants_n3(unit);
    CHECK(inv2.sym1 == QuadScalar(4));
    CHECK(inv2.sym2 == QuadScalar(5));
    CHECK(inv2.sym3 == QuadScalar(2));

    CHECK_THROWS_AS(symmetric_distance_invariants_n3(fixture("unit_square").configs[0]),
                    WrongArityError);
}

TEST_CASE("histograms") {
    const auto s = distance_spectrum(fixture("distance_collision_4").configs[0]);

    const auto h = histogram(s, 0.5, true);  // root distances 1.41,1.41,2,3.16,3.16,4
    REQUIRE(h.counts.size() == 4);
    CHECK(h.counts[0] == std::pair<double, long>{1.0, 2});
    CHECK(h.counts[1] == std::pair<double, long>{2.0, 1});
    CHECK(h.counts[2] == std::pair<double, long>{3.0, 2});
    CHECK(h.counts[3] == std::pair<double, long>{4.0, 1});

    const auto hsq = histogram(s, 1.0, false);
    REQUIRE(hsq.counts.size() == 4);
    CHECK(hsq.counts[0] == std::pair<double, long>{2.0, 2});
    CHECK(hsq.counts[1] == std::pair<double, long>{4.0, 1});
    CHECK(hsq.counts[2] == std::pair<double, long>{10.0, 2});
    CHECK(hsq.counts[3] == std::pair<double, long>{16.0, 1});

    CHECK_THROWS_AS(histogram(s, 0.0, false), NonPositiveBinError);
    CHECK_THROWS_AS(histogram(s, -1.0, true), NonPositiveBinError);
}

TEST_CASE("json config round trip is exact") {
    const auto& comb = fixture("combined_collision_4");
    for (const auto& p : comb.configs) {
        const auto j = config_to_json(p);
        CHECK(j["dim"] == 2);
        CHECK(j["sqrt_base"] == 2);
        const auto back = config_from_json(j);
        CHECK(back.points() == p.points());
        CHECK(back.m() == p.m());
        CHECK(back.d() == p.d());
    }

    // fractional coordinates and a form block survive the trip
    PointConfiguration frac(
        2, 5,
        {{parse_scalar("1/3", 5), parse_scalar("-2/7+1/2*sqrt(5)", 5)},
         {parse_scalar("sqrt(5)", 5), parse_scalar("0", 5)}},
        {parse_scalar("1", 5), parse_scalar("3/2", 5)});
    const auto back = config_from_json(config_to_json(frac));
    CHECK(back.points() == frac.points());
    CHECK(back.form() == frac.form());
    CHECK_FALSE(back.euclidean());

    // defaults: sqrt_base -> 1, form -> all ones
    const auto plain = config_from_json_text(R"({"dim":1,"points":[["0"],["3/2"]]})");
    CHECK(plain.d() == 1);
    CHECK(plain.euclidean());
    CHECK(plain.point(2)[0] == parse_scalar("3/2", 1));

    CHECK_THROWS_AS(config_from_json_text(R"({"dim":2,"points":[[1,2]]})"), ParseError);
    CHECK_THROWS_AS(config_from_json_text(R"({"dim":2})"), ParseError);
    CHECK_THROWS_AS(config_from_json_text("{\n  \"dim\": 2,\n  oops\n}"), ParseError);
    try {
        config_from_json_text("{\n  \"dim\": 2,\n  oops\n}");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("spectrum csv round trip") {
    const auto s = volume_spectrum(fixture("combined_collision_4").configs[0]);
    const auto csv = spectrum_to_csv(s);
    CHECK(csv.substr(0, 13) == "value,approx\n");
    const auto back = spectrum_from_csv(csv, SpectrumKind::volume, 2);
    CHECK(back == s);

    const auto h = histogram(distance_spectrum(fixture("unit_square").configs[0]), 1.0, false);
    CHECK(histogram_to_csv(h) == "bin_lower,count\n1,4\n2,2\n");
}

TEST_CASE("spectra are invariant under the matching group actions") {
    std::mt19937_64 rng(20240915);
    for (int rep = 0; rep < 15; ++rep) {
        const size_t n = 4 + rep % 3, m = 2 + rep % 2;
        const long d = (rep % 3 == 1) ? 2 : 1;
        const auto p = testutil::random_int_config(rng, n, m, -6, 6, d);
        const auto pi = testutil::random_permutation(rng, n);
        const auto t = testutil::random_translation(rng, m, d);

        const auto rigid =
            testutil::transform(p, testutil::random_rotation(rng, m, d), t, pi);
        CHECK(distance_spectrum(rigid) == distance_spectrum(p));
        CHECK(volume_spectrum(rigid) == volume_spectrum(p));

        const auto sheared =
            testutil::transform(p, testutil::random_unimodular(rng, m, d), t, pi);
        CHECK(volume_spectrum(sheared) == volume_spectrum(p));
    }

    // with a non-Euclidean diagonal form, translations and relabelings still
    // preserve the distance spectrum
    for (int rep = 0; rep < 6; ++rep) {
        auto base = testutil::random_int_config(rng, 4, 2, -5, 5, 1);
        PointConfiguration p(2, 1, base.points(), {QuadScalar(2), QuadScalar(7)});
        const auto pi = testutil::random_permutation(rng, 4);
        const auto t = testutil::random_translation(rng, 2, 1);
        QMat id(2, 2, 1);
        id.at(0, 0) = id.at(1, 1) = QuadScalar(1);
        auto moved = testutil::transform(p, id, t, pi);
        moved = PointConfiguration(2, 1, moved.points(), p.form());
        CHECK(distance_spectrum(moved) == distance_spectrum(p));
    }
}
