#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "lexplan/costs.hpp"
#include "lexplan/sim.hpp"

using namespace lexplan;

TEST_CASE("risk threshold") {
  CostConfig cfg;
  CHECK(risk_at({0, 0}, ObstacleSet({{0.4, 0}}), cfg) == doctest::Approx(2.5));
  CHECK(risk_at({0, 0}, ObstacleSet({{1.0, 0}}), cfg) == 0.0);
  CHECK(risk_at({0, 0}, ObstacleSet{}, cfg) == 0.0);
  CHECK_THROWS_AS(risk_at({1, 1}, ObstacleSet({{1, 1}}), cfg), CollisionError);

  cfg.th_risk = std::numeric_limits<double>::infinity();
  CHECK(risk_at({0, 0}, ObstacleSet({{0.01, 0}}), cfg) == 0.0);
}

TEST_CASE("heading penalty threshold") {
  const CostConfig cfg;
  CHECK(heading_penalty(0.0, 0.0, cfg) == 0.0);
  CHECK(heading_penalty(deg_to_rad(3), 0.0, cfg) == 0.0);
  CHECK(heading_penalty(deg_to_rad(10), 0.0, cfg) == doctest::Approx(0.17453).epsilon(1e-4));
  CHECK(heading_penalty(kPi - 0.05, -kPi + 0.05, cfg) == doctest::Approx(0.1));
}

TEST_CASE("risk and heading are either zero or their raw value") {
  const CostConfig cfg;
  SplitMix64 rng(5);
  const ObstacleSet obs({{0, 0}});
  for (int i = 0; i < 2000; ++i) {
    const Point p{rng.uniform(0.05, 1.0), 0.0};
    const double r = risk_at(p, obs, cfg);
    CHECK((r == 0.0 || r == 1.0 / p.x));
    const double h = rng.uniform(-kPi, kPi);
    const double hp = heading_penalty(h, 0.0, cfg);
    CHECK((hp == 0.0 || hp == angular_difference(h, 0.0)));
  }
}

TEST_CASE("edge cost examples") {
  const CostConfig cfg;
  const ReferencePath ref({{0, 0}, {10, 0}});

  const std::array<Point, 2> straight{Point{1, 0}, Point{2, 0}};
  const CostVector free = edge_cost(straight, ObstacleSet{}, ref, cfg);
  CHECK(free[0] == 0.0);
  CHECK(free[1] == 0.0);
  CHECK(free[2] == doctest::Approx(1.0));

  // A wall of points 0.25 m away along the whole edge.
  std::vector<Point> wall;
  for (int i = -20; i <= 320; ++i) wall.push_back({i * 0.01, 0.75});
  const std::array<Point, 2> offset{Point{0, 0.5}, Point{1, 0.5}};
  CHECK(edge_cost(offset, ObstacleSet(wall), ref, cfg)[0] == doctest::Approx(4.0).epsilon(1e-3));

  const double a = deg_to_rad(10);
  const std::array<Point, 2> angled{Point{0, 0}, Point{std::cos(a), std::sin(a)}};
  CHECK(edge_cost(angled, ObstacleSet{}, ref, cfg)[1] == doctest::Approx(0.17453).epsilon(1e-4));

  const std::array<Point, 2> degenerate{Point{1, 1}, Point{1, 1}};
  CHECK_THROWS_AS(edge_cost(degenerate, ObstacleSet{}, ref, cfg), InvalidGraphError);
}

TEST_CASE("edge cost properties on random edges") {
  const ReferencePath ref({{0, 0}, {5, 1}, {10, 0}});
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({rng.uniform(0, 10), rng.uniform(-3, 3)});
    const ObstacleSet obs(pts);
    const Point a{rng.uniform(0, 10), rng.uniform(-2, 2)};
    const Point b = a + Point{rng.uniform(0.1, 1.0), rng.uniform(-0.5, 0.5)};
    if (obs.any_within(a, 0.05) || obs.any_within(b, 0.05)) continue;
    bool touches = false;
    for (const Point& s : sample_segment(a, b, 0.001)) touches = touches || obs.any_within(s, 0.05);
    if (touches) continue;

    CostConfig coarse;
    coarse.integration_step = 0.01;
    CostConfig fine = coarse;
    fine.integration_step = 0.005;
    const std::array<Point, 2> seg{a, b};
    const CostVector c1 = edge_cost(seg, obs, ref, coarse);
    const CostVector c2 = edge_cost(seg, obs, ref, fine);
    CHECK(c1[2] > 0.0);
    if (c2[0] > 0.05) CHECK(std::fabs(c1[0] - c2[0]) < 0.05 * c2[0]);
    if (c2[1] > 0.05) CHECK(std::fabs(c1[1] - c2[1]) < 0.05 * c2[1]);

    bool far = true;
    for (const Point& s : sample_segment(a, b, coarse.integration_step)) {
      far = far && !obs.any_within(s, 1.0 / coarse.th_risk + 0.01);
    }
    if (far) CHECK(c1[0] == 0.0);
  }
}

TEST_CASE("lex_compare examples") {
  CHECK(lex_compare({0, 5, 3}, {1, 0, 0}, 0.0) == LexOrder::Less);
  CHECK(lex_compare({1, 2, 3}, {1, 2, 4}, 0.0) == LexOrder::Less);
  CHECK(lex_compare({2, 2, 2}, {2, 2, 2}, 0.0) == LexOrder::Equal);
  CHECK(lex_compare({1, 0}, {1 + 1e-12, 5}, 1e-9) == LexOrder::Less);
  CHECK(lex_compare({1, 9}, {1, 5}, 0.0) == LexOrder::Greater);
  CHECK_THROWS_AS(lex_compare({1, 2}, {1, 2, 3}, 0.0), std::logic_error);
  CHECK(lex_compare({std::numeric_limits<double>::infinity()}, {1e300}, 1e-9) == LexOrder::Greater);
}

TEST_CASE("lex_compare is a total preorder") {
  SplitMix64 rng(3);
  const auto draw = [&] {
    return CostVector{static_cast<double>(rng.next() % 3), static_cast<double>(rng.next() % 3),
                      static_cast<double>(rng.next() % 3)};
  };
  const auto flip = [](LexOrder o) {
    return o == LexOrder::Less ? LexOrder::Greater : o == LexOrder::Greater ? LexOrder::Less : LexOrder::Equal;
  };
  for (int i = 0; i < 10000; ++i) {
    const CostVector a = draw();
    const CostVector b = draw();
    const CostVector c = draw();
    CHECK(lex_compare(a, b, 0.0) == flip(lex_compare(b, a, 0.0)));
    if (lex_compare(a, b, 0.0) != LexOrder::Greater && lex_compare(b, c, 0.0) != LexOrder::Greater) {
      CHECK(lex_compare(a, c, 0.0) != LexOrder::Greater);
    }
  }
}

TEST_CASE("cost vectors reject negative and NaN entries") {
  CHECK_THROWS_AS(CostVector({-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(CostVector({std::nan("")}), std::invalid_argument);
  CostVector v = CostVector::zeros(2);
  CHECK_THROWS(v.set(0, -0.5));
  CHECK((CostVector{1, 2} + CostVector{0.5, 0.25}) == CostVector{1.5, 2.25});
  CHECK_FALSE(CostVector::infinite(2).is_finite());
}

TEST_CASE("hierarchy parsing and level selection") {
  CHECK(parse_hierarchy("risk,heading,distance") == canonical_hierarchy());
  CHECK(parse_hierarchy(" heading , distance ") == Hierarchy{CostKind::Heading, CostKind::Distance});
  CHECK_THROWS_AS(parse_hierarchy("risk,speed"), std::invalid_argument);
  const CostVector canonical{1, 2, 3};
  CHECK(select_levels(canonical, {CostKind::Distance}) == CostVector{3});
  CHECK(select_levels(canonical, {CostKind::Heading, CostKind::Risk}) == CostVector{2, 1});
}
