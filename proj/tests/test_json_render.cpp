#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tbp;

template <class T>
T round_trip(const T& v) {
  return json::parse(json(v).dump()).get<T>();
}

TEST(Json, Points) {
  EXPECT_EQ(json(LatticePoint{-3, 7}).dump(), "[-3,7]");
  EXPECT_EQ(round_trip(LatticePoint{-3, 7}), (LatticePoint{-3, 7}));
  EXPECT_THROW(json::parse("[1]").get<LatticePoint>(), Error);
  EXPECT_THROW(json::parse("[1, 2.5]").get<LatticePoint>(), Error);
}

TEST(Json, Triangles) {
  for (const auto& t : {classify_triangle({1, 0}, {0, 1}, {2, 2}), classify_triangle({0, 0}, {1, 0}, {0, 1}),
                        classify_triangle({0, 0}, {2, 0}, {0, 2})}) {
    const auto u = round_trip(t);
    EXPECT_EQ(u.vertices, t.vertices);
    EXPECT_EQ(u.kind, t.kind);
    EXPECT_EQ(u.fourth, t.fourth);
    EXPECT_EQ(u.area2, t.area2);
  }
}

TEST(Json, TraceAndPatterns) {
  const auto r = close({{0, 0}, {1, 0}, {0, 1}}, Window::square(-6, 7), Rule::I);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(round_trip(r.trace), r.trace);
  const auto t = *match_triple({0, 0}, {1, 0}, {2, 0}, Rule::B);
  EXPECT_EQ(round_trip(t), t);
}

TEST(Json, CellSetsAndWindows) {
  const CellSet s = CellSet::from_points(Window::rect(-2, 3, 0, 4), {{0, 0}, {3, 4}});
  EXPECT_EQ(cellset_from_json(json::parse(cellset_to_json(s).dump())), s);
  PointSet tri{{1, 1}, {2, 1}, {2, 2}};
  const CellSet t = CellSet::from_points(Window::from_points(tri), {{2, 2}});
  const auto back = cellset_from_json(cellset_to_json(t));
  EXPECT_EQ(back, t);
  EXPECT_FALSE(back.window()->is_rect());
  EXPECT_THROW(cellset_from_json(json::parse(R"({"window":{"x0":0,"x1":1,"y0":0,"y1":1},"points":[[5,5]]})")), Error);
}

TEST(Json, PeriodicAndVerdicts) {
  for (const auto& p : {s29(), j12(), b112()}) EXPECT_EQ(round_trip(p), p);
  EXPECT_EQ(json(s29()).dump(), R"({"m":3,"residues":[[0,0],[1,0]]})");
  for (const auto& [p, rule] : std::vector<std::pair<PeriodicSet, Rule>>{
           {j12(), Rule::I}, {b112(), Rule::I}, {nz2(2), Rule::BI}, {b112(), Rule::B}}) {
    const auto v = verify_stability(p, rule);
    const auto u = round_trip(v);
    EXPECT_EQ(json(u).dump(), json(v).dump());
  }
  EXPECT_EQ(round_trip(det_reachable_mod_m2({1, 0}, {0, 0}, 3)), det_reachable_mod_m2({1, 0}, {0, 0}, 3));
}

TEST(Json, SearchResultOmitsTimingByDefault) {
  const auto r = search(SearchProblem{Window::rect(1, 3, 1, 2), Rule::B, {}, MaxSize{}});
  const auto j = search_result_to_json(r);
  EXPECT_FALSE(j.contains("nodes_explored"));
  EXPECT_TRUE(search_result_to_json(r, true).contains("elapsed_seconds"));
  EXPECT_EQ(j["max_size"], 2);
}

TEST(Json, Rationals) {
  EXPECT_EQ(rational_from_string("2/9"), Rational(2, 9));
  EXPECT_EQ(rational_from_string("3"), Rational(3));
  EXPECT_EQ(rational_to_json(Rational(4, 8)).get<std::string>(), "1/2");
  EXPECT_THROW(rational_from_string("x/2"), Error);
}

TEST(Render, EvenLatticeCheckerboard) {
  const std::string a = render(nz2(2), Box{0, 6, 0, 6}, RenderFormat::Ascii);
  std::vector<std::string> rows;
  std::stringstream ss(a);
  for (std::string line; std::getline(ss, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 7u);
  const std::string even = "● · ● · ● · ●", odd = "· · · · · · ·";
  for (int i = 0; i < 7; ++i) EXPECT_EQ(rows[i], (6 - i) % 2 == 0 ? even : odd) << i;
}

TEST(Render, EmptyIsAllDots) {
  const std::string a = render(CellSet(Window::square(0, 3)), RenderFormat::Ascii);
  EXPECT_EQ(a, "· · · ·\n· · · ·\n· · · ·\n· · · ·\n");
}

TEST(Render, J12Blocks) {
  const std::string a = render(j12(), Box{-1, 6, -1, 6}, RenderFormat::Ascii);
  std::vector<std::string> rows;
  std::stringstream ss(a);
  for (std::string line; std::getline(ss, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 8u);
  // rows from y = 6 down to y = -1; J12 is made of 2x2 blocks
  for (Int y = 6; y >= -1; --y) {
    std::string want;
    for (Int x = -1; x <= 6; ++x) {
      if (x != -1) want += ' ';
      want += j12().contains({x, y}) ? "●" : "·";
    }
    EXPECT_EQ(rows[6 - y], want);
  }
  EXPECT_TRUE(j12().contains({0, 0}) && j12().contains({1, 0}) && j12().contains({0, 1}) && j12().contains({1, 1}));
  EXPECT_TRUE(j12().contains({2, 2}) && j12().contains({3, 3}) && j12().contains({2, 3}) && j12().contains({3, 2}));
}

TEST(Render, SvgIsDeterministic) {
  const std::string a = render(s29(), Box{0, 8, 0, 8}, RenderFormat::Svg);
  EXPECT_EQ(a, render(s29(), Box{0, 8, 0, 8}, RenderFormat::Svg));
  EXPECT_NE(a.find("width=\"180\""), std::string::npos);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = a.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
  EXPECT_EQ(circles, 18u);
}

TEST(Render, TooLarge) {
  try {
    render(nz2(2), Box{0, 200, 0, 3}, RenderFormat::Ascii);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WindowTooLarge);
  }
  EXPECT_NO_THROW(render(nz2(2), Box{0, 199, 0, 3}, RenderFormat::Ascii));
}
