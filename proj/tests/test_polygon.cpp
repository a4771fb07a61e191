#include <doctest.h>

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>

#include "polyverify/polygon.hpp"

using namespace polyverify;
using namespace polyverify::polygon;
using gf::Field;

namespace {

IncidenceGeometry complete_bipartite(std::size_t points, std::size_t lines) {
  std::vector<std::size_t> all(points);
  for (std::size_t i = 0; i < points; ++i) all[i] = i;
  return IncidenceGeometry(points, std::vector<std::vector<std::size_t>>(lines, all), true);
}

// Diameter and girth of the incidence graph from all-pairs distances.
std::pair<std::size_t, std::size_t> floyd_diameter_girth(const IncidenceGeometry& g) {
  const std::size_t p = g.point_count(), v = p + g.line_count();
  const std::size_t inf = SIZE_MAX / 4;
  std::vector<std::vector<std::size_t>> d(v, std::vector<std::size_t>(v, inf));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < v; ++i) d[i][i] = 0;
  for (std::size_t l = 0; l < g.line_count(); ++l)
    for (std::size_t x : g.points_on(l)) {
      d[x][p + l] = d[p + l][x] = 1;
      edges.emplace_back(x, p + l);
    }
  for (std::size_t k = 0; k < v; ++k)
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = 0; j < v; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::size_t diam = 0;
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) diam = std::max(diam, d[i][j]);
  // Shortest cycle through edge (a,b): shortest a-b path avoiding that edge, plus one.
  std::size_t best = inf;
  for (auto [a, b] : edges) {
    std::vector<std::size_t> dist(v, inf);
    std::vector<std::size_t> queue{a};
    dist[a] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t u = queue[h];
      for (std::size_t w = 0; w < v; ++w) {
        if (d[u][w] != 1 || dist[w] != inf) continue;
        if ((u == a && w == b) || (u == b && w == a)) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    if (dist[b] != inf) best = std::min(best, dist[b] + 1);
  }
  return {diam, best};
}

// Point permutations that map lines onto lines, by backtracking on collinearity.
std::vector<Collineation> all_collineations(const IncidenceGeometry& g) {
  const std::size_t n = g.point_count();
  std::map<std::vector<std::size_t>, std::size_t> line_index;
  for (std::size_t l = 0; l < g.line_count(); ++l) line_index[g.points_on(l)] = l;
  std::vector<Collineation> out;
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  auto finish = [&] {
    Collineation c{image, std::vector<std::size_t>(g.line_count())};
    for (std::size_t l = 0; l < g.line_count(); ++l) {
      std::vector<std::size_t> mapped;
      for (std::size_t x : g.points_on(l)) mapped.push_back(image[x]);
      std::sort(mapped.begin(), mapped.end());
      auto it = line_index.find(mapped);
      if (it == line_index.end()) return;
      c.line_map[l] = it->second;
    }
    out.push_back(c);
  };
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      finish();
      return;
    }
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (used[cand]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g.collinear(i, j) == g.collinear(cand, image[j]);
      if (!ok) continue;
      used[cand] = true;
      image[i] = cand;
      self(self, i + 1);
      used[cand] = false;
    }
  };
  extend(extend, 0);
  return out;
}

// The diamond condition written out from its definition.
std::vector<DiamondViolation> diamond_oracle(const IncidenceGeometry& g, const Collineation& c) {
  std::vector<DiamondViolation> out;
  const std::size_t n = g.point_count();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xg = c.point_map[x];
    if (xg == x) continue;
    for (std::size_t y1 = 0; y1 < n; ++y1)
      for (std::size_t y2 = y1 + 1; y2 < n; ++y2) {
        if (y1 == x || y2 == x) continue;
        if (c.point_map[y1] != y1 || c.point_map[y2] != y2) continue;
        if (!g.collinear(x, y1) || !g.collinear(x, y2)) continue;
        bool common = false;
        for (std::size_t l = 0; l < g.line_count(); ++l) {
          const auto& pts = g.points_on(l);
          auto on = [&](std::size_t p) { return std::find(pts.begin(), pts.end(), p) != pts.end(); };
          common = common || (on(x) && on(y1) && on(y2) && on(xg));
        }
        if (!common) out.push_back({x, y1, y2, xg});
      }
  }
  return out;
}

}  // namespace

TEST_CASE("incidence graphs") {
  const IncidenceGeometry one(1, {{0}});
  CHECK(incidence_graph(one).vertex_count() == 2);
  CHECK(incidence_graph(one).edge_count() == 1);

  const auto pg = build_pg2(Field::of_order(2));
  CHECK(incidence_graph(pg).vertex_count() == 14);
  CHECK(incidence_graph(pg).edge_count() == 21);

  const auto w = build_symplectic_quadrangle(Field::of_order(2));
  CHECK(incidence_graph(w).vertex_count() == 30);
  CHECK(incidence_graph(w).edge_count() == 45);
}

TEST_CASE("fixture sizes") {
  auto pg2 = build_pg2(Field::of_order(2));
  CHECK(pg2.point_count() == 7);
  CHECK(pg2.line_count() == 7);
  auto pg3 = build_pg2(Field::of_order(3));
  CHECK(pg3.point_count() == 13);
  CHECK(pg3.line_count() == 13);
  auto w2 = build_symplectic_quadrangle(Field::of_order(2));
  CHECK(w2.point_count() == 15);
  CHECK(w2.line_count() == 15);
  auto w3 = build_symplectic_quadrangle(Field::of_order(3));
  CHECK(w3.point_count() == 40);
  CHECK(w3.line_count() == 40);
  CHECK_THROWS_AS(build_pg2(Field::of_order(2), 3), BudgetExceeded);
}

TEST_CASE("classification of the classical fixtures") {
  struct Want {
    IncidenceGeometry g;
    PolygonParams params;
  };
  std::vector<Want> cases{
      {build_pg2(Field::of_order(2)), {3, 2, 2}},
      {build_pg2(Field::of_order(3)), {3, 3, 3}},
      {build_pg2(Field::of_order(4)), {3, 4, 4}},
      {build_symplectic_quadrangle(Field::of_order(2)), {4, 2, 2}},
      {build_symplectic_quadrangle(Field::of_order(3)), {4, 3, 3}},
      {complete_bipartite(3, 3), {2, 2, 2}},
      {complete_bipartite(3, 4), {2, 2, 3}},
  };
  for (const auto& c : cases) {
    const Classification r = classify_generalized_ngon(c.g);
    REQUIRE(r.accepted());
    CHECK(*r.params == c.params);
    CHECK(r.girth == 2 * r.diameter);
    const auto [diam, girth_oracle] = floyd_diameter_girth(c.g);
    CHECK(r.diameter == diam);
    CHECK(r.girth == girth_oracle);
    CHECK(std::set<unsigned>{2, 3, 4, 6, 8}.count(r.params->n) == 1);
    // Regularity: every point on t+1 lines, every line on s+1 points.
    for (std::size_t x = 0; x < c.g.point_count(); ++x) CHECK(c.g.lines_through(x).size() == r.params->t + 1);
    for (std::size_t l = 0; l < c.g.line_count(); ++l) CHECK(c.g.points_on(l).size() == r.params->s + 1);

    const Classification d = classify_generalized_ngon(dual(c.g));
    REQUIRE(d.accepted());
    CHECK(d.params->n == r.params->n);
    CHECK(d.params->s == r.params->t);
    CHECK(d.params->t == r.params->s);
    CHECK(dual(dual(c.g)) == c.g);
  }
}

TEST_CASE("rejections name the first failing condition") {
  const IncidenceGeometry two_planes = [] {
    auto pg = build_pg2(Field::of_order(2));
    std::vector<std::vector<std::size_t>> lines = pg.lines();
    for (const auto& l : pg.lines()) {
      std::vector<std::size_t> shifted;
      for (std::size_t x : l) shifted.push_back(x + 7);
      lines.push_back(shifted);
    }
    return IncidenceGeometry(14, lines);
  }();
  auto r = classify_generalized_ngon(two_planes);
  REQUIRE(r.rejection);
  CHECK(*r.rejection == Rejection::kDisconnected);
  CHECK(to_string(*r.rejection) == "disconnected");

  const IncidenceGeometry triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  r = classify_generalized_ngon(triangle);
  REQUIRE(r.rejection);
  CHECK(*r.rejection == Rejection::kThin);
  CHECK(to_string(*r.rejection) == "thin");

  // PG(2,2) plus one extra line through three points already pairwise joined:
  // every degree >= 3 but points differ in degree.
  auto pg = build_pg2(Field::of_order(2));
  auto lines = pg.lines();
  std::vector<std::size_t> extra{0, 1, 2};
  REQUIRE(std::find(lines.begin(), lines.end(), extra) == lines.end());
  lines.push_back(extra);
  r = classify_generalized_ngon(IncidenceGeometry(7, lines));
  REQUIRE(r.rejection);
  CHECK(*r.rejection == Rejection::kIrregular);
  CHECK(to_string(*r.rejection) == "irregular");

  // AG(2,3): regular, but parallel lines sit at distance 4 while triangles give girth 6.
  const IncidenceGeometry ag(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                 {0, 4, 8}, {1, 5, 6}, {2, 3, 7}, {0, 5, 7}, {1, 3, 8}, {2, 4, 6}});
  r = classify_generalized_ngon(ag);
  REQUIRE(r.rejection);
  CHECK(*r.rejection == Rejection::kGirthNotTwiceDiameter);
  CHECK(to_string(*r.rejection) == "girth != 2*diameter");
  CHECK(r.girth == 6);
  CHECK(r.diameter == 4);
  CHECK(classify_generalized_ngon(ag).rejection == r.rejection);

  CHECK_THROWS_AS(classify_generalized_ngon(build_pg2(Field::of_order(3)), 10), BudgetExceeded);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS(IncidenceGeometry(0, {{}}));
  CHECK_THROWS(IncidenceGeometry(3, {}));
  CHECK_THROWS(IncidenceGeometry(3, {{0, 3}}));
  CHECK_THROWS(IncidenceGeometry(3, {{0, 0}}));
  CHECK_THROWS(IncidenceGeometry(3, {{0, 1}, {1, 0}}));
  CHECK_NOTHROW(IncidenceGeometry(3, {{0, 1}, {1, 0}}, true));
}

TEST_CASE("incidence file round trip") {
  const auto w = build_symplectic_quadrangle(Field::of_order(2));
  std::ostringstream out;
  write_incidence(out, w);
  std::istringstream in(out.str());
  CHECK(read_incidence(in) == w);
  CHECK(out.str().rfind("points 15\nlines 15\n", 0) == 0);

  std::istringstream bad1("points 3\nlines 2\n0 1\n");
  CHECK_THROWS(read_incidence(bad1));
  std::istringstream bad2("pts 3\nlines 1\n0 1\n");
  CHECK_THROWS(read_incidence(bad2));
  std::istringstream bad3("points 3\nlines 1\n0 x\n");
  CHECK_THROWS(read_incidence(bad3));
}

TEST_CASE("collineation validation") {
  const auto pg = build_pg2(Field::of_order(2));
  Collineation id{{0, 1, 2, 3, 4, 5, 6}, {0, 1, 2, 3, 4, 5, 6}};
  CHECK_NOTHROW(validate_collineation(pg, id));
  Collineation bad = id;
  std::swap(bad.point_map[0], bad.point_map[1]);
  CHECK_THROWS(validate_collineation(pg, bad));
  Collineation short_map{{0, 1}, {0}};
  CHECK_THROWS(validate_collineation(pg, short_map));
  CHECK_THROWS(check_diamond(pg, bad));
}

TEST_CASE("diamond checker") {
  const auto w = build_symplectic_quadrangle(Field::of_order(2));
  Collineation id;
  for (std::size_t i = 0; i < 15; ++i) {
    id.point_map.push_back(i);
    id.line_map.push_back(i);
  }
  CHECK(check_diamond(w, id).empty());

  // Points x=0, x'=1, y1=2, y2=3; lines {x,y1},{x,y2},{x',y1},{x',y2}.
  const IncidenceGeometry grid(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Collineation swap{{1, 0, 2, 3}, {2, 3, 0, 1}};
  const auto v = check_diamond(grid, swap);
  CHECK(std::find(v.begin(), v.end(), DiamondViolation{0, 2, 3, 1}) != v.end());
  CHECK(v == diamond_oracle(grid, swap));
}

TEST_CASE("diamond checker on W(2) matches the oracle over all collineations") {
  const auto w = build_symplectic_quadrangle(Field::of_order(2));
  const auto all = all_collineations(w);
  CHECK(all.size() == 720);
  std::size_t relevant = 0, violating = 0;
  for (const auto& c : all) {
    CHECK_NOTHROW(validate_collineation(w, c));
    const auto got = check_diamond(w, c);
    const auto want = diamond_oracle(w, c);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> a, b;
    for (const auto& d : got) a.insert({d.x, d.y1, d.y2, d.image});
    for (const auto& d : want) b.insert({d.x, d.y1, d.y2, d.image});
    CHECK(a == b);
    // Collineations that move a point while fixing two of its neighbours.
    bool moves_with_fixed_neighbours = false;
    for (std::size_t x = 0; x < 15 && !moves_with_fixed_neighbours; ++x) {
      if (c.point_map[x] == x) continue;
      std::size_t fixed = 0;
      for (std::size_t y = 0; y < 15; ++y) fixed += y != x && c.point_map[y] == y && w.collinear(x, y);
      moves_with_fixed_neighbours = fixed >= 2;
    }
    relevant += moves_with_fixed_neighbours;
    violating += !got.empty();
  }
  CHECK(relevant > 0);
  MESSAGE("W(2): " << relevant << " collineations move a point fixing two neighbours, " << violating
                   << " violate the diamond condition");
}
