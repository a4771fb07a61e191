#include "polyverify/polygon.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polyverify/checked.hpp"

namespace polyverify::polygon {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

template <typename Predicate>
IncidenceGeometry geometry_from_subspaces(const std::vector<grassmann::Subspace>& points,
                                          const std::vector<grassmann::Subspace>& candidate_lines, Predicate keep) {
  std::vector<std::vector<std::size_t>> lines;
  for (const auto& line : candidate_lines) {
    if (!keep(line)) continue;
    std::vector<std::size_t> on;
    for (std::size_t p = 0; p < points.size(); ++p)
      if (grassmann::intersect_dim(points[p], line) == points[p].dim()) on.push_back(p);
    lines.push_back(std::move(on));
  }
  return IncidenceGeometry(points.size(), std::move(lines));
}

}  // namespace

IncidenceGeometry::IncidenceGeometry(std::size_t point_count, std::vector<std::vector<std::size_t>> lines,
                                     bool allow_repeated_lines)
    : point_count_(point_count), lines_(std::move(lines)), allow_repeated_lines_(allow_repeated_lines) {
  if (point_count_ == 0) throw std::invalid_argument("geometry needs at least one point");
  if (lines_.empty()) throw std::invalid_argument("geometry needs at least one line");
  lines_through_.assign(point_count_, {});
  for (std::size_t l = 0; l < lines_.size(); ++l) {
    auto& line = lines_[l];
    std::sort(line.begin(), line.end());
    if (std::adjacent_find(line.begin(), line.end()) != line.end())
      throw std::invalid_argument("line " + std::to_string(l) + " repeats a point");
    for (std::size_t p : line) {
      if (p >= point_count_) throw std::invalid_argument("line " + std::to_string(l) + " references point " + std::to_string(p));
      lines_through_[p].push_back(l);
    }
  }
  if (!allow_repeated_lines_) {
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t l = 0; l < lines_.size(); ++l)
      if (!seen.insert(lines_[l]).second)
        throw std::invalid_argument("line " + std::to_string(l) + " repeats the point set of an earlier line");
  }
}

bool IncidenceGeometry::incident(std::size_t point, std::size_t line) const {
  return std::binary_search(lines_[line].begin(), lines_[line].end(), point);
}

bool IncidenceGeometry::collinear(std::size_t a, std::size_t b) const {
  for (std::size_t l : lines_through_[a])
    if (incident(b, l)) return true;
  return false;
}

std::size_t IncidenceGeometry::flag_count() const {
  std::size_t flags = 0;
  for (const auto& line : lines_) flags += line.size();
  return flags;
}

std::size_t IncidenceGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency) twice += adj.size();
  return twice / 2;
}

IncidenceGraph incidence_graph(const IncidenceGeometry& geometry) {
  IncidenceGraph graph;
  graph.point_vertices = geometry.point_count();
  graph.line_vertices = geometry.line_count();
  graph.adjacency.assign(graph.point_vertices + graph.line_vertices, {});
  for (std::size_t l = 0; l < geometry.line_count(); ++l) {
    for (std::size_t p : geometry.points_on(l)) {
      graph.adjacency[p].push_back(graph.point_vertices + l);
      graph.adjacency[graph.point_vertices + l].push_back(p);
    }
  }
  return graph;
}

std::vector<std::size_t> bfs_distances(const IncidenceGraph& graph, std::size_t source) {
  std::vector<std::size_t> dist(graph.vertex_count(), kInf);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : graph.adjacency[u]) {
      if (dist[w] != kInf) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::size_t diameter(const IncidenceGraph& graph) {
  std::size_t best = 0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (std::size_t d : bfs_distances(graph, v)) {
      if (d == kInf) return kInf;
      best = std::max(best, d);
    }
  }
  return best;
}

std::size_t girth(const IncidenceGraph& graph) {
  std::size_t best = kInf;
  const std::size_t v = graph.vertex_count();
  std::vector<std::size_t> dist(v), parent(v);
  for (std::size_t root = 0; root < v; ++root) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[root] = 0;
    parent[root] = kInf;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      if (best != kInf && 2 * dist[u] >= best) break;
      for (std::size_t w : graph.adjacency[u]) {
        if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::kDisconnected: return "disconnected";
    case Rejection::kThin: return "thin";
    case Rejection::kIrregular: return "irregular";
    case Rejection::kGirthNotTwiceDiameter: return "girth != 2*diameter";
  }
  return "unknown";
}

Classification classify_generalized_ngon(const IncidenceGeometry& geometry, std::size_t vertex_budget) {
  const IncidenceGraph graph = incidence_graph(geometry);
  if (graph.vertex_count() > vertex_budget)
    throw BudgetExceeded("incidence graph has " + std::to_string(graph.vertex_count()) + " vertices, budget " +
                         std::to_string(vertex_budget));

  Classification out;
  auto reject = [&out](Rejection r, std::string detail) {
    out.rejection = r;
    out.detail = std::move(detail);
    return out;
  };

  for (std::size_t d : bfs_distances(graph, 0))
    if (d == kInf) return reject(Rejection::kDisconnected, "incidence graph is not connected");

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (graph.adjacency[v].size() < 3) {
      const bool is_point = v < graph.point_vertices;
      const std::size_t idx = is_point ? v : v - graph.point_vertices;
      return reject(Rejection::kThin, std::string(is_point ? "point " : "line ") + std::to_string(idx) + " has degree " +
                                          std::to_string(graph.adjacency[v].size()));
    }
  }

  const std::size_t point_degree = graph.adjacency[0].size();
  const std::size_t line_degree = graph.adjacency[graph.point_vertices].size();
  for (std::size_t p = 0; p < graph.point_vertices; ++p)
    if (graph.adjacency[p].size() != point_degree)
      return reject(Rejection::kIrregular, "point " + std::to_string(p) + " lies on " +
                                               std::to_string(graph.adjacency[p].size()) + " lines, expected " +
                                               std::to_string(point_degree));
  for (std::size_t l = 0; l < graph.line_vertices; ++l) {
    const std::size_t deg = graph.adjacency[graph.point_vertices + l].size();
    if (deg != line_degree)
      return reject(Rejection::kIrregular, "line " + std::to_string(l) + " has " + std::to_string(deg) +
                                               " points, expected " + std::to_string(line_degree));
  }

  out.diameter = diameter(graph);
  out.girth = girth(graph);
  if (out.girth == kInf || out.girth != 2 * out.diameter)
    return reject(Rejection::kGirthNotTwiceDiameter,
                  "diameter " + std::to_string(out.diameter) + ", girth " +
                      (out.girth == kInf ? std::string("infinite") : std::to_string(out.girth)));

  out.params = PolygonParams{static_cast<unsigned>(out.diameter), line_degree - 1, point_degree - 1};
  return out;
}

IncidenceGeometry dual(const IncidenceGeometry& geometry) {
  std::vector<std::vector<std::size_t>> lines;
  lines.reserve(geometry.point_count());
  for (std::size_t p = 0; p < geometry.point_count(); ++p) lines.push_back(geometry.lines_through(p));
  return IncidenceGeometry(geometry.line_count(), std::move(lines), geometry.allows_repeated_lines());
}

void validate_collineation(const IncidenceGeometry& geometry, const Collineation& g) {
  auto check_bijection = [](const std::vector<std::size_t>& map, std::size_t size, const char* what) {
    if (map.size() != size) throw std::invalid_argument(std::string(what) + " map has the wrong size");
    std::vector<bool> hit(size, false);
    for (std::size_t v : map) {
      if (v >= size || hit[v]) throw std::invalid_argument(std::string(what) + " map is not a permutation");
      hit[v] = true;
    }
  };
  check_bijection(g.point_map, geometry.point_count(), "point");
  check_bijection(g.line_map, geometry.line_count(), "line");
  for (std::size_t l = 0; l < geometry.line_count(); ++l) {
    std::vector<std::size_t> image;
    for (std::size_t p : geometry.points_on(l)) image.push_back(g.point_map[p]);
    std::sort(image.begin(), image.end());
    if (image != geometry.points_on(g.line_map[l]))
      throw std::invalid_argument("map does not preserve incidence at line " + std::to_string(l));
  }
}

std::vector<DiamondViolation> check_diamond(const IncidenceGeometry& geometry, const Collineation& g) {
  validate_collineation(geometry, g);
  std::vector<DiamondViolation> violations;
  const std::size_t points = geometry.point_count();
  for (std::size_t x = 0; x < points; ++x) {
    const std::size_t xg = g.point_map[x];
    if (xg == x) continue;
    std::vector<std::size_t> fixed_neighbours;
    for (std::size_t y = 0; y < points; ++y)
      if (y != x && g.point_map[y] == y && geometry.collinear(x, y)) fixed_neighbours.push_back(y);
    for (std::size_t a = 0; a < fixed_neighbours.size(); ++a) {
      for (std::size_t b = a + 1; b < fixed_neighbours.size(); ++b) {
        const std::size_t y1 = fixed_neighbours[a], y2 = fixed_neighbours[b];
        bool common = false;
        for (std::size_t l : geometry.lines_through(x)) {
          if (geometry.incident(y1, l) && geometry.incident(y2, l) && geometry.incident(xg, l)) {
            common = true;
            break;
          }
        }
        if (!common) violations.push_back({x, y1, y2, xg});
      }
    }
  }
  return violations;
}

IncidenceGeometry build_pg2(const gf::FieldPtr& field, std::uint64_t budget) {
  auto points = grassmann::enumerate_subspaces(3, 1, field, budget);
  auto lines = grassmann::enumerate_subspaces(3, 2, field, budget);
  return geometry_from_subspaces(points, lines, [](const grassmann::Subspace&) { return true; });
}

IncidenceGeometry build_symplectic_quadrangle(const gf::FieldPtr& field, std::uint64_t budget) {
  const gf::Field& f = *field;
  auto form = [&f](std::span<const gf::Elem> u, std::span<const gf::Elem> v) {
    gf::Elem a = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
    gf::Elem b = f.sub(f.mul(u[2], v[3]), f.mul(u[3], v[2]));
    return f.add(a, b);
  };
  auto points = grassmann::enumerate_subspaces(4, 1, field, budget);
  auto lines = grassmann::enumerate_subspaces(4, 2, field, budget);
  return geometry_from_subspaces(points, lines, [&form](const grassmann::Subspace& line) {
    return form(line.basis().row(0), line.basis().row(1)) == 0;
  });
}

IncidenceGeometry read_incidence(std::istream& in, bool allow_repeated_lines) {
  auto header = [&in](const char* keyword) {
    std::string line, word;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream fields(line);
      std::size_t value;
      if (!(fields >> word >> value) || word != keyword)
        throw std::invalid_argument(std::string("expected '") + keyword + " <count>', got '" + line + "'");
      return value;
    }
    throw std::invalid_argument(std::string("missing '") + keyword + "' header");
  };
  const std::size_t points = header("points");
  const std::size_t line_count = header("lines");
  std::vector<std::vector<std::size_t>> lines;
  std::string text;
  while (lines.size() < line_count && std::getline(in, text)) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream fields(text);
    std::vector<std::size_t> line;
    std::string token;
    while (fields >> token) {
      if (token.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad point index '" + token + "' on line row " + std::to_string(lines.size()));
      line.push_back(std::stoull(token));
    }
    lines.push_back(std::move(line));
  }
  if (lines.size() != line_count)
    throw std::invalid_argument("expected " + std::to_string(line_count) + " line rows, found " + std::to_string(lines.size()));
  return IncidenceGeometry(points, std::move(lines), allow_repeated_lines);
}

void write_incidence(std::ostream& out, const IncidenceGeometry& geometry) {
  out << "points " << geometry.point_count() << '\n' << "lines " << geometry.line_count() << '\n';
  for (const auto& line : geometry.lines()) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? " " : "") << line[i];
    out << '\n';
  }
}

}  // namespace polyverify::polygon
