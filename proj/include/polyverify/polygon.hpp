#pragma once

// Rank-2 incidence geometries and generalised n-gon recognition.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyverify/gf.hpp"
#include "polyverify/grassmann.hpp"

namespace polyverify::polygon {

// Points are 0..point_count()-1; each line is the sorted list of its points.
class IncidenceGeometry {
 public:
  // Throws std::invalid_argument if there are no points or no lines, an index
  // is out of range, a line repeats a point, or two lines carry the same
  // point set while allow_repeated_lines is false.
  IncidenceGeometry(std::size_t point_count, std::vector<std::vector<std::size_t>> lines,
                    bool allow_repeated_lines = false);

  std::size_t point_count() const { return point_count_; }
  std::size_t line_count() const { return lines_.size(); }
  const std::vector<std::vector<std::size_t>>& lines() const { return lines_; }
  const std::vector<std::size_t>& points_on(std::size_t line) const { return lines_[line]; }
  const std::vector<std::size_t>& lines_through(std::size_t point) const { return lines_through_[point]; }
  bool incident(std::size_t point, std::size_t line) const;
  bool collinear(std::size_t a, std::size_t b) const;
  std::size_t flag_count() const;
  bool allows_repeated_lines() const { return allow_repeated_lines_; }

  bool operator==(const IncidenceGeometry& other) const {
    return point_count_ == other.point_count_ && lines_ == other.lines_;
  }

 private:
  std::size_t point_count_;
  std::vector<std::vector<std::size_t>> lines_;
  std::vector<std::vector<std::size_t>> lines_through_;
  bool allow_repeated_lines_;
};

// Vertices 0..P-1 are points, P..P+L-1 are lines; edges are flags.
struct IncidenceGraph {
  std::size_t point_vertices = 0;
  std::size_t line_vertices = 0;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
};

IncidenceGraph incidence_graph(const IncidenceGeometry& geometry);

// Single-source distances; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const IncidenceGraph& graph, std::size_t source);
// Largest eccentricity; SIZE_MAX if disconnected.
std::size_t diameter(const IncidenceGraph& graph);
// Length of a shortest cycle; SIZE_MAX for a forest.
std::size_t girth(const IncidenceGraph& graph);

struct PolygonParams {
  unsigned n = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  bool operator==(const PolygonParams&) const = default;
};

// Checked in this order; the first failure is reported.
enum class Rejection { kDisconnected, kThin, kIrregular, kGirthNotTwiceDiameter };

std::string to_string(Rejection r);

struct Classification {
  std::optional<PolygonParams> params;
  std::optional<Rejection> rejection;
  std::string detail;
  std::size_t diameter = 0;
  std::size_t girth = 0;

  bool accepted() const { return params.has_value(); }
};

inline constexpr std::size_t kDefaultVertexBudget = 10'000;

// Throws BudgetExceeded when the incidence graph has more than `vertex_budget` vertices.
Classification classify_generalized_ngon(const IncidenceGeometry& geometry,
                                         std::size_t vertex_budget = kDefaultVertexBudget);

IncidenceGeometry dual(const IncidenceGeometry& geometry);

struct Collineation {
  std::vector<std::size_t> point_map;
  std::vector<std::size_t> line_map;
};

// Throws std::invalid_argument unless g is a pair of bijections preserving incidence.
void validate_collineation(const IncidenceGeometry& geometry, const Collineation& g);

struct DiamondViolation {
  std::size_t x;
  std::size_t y1;
  std::size_t y2;
  std::size_t image;  // x under g
  bool operator==(const DiamondViolation&) const = default;
};

// All (x, y1, y2) with y1 < y2, x collinear with both, g moving x and fixing
// y1 and y2, such that no line holds x, y1, y2 and xg together.
std::vector<DiamondViolation> check_diamond(const IncidenceGeometry& geometry, const Collineation& g);

// PG(2,q): points are 1-subspaces of F_q^3, lines 2-subspaces, incidence containment.
IncidenceGeometry build_pg2(const gf::FieldPtr& field,
                            std::uint64_t budget = grassmann::kDefaultEnumerationBudget);
// W(q): points are 1-subspaces of F_q^4, lines the 2-subspaces totally
// isotropic for the alternating form x1 y2 - x2 y1 + x3 y4 - x4 y3.
IncidenceGeometry build_symplectic_quadrangle(const gf::FieldPtr& field,
                                              std::uint64_t budget = grassmann::kDefaultEnumerationBudget);

// Text format: "points N", "lines M", then M rows of 0-based point indices.
IncidenceGeometry read_incidence(std::istream& in, bool allow_repeated_lines = false);
void write_incidence(std::ostream& out, const IncidenceGeometry& geometry);

}  // namespace polyverify::polygon
