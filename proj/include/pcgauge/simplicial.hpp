#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "pcgauge/pc_matrix.hpp"

namespace pcgauge {

/// Edge stored once with i < j.
struct Edge {
  std::size_t i = 0, j = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Triangle stored with i < j < k.
using Triangle = Triad;

/// A 2-dimensional simplicial complex: vertices 0..V-1, edges, triangles and
/// a base vertex s_0 for gauge paths.
class SimplicialComplex2 {
 public:
  /// Edges and triangles are canonicalized (sorted indices). Throws on
  /// duplicates, out-of-range indices, degenerate simplices, or a triangle
  /// whose edges are not all present. Connectivity is not required here;
  /// operations that need gauge paths check it.
  SimplicialComplex2(std::size_t vertices, std::vector<Edge> edges,
                     std::vector<Triangle> triangles, std::size_t base = 0);

  /// All edges and triangles on n + 1 vertices.
  static SimplicialComplex2 full_simplex(std::size_t n);
  /// (m + 1)^2 vertices in row-major order; each square cell is split along
  /// its main diagonal into two triangles.
  static SimplicialComplex2 grid(std::size_t m);
  /// Disjoint copies of `count` triangles.
  static SimplicialComplex2 disjoint_triangles(std::size_t count);

  std::size_t vertex_count() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t base() const { return base_; }

  bool has_edge(std::size_t i, std::size_t j) const;
  bool has_triangle(const Triangle& t) const;
  /// Sorted neighbour lists.
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return adjacency_[v]; }
  bool connected() const;

 private:
  std::size_t vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::size_t base_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Group element on each oriented edge; h_ji = h_ij^-1.
class EdgeField {
 public:
  explicit EdgeField(Group group) : group_(group) {}

  /// Identity on every edge of `k`.
  static EdgeField identity(const SimplicialComplex2& k, const Group& group);

  const Group& group() const { return group_; }

  /// Stores h_ij (and implicitly h_ji = h_ij^-1).
  void set(std::size_t i, std::size_t j, const Element& h);
  bool has(std::size_t i, std::size_t j) const;
  /// Holonomy along the oriented edge i -> j.
  Element operator()(std::size_t i, std::size_t j) const;

  const std::map<Edge, Element>& values() const { return values_; }

  /// Throws unless the field is defined on exactly the edges of `k`; the
  /// message names the first offending edge.
  void check_against(const SimplicialComplex2& k) const;

 private:
  Group group_;
  std::map<Edge, Element> values_;
};

/// Vertex sequence (v_0, ..., v_m); each consecutive pair must be an edge.
using PathSpec = std::vector<std::size_t>;

/// Contravariant composition: h_{v_m-1 v_m} ... h_{v_1 v_2} h_{v_0 v_1}, so
/// Hol(p * q) = Hol(q) Hol(p). The empty or single-vertex path gives 1_G.
Element path_holonomy(const EdgeField& f, const PathSpec& p);

/// Tree path s_0 -> v for every vertex, from a depth-first spanning tree that
/// visits neighbours in increasing order. On a full simplex this is the chain
/// s_0, s_1, ..., s_v.
std::vector<PathSpec> gauge_paths(const SimplicialComplex2& k);

/// g_v = Hol(gamma_v) along the tree paths; g_{s_0} = 1_G.
GaugeVector spanning_tree_gauge(const SimplicialComplex2& k, const EdgeField& f);

/// a_ij = g_j Hol(gamma_i * [s_i, s_j] * gamma_j^-1) g_i^-1 for every edge,
/// gaps where the complex has no edge. Contravariant variance.
PCMatrix holonomy_pc_matrix(const SimplicialComplex2& k, const EdgeField& f);

/// Local plaquette h_ki h_jk h_ij of a triangle.
Element plaquette(const EdgeField& f, const Triangle& t);

/// Holonomy of the loop gamma_i * [s_i,s_j] * [s_j,s_k] * [s_k,s_i] * gamma_i^-1
/// based at s_0; equals g_i^-1 plaquette g_i.
Element triangle_curvature(const SimplicialComplex2& k, const EdgeField& f, const Triangle& t);

struct GlobalIndicator {
  double value = 0.0;
  std::optional<Triangle> worst;
  bool no_triangles = false;
};

/// Supremum of In over triangle curvatures. Evaluated on local plaquettes,
/// which give the same value as based curvatures for conjugation-invariant
/// In and also work on disconnected complexes.
GlobalIndicator global_ii(const SimplicialComplex2& k, const EdgeField& f,
                          const IndicatorMap& in = default_indicator());

/// h_ij -> mu_j h_ij mu_i^-1.
EdgeField gauge_transform_field(const SimplicialComplex2& k, const EdgeField& f,
                                const GaugeVector& mu);

}  // namespace pcgauge
