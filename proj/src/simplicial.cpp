#include "pcgauge/simplicial.hpp"

#include <algorithm>
#include <string>

namespace pcgauge {
namespace {

std::string edge_name(std::size_t i, std::size_t j) {
  return std::to_string(i) + "-" + std::to_string(j);
}

/// Depth-first spanning tree rooted at the base vertex; neighbours in
/// increasing order. Returns parents and the discovery order.
struct SpanningTree {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> order;
};

SpanningTree dfs_tree(const SimplicialComplex2& k) {
  if (!k.connected()) throw Error("disconnected complex");
  const std::size_t n = k.vertex_count();
  SpanningTree tree{std::vector<std::size_t>(n, n), {}};
  std::vector<bool> seen(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{k.base(), 0}};
  seen[k.base()] = true;
  tree.parent[k.base()] = k.base();
  tree.order.push_back(k.base());
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& nb = k.neighbours(v);
    if (next == nb.size()) {
      stack.pop_back();
      continue;
    }
    const std::size_t u = nb[next++];
    if (seen[u]) continue;
    seen[u] = true;
    tree.parent[u] = v;
    tree.order.push_back(u);
    stack.emplace_back(u, 0);
  }
  return tree;
}

PathSpec tree_path(const SpanningTree& tree, std::size_t v) {
  PathSpec p{v};
  while (tree.parent[p.back()] != p.back()) p.push_back(tree.parent[p.back()]);
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

SimplicialComplex2::SimplicialComplex2(std::size_t vertices, std::vector<Edge> edges,
                                       std::vector<Triangle> triangles, std::size_t base)
    : vertices_(vertices),
      edges_(std::move(edges)),
      triangles_(std::move(triangles)),
      base_(base),
      adjacency_(vertices) {
  if (vertices == 0) throw Error("complex needs at least one vertex");
  if (base >= vertices) throw Error("base vertex out of range");
  for (auto& e : edges_) {
    if (e.i == e.j) throw Error("degenerate edge " + edge_name(e.i, e.j));
    if (e.i >= vertices || e.j >= vertices) throw Error("edge " + edge_name(e.i, e.j) + " out of range");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end()) {
    throw Error("duplicate edge " + edge_name(it->i, it->j));
  }
  for (const auto& e : edges_) {
    adjacency_[e.i].push_back(e.j);
    adjacency_[e.j].push_back(e.i);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  for (auto& t : triangles_) {
    std::size_t v[3] = {t.i, t.j, t.k};
    std::sort(v, v + 3);
    t = Triangle{v[0], v[1], v[2]};
    if (t.i == t.j || t.j == t.k) throw Error("degenerate triangle");
    if (t.k >= vertices) throw Error("triangle out of range");
    if (!has_edge(t.i, t.j) || !has_edge(t.j, t.k) || !has_edge(t.i, t.k)) {
      throw Error("triangle (" + std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                  std::to_string(t.k) + ") has a missing edge");
    }
  }
  std::sort(triangles_.begin(), triangles_.end());
  if (std::adjacent_find(triangles_.begin(), triangles_.end()) != triangles_.end()) {
    throw Error("duplicate triangle");
  }
}

SimplicialComplex2 SimplicialComplex2::full_simplex(std::size_t n) {
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) edges.push_back({i, j});
  for_each_triad(n + 1, [&](const Triad& t) { triangles.push_back(t); });
  return SimplicialComplex2(n + 1, std::move(edges), std::move(triangles));
}

SimplicialComplex2 SimplicialComplex2::grid(std::size_t m) {
  if (m == 0) throw Error("grid needs at least one cell");
  const std::size_t side = m + 1;
  const auto at = [side](std::size_t r, std::size_t c) { return r * side + c; };
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  for (std::size_t r = 0; r <= m; ++r) {
    for (std::size_t c = 0; c <= m; ++c) {
      if (c < m) edges.push_back({at(r, c), at(r, c + 1)});
      if (r < m) edges.push_back({at(r, c), at(r + 1, c)});
      if (r < m && c < m) {
        edges.push_back({at(r, c), at(r + 1, c + 1)});
        triangles.push_back({at(r, c), at(r, c + 1), at(r + 1, c + 1)});
        triangles.push_back({at(r, c), at(r + 1, c), at(r + 1, c + 1)});
      }
    }
  }
  return SimplicialComplex2(side * side, std::move(edges), std::move(triangles));
}

SimplicialComplex2 SimplicialComplex2::disjoint_triangles(std::size_t count) {
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t o = 3 * t;
    edges.insert(edges.end(), {{o, o + 1}, {o, o + 2}, {o + 1, o + 2}});
    triangles.push_back({o, o + 1, o + 2});
  }
  return SimplicialComplex2(3 * count, std::move(edges), std::move(triangles));
}

bool SimplicialComplex2::has_edge(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

bool SimplicialComplex2::has_triangle(const Triangle& t) const {
  return std::binary_search(triangles_.begin(), triangles_.end(), t);
}

bool SimplicialComplex2::connected() const {
  std::vector<bool> seen(vertices_, false);
  std::vector<std::size_t> todo{base_};
  seen[base_] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t u : adjacency_[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        todo.push_back(u);
      }
    }
  }
  return count == vertices_;
}

EdgeField EdgeField::identity(const SimplicialComplex2& k, const Group& group) {
  EdgeField f(group);
  for (const auto& e : k.edges()) f.set(e.i, e.j, group.identity());
  return f;
}

void EdgeField::set(std::size_t i, std::size_t j, const Element& h) {
  if (i == j) throw Error("degenerate edge " + edge_name(i, j));
  group_.check(h);
  if (i < j) {
    values_[Edge{i, j}] = h;
  } else {
    values_[Edge{j, i}] = group_.inverse(h);
  }
}

bool EdgeField::has(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return values_.contains(Edge{i, j});
}

Element EdgeField::operator()(std::size_t i, std::size_t j) const {
  const bool forward = i < j;
  const auto it = values_.find(forward ? Edge{i, j} : Edge{j, i});
  if (it == values_.end()) throw Error("non-adjacent step " + edge_name(i, j));
  return forward ? it->second : group_.inverse(it->second);
}

void EdgeField::check_against(const SimplicialComplex2& k) const {
  for (const auto& e : k.edges()) {
    if (!values_.contains(e)) throw Error("field missing edge " + edge_name(e.i, e.j));
  }
  for (const auto& [e, h] : values_) {
    if (!k.has_edge(e.i, e.j)) throw Error("field has edge " + edge_name(e.i, e.j) + " not in complex");
  }
}

Element path_holonomy(const EdgeField& f, const PathSpec& p) {
  const Group& g = f.group();
  Element hol = g.identity();
  for (std::size_t s = 1; s < p.size(); ++s) hol = g.multiply(f(p[s - 1], p[s]), hol);
  return hol;
}

std::vector<PathSpec> gauge_paths(const SimplicialComplex2& k) {
  const SpanningTree tree = dfs_tree(k);
  std::vector<PathSpec> paths(k.vertex_count());
  for (std::size_t v = 0; v < k.vertex_count(); ++v) paths[v] = tree_path(tree, v);
  return paths;
}

GaugeVector spanning_tree_gauge(const SimplicialComplex2& k, const EdgeField& f) {
  const SpanningTree tree = dfs_tree(k);
  const Group& g = f.group();
  GaugeVector gauge{std::vector<Element>(k.vertex_count(), g.identity())};
  // Discovery order guarantees the parent's holonomy is already known.
  for (std::size_t v : tree.order) {
    const std::size_t p = tree.parent[v];
    if (p != v) gauge.values[v] = g.multiply(f(p, v), gauge[p]);
  }
  return gauge;
}

PCMatrix holonomy_pc_matrix(const SimplicialComplex2& k, const EdgeField& f) {
  f.check_against(k);
  const Group& g = f.group();
  const GaugeVector gauge = spanning_tree_gauge(k, f);
  PCMatrix a(g, k.vertex_count(), Variance::Contravariant);
  for (std::size_t i = 0; i < k.vertex_count(); ++i) {
    for (std::size_t j = i + 1; j < k.vertex_count(); ++j) {
      if (!k.has_edge(i, j)) {
        a.clear(i, j);
        continue;
      }
      // Hol(gamma_i * [s_i,s_j] * gamma_j^-1) = g_j^-1 h_ij g_i
      const Element loop = g.multiply(g.multiply(g.inverse(gauge[j]), f(i, j)), gauge[i]);
      a.set(i, j, g.multiply(g.multiply(gauge[j], loop), g.inverse(gauge[i])));
    }
  }
  return a;
}

Element plaquette(const EdgeField& f, const Triangle& t) {
  return path_holonomy(f, PathSpec{t.i, t.j, t.k, t.i});
}

Element triangle_curvature(const SimplicialComplex2& k, const EdgeField& f, const Triangle& t) {
  if (!k.has_triangle(t)) throw Error("unknown triangle");
  const SpanningTree tree = dfs_tree(k);
  PathSpec loop = tree_path(tree, t.i);
  const PathSpec back(loop.rbegin(), loop.rend());
  loop.insert(loop.end(), {t.j, t.k, t.i});
  loop.insert(loop.end(), back.begin() + 1, back.end());
  return path_holonomy(f, loop);
}

GlobalIndicator global_ii(const SimplicialComplex2& k, const EdgeField& f, const IndicatorMap& in) {
  require_indicator(f.group(), in);
  GlobalIndicator out;
  if (k.triangles().empty()) {
    out.no_triangles = true;
    return out;
  }
  double best = -1.0;
  bool first = true;
  for (const auto& t : k.triangles()) {
    const double v = in(f.group(), plaquette(f, t));
    if (first || v > best) {
      best = v;
      out.worst = t;
      first = false;
    }
  }
  out.value = best;
  return out;
}

EdgeField gauge_transform_field(const SimplicialComplex2& k, const EdgeField& f,
                                const GaugeVector& mu) {
  if (mu.size() != k.vertex_count()) throw Error("gauge vector length mismatch");
  const Group& g = f.group();
  EdgeField out(g);
  for (const auto& [e, h] : f.values()) {
    out.set(e.i, e.j, g.multiply(g.multiply(mu[e.j], h), g.inverse(mu[e.i])));
  }
  return out;
}

}  // namespace pcgauge
