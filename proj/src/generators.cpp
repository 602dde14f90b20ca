#include "coherence/generators.hpp"

#include <algorithm>
#include <string>

namespace coherence {

std::string_view family_name(Family f) { return f == Family::Psfw ? "psfw" : "sierpinski"; }

Family parse_family(std::string_view name) {
  if (name == "psfw") return Family::Psfw;
  if (name == "sierpinski") return Family::Sierpinski;
  throw Error("unknown family '" + std::string(name) + "' (expected psfw or sierpinski)");
}

std::size_t family_edge_count(int n) {
  std::size_t p = 3;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

std::size_t family_vertex_count(int n) { return (family_edge_count(n) + 3) / 2; }

namespace {

void check_generation(int n, int max_generation) {
  if (n < 0) throw Error("generation must be non-negative");
  if (n > max_generation)
    throw Error("generation too large (n=" + std::to_string(n) +
                " exceeds limit " + std::to_string(max_generation) + ")");
}

Graph canonical_graph(std::size_t n, std::vector<Edge> edges) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical(n, std::move(edges));
}

GeneratedGraph triangle(Family family) {
  GeneratedGraph g;
  g.graph = Graph::from_canonical(3, {{0, 1}, {0, 2}, {1, 2}});
  g.family = family;
  g.generation = 0;
  g.hubs = {0, 1, 2};
  return g;
}

// A hub slot of one of the three copies: (copy, hub index with A=0, B=1, C=2).
struct Slot {
  int copy;
  int hub;
};

struct GluePlan {
  // Each later slot is merged into an earlier one.
  std::array<std::pair<Slot, Slot>, 3> identify;
  std::array<Slot, 3> new_hubs;
};

// Three copies of `base`, numbered copy-major; identified vertices keep the
// ID they received in the earliest copy.
GeneratedGraph glue_three(const GeneratedGraph& base, const GluePlan& plan) {
  const std::size_t n = base.graph.num_vertices();
  std::array<std::vector<Vertex>, 3> id;
  Vertex next = 0;
  for (int c = 0; c < 3; ++c) {
    id[c].assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      bool merged = false;
      for (const auto& [later, earlier] : plan.identify) {
        if (later.copy == c && base.hubs[later.hub] == v) {
          id[c][v] = id[earlier.copy][base.hubs[earlier.hub]];
          merged = true;
        }
      }
      if (!merged) id[c][v] = next++;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(3 * base.graph.num_edges());
  for (int c = 0; c < 3; ++c)
    for (const auto& [u, v] : base.graph.edges()) edges.emplace_back(id[c][u], id[c][v]);

  GeneratedGraph out;
  out.graph = canonical_graph(next, std::move(edges));
  out.family = base.family;
  out.generation = base.generation + 1;
  for (int k = 0; k < 3; ++k) out.hubs[k] = id[plan.new_hubs[k].copy][base.hubs[plan.new_hubs[k].hub]];
  return out;
}

constexpr int A = 0, B = 1, C = 2;

constexpr GluePlan kPsfwPlan{
    {{{{2, B}, {0, A}}, {{1, B}, {0, C}}, {{2, C}, {1, A}}}},
    {{{0, A}, {0, C}, {1, A}}},
};

constexpr GluePlan kSierpinskiPlan{
    {{{{1, A}, {0, B}}, {{2, A}, {0, C}}, {{2, B}, {1, C}}}},
    {{{0, A}, {1, B}, {2, C}}},
};

}  // namespace

GeneratedGraph psfw_iterative(int n, int max_generation) {
  check_generation(n, max_generation);
  // Edges in creation order; each round walks the edges present at its start.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}};
  edges.reserve(family_edge_count(n));
  Vertex next = 3;
  for (int gen = 0; gen < n; ++gen) {
    const std::size_t existing = edges.size();
    for (std::size_t e = 0; e < existing; ++e) {
      const auto [a, b] = edges[e];
      const Vertex w = next++;
      edges.emplace_back(a, w);
      edges.emplace_back(b, w);
    }
  }
  GeneratedGraph g;
  g.graph = canonical_graph(next, std::move(edges));
  g.family = Family::Psfw;
  g.generation = n;
  g.hubs = {0, 1, 2};
  return g;
}

GeneratedGraph psfw_selfsimilar(int n, int max_generation) {
  check_generation(n, max_generation);
  auto g = triangle(Family::Psfw);
  for (int i = 0; i < n; ++i) g = glue_three(g, kPsfwPlan);
  return g;
}

GeneratedGraph sierpinski(int n, int max_generation) {
  check_generation(n, max_generation);
  auto g = triangle(Family::Sierpinski);
  for (int i = 0; i < n; ++i) g = glue_three(g, kSierpinskiPlan);
  return g;
}

GeneratedGraph generate(Family family, int n, int max_generation) {
  return family == Family::Psfw ? psfw_iterative(n, max_generation)
                                : sierpinski(n, max_generation);
}

}  // namespace coherence
