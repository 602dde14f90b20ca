#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "coherence/graph.hpp"

namespace coherence {

enum class Family { Psfw, Sierpinski };

std::string_view family_name(Family f);
/// Accepts "psfw" and "sierpinski"; throws otherwise.
Family parse_family(std::string_view name);

struct GeneratedGraph {
  Graph graph;
  Family family = Family::Psfw;
  int generation = 0;
  /// PSFW hubs A_n, B_n, C_n, or the three outmost Sierpinski corners.
  std::array<Vertex, 3> hubs{};
};

inline constexpr int kDefaultMaxGeneration = 12;

/// (3^{n+1} + 3) / 2, shared by both families.
std::size_t family_vertex_count(int n);
/// 3^{n+1}, shared by both families.
std::size_t family_edge_count(int n);

/// Pseudofractal scale-free web by edge iteration: every edge of G_{n-1}
/// spawns a vertex joined to both its endpoints. IDs follow creation order.
GeneratedGraph psfw_iterative(int n, int max_generation = kDefaultMaxGeneration);

/// Same family built by gluing three copies of G_{n-1} at their hubs:
/// A1=B3 -> A, B2=C1 -> B, A2=C3 -> C. Used to cross-check the iterative form.
GeneratedGraph psfw_selfsimilar(int n, int max_generation = kDefaultMaxGeneration);

/// Sierpinski gasket by gluing three copies of S_{n-1} pairwise at corners:
/// B1=A2, C1=A3, C2=B3, with A1, B2, C3 the new corners.
GeneratedGraph sierpinski(int n, int max_generation = kDefaultMaxGeneration);

GeneratedGraph generate(Family family, int n, int max_generation = kDefaultMaxGeneration);

}  // namespace coherence
