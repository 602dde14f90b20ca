#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using coherence::Graph;

Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  return a;
}

std::vector<std::vector<long>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const long inf = 1L << 40;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

Eigen::MatrixXd pseudoinverse(const Graph& g) {
  const Eigen::MatrixXd a = adjacency(g);
  const auto n = a.rows();
  Eigen::MatrixXd l = -a;
  for (Eigen::Index i = 0; i < n; ++i) l(i, i) = a.row(i).sum();
  const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return (l + j).partialPivLu().inverse() - j;
}

RationalTraces rational_traces(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const mpq_class jn(1, static_cast<unsigned long>(n));
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) m[i][k] = jn;
    m[i][n + i] = 1;
  }
  for (const auto& [u, v] : g.edges()) {
    m[u][v] -= 1;
    m[v][u] -= 1;
    m[u][u] += 1;
    m[v][v] += 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    const mpq_class inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  // inverse sits in the right half; (L + J/N)^{-1} has the extra eigenvalue 1.
  RationalTraces out;
  out.s = -1;
  out.t = -1;
  for (std::size_t i = 0; i < n; ++i) {
    out.s += m[i][n + i];
    for (std::size_t k = 0; k < n; ++k) out.t += m[i][n + k] * m[k][n + i];
  }
  return out;
}

Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) raw.emplace_back(i, j);
  if (raw.empty()) raw.emplace_back(0, 1);
  auto built = coherence::build_graph(raw, n);
  return coherence::largest_connected_component(built.graph).graph;
}

Graph permuted(const Graph& g, std::mt19937_64& rng) {
  std::vector<std::int64_t> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for (const auto& [u, v] : g.edges()) raw.emplace_back(perm[u], perm[v]);
  return coherence::build_graph(raw, g.num_vertices()).graph;
}

Graph path(std::size_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for (std::size_t i = 0; i + 1 < n; ++i) raw.emplace_back(i, i + 1);
  return coherence::build_graph(raw, n).graph;
}

Graph complete(std::size_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) raw.emplace_back(i, j);
  return coherence::build_graph(raw, n).graph;
}

}  // namespace oracle
