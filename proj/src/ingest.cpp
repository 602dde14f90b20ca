#include "coherence/ingest.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace coherence {

ParsedEdgeList parse_edge_list(std::istream& in, const ParseOptions& options) {
  ParsedEdgeList out;
  std::unordered_map<std::string, std::int64_t> ids;
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  auto id_of = [&](const std::string& token) {
    auto [it, inserted] = ids.emplace(token, static_cast<std::int64_t>(out.labels.size()));
    if (inserted) out.labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool first_comment = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '%' || line[start] == '#') {
      if (first_comment && line.find("asym") != std::string::npos) out.directed = true;
      first_comment = false;
      continue;
    }
    first_comment = false;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b))
      throw Error(options.source + ":" + std::to_string(line_no) +
                  ": expected two vertex tokens, found one");
    const auto u = id_of(a);
    const auto v = id_of(b);
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw Error(options.source + ": no edges found (empty graph)");

  auto built = build_graph(raw, out.labels.size());
  out.graph = std::move(built.graph);
  out.dropped_duplicates = built.dropped_duplicates;
  out.dropped_self_loops = built.dropped_self_loops;
  if (out.directed)
    out.warnings.push_back(options.source + ": directed edge list symmetrized to an undirected graph");
  if (out.dropped_duplicates)
    out.warnings.push_back(options.source + ": dropped " + std::to_string(out.dropped_duplicates) +
                           " duplicate edges");
  if (out.dropped_self_loops)
    out.warnings.push_back(options.source + ": dropped " + std::to_string(out.dropped_self_loops) +
                           " self-loops");
  return out;
}

ParsedEdgeList parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_edge_list(in, ParseOptions{path});
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& header) {
  for (const auto& h : header) out << "% " << h << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  if (!out) throw Error("failed to write edge list");
}

NetworkStats network_stats(const Graph& g, const std::string& name, const StatsConfig& config) {
  NetworkStats s;
  s.name = name;
  s.n_raw = g.num_vertices();
  s.m_raw = g.num_edges();
  const auto lcc = largest_connected_component(g);
  const Graph& h = lcc.graph;
  s.n_lcc = h.num_vertices();
  s.m_lcc = h.num_edges();
  const auto deg = degree_summary(h);
  s.mean_degree = deg.mean_degree;
  try {
    s.gamma = powerlaw_exponent(deg.degrees).gamma;
  } catch (const Error&) {
    s.gamma.reset();
  }
  s.mean_path = s.n_lcc > 1 ? average_shortest_path(h, default_path_mode(h, config.path_seed)) : 0.0;
  if (config.compute_coherence && s.n_lcc > 1) {
    const auto rep = coherence_auto(h, config.estimate);
    s.h_fo = rep.h_fo;
    s.h_so = rep.h_so;
    s.method = rep.method;
  }
  return s;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

nlohmann::ordered_json json_real(double v) { return std::stod(format_real(v)); }

nlohmann::ordered_json json_real(const std::optional<double>& v) {
  return v ? json_real(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string to_csv_row(const NetworkStats& s) {
  std::ostringstream os;
  os << s.name << ',' << s.n_raw << ',' << s.m_raw << ',' << s.n_lcc << ',' << s.m_lcc << ','
     << format_real(s.mean_degree) << ',' << opt_real(s.gamma) << ',' << format_real(s.mean_path)
     << ',' << opt_real(s.h_fo) << ',' << opt_real(s.h_so) << ','
     << (s.method ? std::string(method_name(*s.method)) : "");
  return os.str();
}

std::string to_json(const NetworkStats& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["n_raw"] = s.n_raw;
  j["m_raw"] = s.m_raw;
  j["n_lcc"] = s.n_lcc;
  j["m_lcc"] = s.m_lcc;
  j["mean_degree"] = json_real(s.mean_degree);
  j["gamma"] = json_real(s.gamma);
  j["mean_path"] = json_real(s.mean_path);
  j["h_fo"] = json_real(s.h_fo);
  j["h_so"] = json_real(s.h_so);
  j["method"] = s.method ? nlohmann::ordered_json(std::string(method_name(*s.method)))
                         : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

}  // namespace coherence
