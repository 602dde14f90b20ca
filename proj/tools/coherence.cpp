#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coherence/exact.hpp"
#include "coherence/generators.hpp"
#include "coherence/ingest.hpp"
#include "coherence/kernels.hpp"
#include "coherence/scaling.hpp"
#include "coherence/simulate.hpp"
#include "coherence/spectral.hpp"

using namespace coherence;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::vector<std::string> families;
  std::optional<int> n;
  std::optional<int> n_from;
  std::optional<int> n_to;
  std::vector<std::string> inputs;
  std::string output = "-";
  std::string method;
  int order = 1;
  double dt = 1e-3;
  double t_total = 200.0;
  double burn_in = 0.5;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::size_t probes = 200;
  std::string format;
  int n_max = kDefaultMaxGeneration;
  bool no_coherence = false;
};

Json real(double v) { return std::stod(format_real(v)); }

void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  body(out);
  out.flush();
  if (!out) throw Error("failed while writing '" + path + "'");
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Family single_family(const Options& o) {
  if (o.families.size() != 1) throw Error("exactly one --family is required");
  return parse_family(o.families.front());
}

Graph load_graph(const Options& o) {
  if (!o.inputs.empty()) {
    if (o.inputs.size() > 1) throw Error("this command takes a single --input");
    auto parsed = parse_edge_list_file(o.inputs.front());
    for (const auto& w : parsed.warnings) warn(w);
    return std::move(parsed.graph);
  }
  if (o.families.empty() || !o.n) throw Error("need --input PATH or --family and --n");
  return generate(single_family(o), *o.n, o.n_max).graph;
}

std::vector<int> generation_range(const Options& o) {
  if (o.n) {
    if (o.n_from || o.n_to) throw Error("use either --n or --n-from/--n-to");
    return {*o.n};
  }
  if (!o.n_from || !o.n_to) throw Error("need --n or both --n-from and --n-to");
  if (*o.n_from > *o.n_to) throw Error("--n-from exceeds --n-to");
  std::vector<int> out;
  for (int k = *o.n_from; k <= *o.n_to; ++k) out.push_back(k);
  return out;
}

Json report_json(const CoherenceReport& r) {
  Json j;
  j["n_vertices"] = r.n_vertices;
  j["n_edges"] = r.n_edges;
  j["h_fo"] = real(r.h_fo);
  j["h_so"] = real(r.h_so);
  j["kirchhoff"] = real(r.kirchhoff);
  j["biharmonic"] = real(r.biharmonic);
  j["method"] = std::string(method_name(r.method));
  if (r.h_fo_std_error) j["h_fo_std_error"] = real(*r.h_fo_std_error);
  if (r.h_so_std_error) j["h_so_std_error"] = real(*r.h_so_std_error);
  return j;
}

CoherenceReport compute_coherence(const Graph& g, const std::string& method, const Options& o) {
  EstimateConfig cfg;
  cfg.probes = o.probes;
  cfg.seed = o.seed;
  if (method == "estimate") return coherence_estimate(g, cfg);
  if (method == "dense") {
    if (!is_connected(g)) throw Error("graph not connected");
    return coherence_from_spectrum(spectrum(g));
  }
  return coherence_auto(g, cfg);
}

void cmd_generate(const Options& o) {
  const Family f = single_family(o);
  if (!o.n) throw Error("--n is required");
  const auto g = generate(f, *o.n, o.n_max);
  std::ostringstream head;
  head << family_name(f) << " n=" << *o.n << " N=" << g.graph.num_vertices()
       << " M=" << g.graph.num_edges();
  write_output(o.output, [&](std::ostream& out) { write_edge_list(out, g.graph, {head.str()}); });
}

void cmd_coherence(const Options& o) {
  const Graph g = load_graph(o);
  const auto rep = compute_coherence(g, o.method, o);
  write_output(o.output, [&](std::ostream& out) {
    if (o.format == "csv") {
      out << "n_vertices,n_edges,h_fo,h_so,kirchhoff,biharmonic,method,h_fo_std_error,h_so_std_error\n"
          << rep.n_vertices << ',' << rep.n_edges << ',' << format_real(rep.h_fo) << ','
          << format_real(rep.h_so) << ',' << format_real(rep.kirchhoff) << ','
          << format_real(rep.biharmonic) << ',' << method_name(rep.method) << ','
          << (rep.h_fo_std_error ? format_real(*rep.h_fo_std_error) : "") << ','
          << (rep.h_so_std_error ? format_real(*rep.h_so_std_error) : "") << '\n';
    } else {
      out << report_json(rep).dump(2) << '\n';
    }
  });
}

struct ExactRow {
  int n;
  std::size_t vertices;
  exact::Rational h_fo, h_so;
};

std::vector<ExactRow> exact_rows(Family f, const std::vector<int>& range, const std::string& method) {
  std::vector<ExactRow> rows;
  if (method == "recursion") {
    if (f != Family::Psfw) throw Error("the recursion method is only available for psfw");
    if (range.front() < 0) throw Error("generation must be non-negative");
    auto pq = exact::seed_polyquad();
    for (int k = 0; k <= range.back(); ++k) {
      if (k > 0) pq = exact::recursion_step(pq);
      if (k < range.front()) continue;
      const auto e = exact::exact_sums(pq);
      rows.push_back({k, family_vertex_count(k), e.h_fo, e.h_so});
    }
    return rows;
  }
  for (int k : range) {
    const auto t = exact::theorem(f, k);
    rows.push_back({k, family_vertex_count(k), t.h_fo, t.h_so});
  }
  return rows;
}

void cmd_exact(const Options& o) {
  const Family f = single_family(o);
  const auto rows = exact_rows(f, generation_range(o), o.method);
  write_output(o.output, [&](std::ostream& out) {
    if (o.format == "json") {
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json j;
        j["n"] = r.n;
        j["N"] = r.vertices;
        j["h_fo_exact"] = real(exact::to_double(r.h_fo));
        j["h_so_exact"] = real(exact::to_double(r.h_so));
        j["h_fo_rational"] = exact::to_string(r.h_fo);
        j["h_so_rational"] = exact::to_string(r.h_so);
        arr.push_back(j);
      }
      out << arr.dump(2) << '\n';
      return;
    }
    out << "n,N,h_fo_exact,h_so_exact,h_fo_rational,h_so_rational\n";
    for (const auto& r : rows)
      out << r.n << ',' << r.vertices << ',' << format_real(exact::to_double(r.h_fo)) << ','
          << format_real(exact::to_double(r.h_so)) << ',' << exact::to_string(r.h_fo) << ','
          << exact::to_string(r.h_so) << '\n';
  });
}

void cmd_simulate(const Options& o) {
  const Graph g = load_graph(o);
  SimConfig cfg;
  cfg.dt = o.dt;
  cfg.t_total = o.t_total;
  cfg.burn_in = o.burn_in;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  validate(g, cfg);

  std::optional<double> reference;
  if (g.num_vertices() <= kDenseThreshold) {
    const auto s = spectrum(g);
    const auto rep = coherence_from_spectrum(s);
    reference = o.order == 1 ? rep.h_fo : rep.h_so;
    const double lambda2 = s.eigenvalues[1];
    if (cfg.t_total * lambda2 < 10.0)
      warn("t_total * lambda_2 = " + format_real(cfg.t_total * lambda2) +
           " < 10; the slowest mode may not have relaxed (raise --t-total)");
  }
  const auto est = o.order == 1 ? simulate_first_order(g, cfg) : simulate_second_order(g, cfg);

  Json j;
  j["order"] = o.order;
  j["value"] = real(est.value);
  j["std_error"] = real(est.std_error);
  j["trials_used"] = est.trials_used;
  j["steps_used"] = est.steps_used;
  j["reference"] = reference ? real(*reference) : Json(nullptr);
  j["reference_method"] = reference ? Json("dense-spectrum") : Json(nullptr);
  write_output(o.output, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

void cmd_stats(const Options& o) {
  if (o.inputs.empty()) throw Error("--input is required");
  StatsConfig cfg;
  cfg.compute_coherence = !o.no_coherence;
  cfg.estimate.probes = o.probes;
  cfg.estimate.seed = o.seed;
  cfg.path_seed = o.seed;
  std::vector<NetworkStats> rows;
  for (const auto& path : o.inputs) {
    auto parsed = parse_edge_list_file(path);
    for (const auto& w : parsed.warnings) warn(w);
    rows.push_back(network_stats(parsed.graph, stem(path), cfg));
  }
  write_output(o.output, [&](std::ostream& out) {
    if (o.format == "json") {
      out << "[";
      for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? ",\n" : "\n") << to_json(rows[i]);
      out << "\n]\n";
      return;
    }
    out << kStatsCsvHeader << '\n';
    for (const auto& r : rows) out << to_csv_row(r) << '\n';
  });
}

struct ScalingPoint {
  std::string label;
  std::size_t vertices;
  double h_fo, h_so;
  std::string method;
};

struct Slope {
  std::string group;
  std::string quantity;
  double slope;
  std::size_t points;
};

void cmd_scaling(const Options& o) {
  std::vector<ScalingPoint> points;
  std::vector<Slope> slopes;
  auto fit = [&](const std::string& group, std::size_t first) {
    std::vector<double> x, fo, so;
    for (std::size_t i = first; i < points.size(); ++i) {
      x.push_back(static_cast<double>(points[i].vertices));
      fo.push_back(points[i].h_fo);
      so.push_back(points[i].h_so);
    }
    slopes.push_back({group, "h_fo", loglog_slope(x, fo), x.size()});
    slopes.push_back({group, "h_so", loglog_slope(x, so), x.size()});
  };

  if (!o.families.empty() && !o.inputs.empty()) throw Error("use either --family or --input, not both");
  if (!o.families.empty()) {
    const auto range = generation_range(o);
    if (range.size() < 3)
      throw Error("insufficient points for slope fit (need at least 3, got " + std::to_string(range.size()) + ")");
    const std::string method = o.method.empty() ? "closed" : o.method;
    for (const auto& name : o.families) {
      const Family f = parse_family(name);
      const std::size_t first = points.size();
      if (method == "closed" || method == "recursion") {
        for (const auto& r : exact_rows(f, range, method))
          points.push_back({std::string(family_name(f)), r.vertices, exact::to_double(r.h_fo),
                            exact::to_double(r.h_so), method == "closed" ? "closed-form" : "recursion"});
      } else {
        for (int k : range) {
          const auto rep = compute_coherence(generate(f, k, o.n_max).graph, method, o);
          points.push_back({std::string(family_name(f)), rep.n_vertices, rep.h_fo, rep.h_so,
                            std::string(method_name(rep.method))});
        }
      }
      fit(std::string(family_name(f)), first);
    }
  } else if (!o.inputs.empty()) {
    if (o.method == "closed" || o.method == "recursion")
      throw Error("--method " + o.method + " applies to generated families only");
    if (o.inputs.size() < 3)
      throw Error("insufficient points for slope fit (need at least 3, got " + std::to_string(o.inputs.size()) + ")");
    for (const auto& path : o.inputs) {
      auto parsed = parse_edge_list_file(path);
      for (const auto& w : parsed.warnings) warn(w);
      const auto lcc = largest_connected_component(parsed.graph).graph;
      const auto rep = compute_coherence(lcc, o.method, o);
      points.push_back({stem(path), rep.n_vertices, rep.h_fo, rep.h_so, std::string(method_name(rep.method))});
    }
    fit("networks", 0);
  } else {
    throw Error("need --family or --input");
  }

  write_output(o.output, [&](std::ostream& out) {
    if (o.format == "json") {
      Json j;
      j["rows"] = Json::array();
      for (const auto& p : points)
        j["rows"].push_back({{"label", p.label}, {"N", p.vertices}, {"h_fo", real(p.h_fo)},
                             {"h_so", real(p.h_so)}, {"method", p.method}});
      j["slopes"] = Json::array();
      for (const auto& s : slopes)
        j["slopes"].push_back(
            {{"group", s.group}, {"quantity", s.quantity}, {"slope", real(s.slope)}, {"points", s.points}});
      out << j.dump(2) << '\n';
      return;
    }
    out << "label,N,h_fo,h_so,method\n";
    for (const auto& p : points)
      out << p.label << ',' << p.vertices << ',' << format_real(p.h_fo) << ',' << format_real(p.h_so)
          << ',' << p.method << '\n';
    out << "\ngroup,quantity,slope,points\n";
    for (const auto& s : slopes)
      out << s.group << ',' << s.quantity << ',' << format_real(s.slope) << ',' << s.points << '\n';
  });
}

void print_header(const std::string& command, const Options& o, int argc, char** argv) {
  std::cerr << "% coherence " << COHERENCE_VERSION << " command=" << command << " seed=" << o.seed
            << " threads=" << kernels::thread_count() << " args=";
  for (int i = 1; i < argc; ++i) std::cerr << (i > 1 ? " " : "") << argv[i];
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network coherence of fractal and real-world graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", COHERENCE_VERSION);
  Options o;

  const auto family_check = CLI::IsMember({"psfw", "sierpinski"});
  auto add_family = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--family", o.families, "psfw or sierpinski")->check(family_check);
    if (!many) opt->expected(1);
  };
  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "generation")->check(CLI::NonNegativeNumber);
    sub->add_option("--n-max", o.n_max, "largest generation a generator will build")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  };
  auto add_range = [&](CLI::App* sub) {
    sub->add_option("--n-from", o.n_from, "first generation");
    sub->add_option("--n-to", o.n_to, "last generation");
  };
  auto add_io = [&](CLI::App* sub, bool many_inputs) {
    auto* in = sub->add_option("--input", o.inputs, "edge-list file");
    if (!many_inputs) in->expected(1);
    sub->add_option("--output", o.output, "output path, '-' for stdout")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "random seed")->capture_default_str(); };
  auto add_probes = [&](CLI::App* sub) {
    sub->add_option("--probes", o.probes, "probe vectors for the stochastic estimate")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
  };

  auto* gen = app.add_subcommand("generate", "write a PSFW or Sierpinski edge list");
  add_family(gen, false);
  add_n(gen);
  gen->add_option("--output", o.output, "output path, '-' for stdout")->capture_default_str();

  auto* coh = app.add_subcommand("coherence", "first- and second-order coherence of a graph");
  add_io(coh, false);
  add_family(coh, false);
  add_n(coh);
  coh->add_option("--method", o.method, "dense, estimate, or auto")
      ->check(CLI::IsMember({"dense", "estimate", "auto"}));
  add_probes(coh);
  add_seed(coh);

  auto* ex = app.add_subcommand("exact", "exact rational coherence of the fractal families");
  add_family(ex, false);
  ex->add_option("--n", o.n, "generation");
  add_range(ex);
  ex->add_option("--method", o.method, "closed or recursion")->check(CLI::IsMember({"closed", "recursion"}));
  ex->add_option("--output", o.output, "output path, '-' for stdout")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo coherence from the noisy consensus dynamics");
  add_io(sim, false);
  add_family(sim, false);
  add_n(sim);
  sim->add_option("--order", o.order, "1 or 2")->capture_default_str()->check(CLI::IsMember({1, 2}));
  sim->add_option("--dt", o.dt, "time step")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--t-total", o.t_total, "horizon")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--burn-in", o.burn_in, "discarded fraction of the horizon")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.999999));
  sim->add_option("--trials", o.trials, "independent trials")->capture_default_str()->check(CLI::PositiveNumber);
  add_seed(sim);

  auto* st = app.add_subcommand("stats", "network statistics in the order of the real-network table");
  add_io(st, true);
  st->add_flag("--no-coherence", o.no_coherence, "skip H_FO and H_SO");
  add_probes(st);
  add_seed(st);

  auto* sc = app.add_subcommand("scaling", "coherence against size with fitted log-log slopes");
  add_family(sc, true);
  add_range(sc);
  add_io(sc, true);
  sc->add_option("--n-max", o.n_max, "largest generation a generator will build")->capture_default_str();
  sc->add_option("--method", o.method, "closed, recursion, dense, or estimate")
      ->check(CLI::IsMember({"closed", "recursion", "dense", "estimate"}));
  add_probes(sc);
  add_seed(sc);

  for (auto* sub : {coh, ex, st, sc}) add_format(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    return app.exit(e);
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();
  if (o.format.empty()) o.format = command == "coherence" ? "json" : "csv";
  if (o.method.empty() && command == "exact") o.method = "closed";
  print_header(command, o, argc, argv);

  try {
    if (command == "generate") cmd_generate(o);
    else if (command == "coherence") cmd_coherence(o);
    else if (command == "exact") cmd_exact(o);
    else if (command == "simulate") cmd_simulate(o);
    else if (command == "stats") cmd_stats(o);
    else if (command == "scaling") cmd_scaling(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
