#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "algconn/algconn.hpp"

namespace algconn::cli {

using json = nlohmann::ordered_json;

inline std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounded to 12 significant digits so JSON output is stable across platforms.
inline double r12(double x) { return std::stod(fmt_num(x)); }

inline json rounded(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(r12(x));
  return a;
}

/// One command's result: a JSON record plus a CSV rendering of the same data.
struct Output {
  json record;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = 0;
};

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void write_csv(const Output& o, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
    out << "\n";
  };
  line(o.header);
  for (const auto& r : o.rows) line(r);
}

inline int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw std::invalid_argument("bad integer '" + s + "' in " + what);
  return v;
}

/// Graph source grammar:
///   named:petersen | named:heawood | named:tutte_coxeter
///   named:star:N | named:path:N | named:cycle:N | named:complete:N
///   named:kbip:A:B | named:bethe:D:K | named:dbt:K
///   a path to a file whose first non-blank line is graph6
///   a graph6 string
inline Graph load_graph(const std::string& src) {
  if (src.rfind("named:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(src.substr(6));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.empty()) throw std::invalid_argument("empty named graph");
    const auto& kind = parts[0];
    auto arg = [&](std::size_t i) {
      if (i >= parts.size()) throw std::invalid_argument("missing parameter in '" + src + "'");
      return parse_int(parts[i], src);
    };
    auto arity = [&](std::size_t k) {
      if (parts.size() != k + 1) throw std::invalid_argument("'" + kind + "' takes " + std::to_string(k) + " parameter(s)");
    };
    if (kind == "star") return arity(1), star(arg(1));
    if (kind == "path") return arity(1), path(arg(1));
    if (kind == "cycle") return arity(1), cycle(arg(1));
    if (kind == "complete") return arity(1), complete(arg(1));
    if (kind == "kbip") return arity(2), complete_bipartite(arg(1), arg(2));
    if (kind == "bethe") return arity(2), bethe_tree(arg(1), arg(2));
    if (kind == "dbt") return arity(1), double_binary_tree(arg(1));
    arity(0);
    return named(kind);
  }
  std::ifstream in(src);
  if (in) {
    for (std::string line; std::getline(in, line);)
      if (line.find_first_not_of(" \t\r") != std::string::npos) return graph6_decode(line);
    throw std::invalid_argument("file '" + src + "' holds no graph");
  }
  return graph6_decode(src);
}

inline json graph_json(const Graph& g) { return {{"n", g.n()}, {"m", g.m()}, {"graph6", graph6_encode(g)}}; }

inline int default_threads() {
  if (const char* env = std::getenv("ALGCON_THREADS")) return std::max(1, parse_int(env, "ALGCON_THREADS"));
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------

inline Output cmd_lambda2(const Graph& g, bool vector) {
  Output o;
  const double l2 = algebraic_connectivity(g);
  o.record["results"]["lambda2"] = r12(l2);
  o.header = {"n", "m", "lambda2"};
  o.rows.push_back({std::to_string(g.n()), std::to_string(g.m()), fmt_num(l2)});
  if (vector) {
    auto f = fiedler_vector(g);
    o.record["results"]["fiedler_vector"] = rounded(f.vector);
    std::string joined;
    for (std::size_t i = 0; i < f.vector.size(); ++i) joined += (i ? " " : "") + fmt_num(f.vector[i]);
    o.header.push_back("fiedler_vector");
    o.rows.back().push_back(joined);
  }
  return o;
}

inline Output cmd_bounds(const Graph& g) {
  auto rep = bound_report(g);
  Output o;
  o.record["results"]["lambda2"] = r12(rep.lambda2);
  o.header = {"bound", "value", "applicable", "certified", "attained", "note"};
  for (const auto& [name, e] : rep.entries) {
    json j;
    j["value"] = e.value ? json(r12(*e.value)) : json(nullptr);
    j["applicable"] = e.applicable;
    j["certified"] = e.certified;
    j["attained"] = e.attained;
    j["note"] = e.note;
    o.record["results"]["bounds"][name] = j;
    o.rows.push_back({name, e.value ? fmt_num(*e.value) : "", e.applicable ? "true" : "false",
                      e.certified ? "true" : "false", e.attained ? "true" : "false", e.note});
  }
  o.rows.push_back({"lambda2", fmt_num(rep.lambda2), "", "", "", ""});
  return o;
}

inline Output cmd_tree_split(const Graph& t) {
  auto split = find_splitting_vertex(t);
  auto comp = composite_tree_bound(t);
  const double l2 = algebraic_connectivity(t);
  const double sb = split_spectral_bound(t, comp.split, comp.u, comp.w);
  Output o;
  auto& r = o.record["results"];
  r["vertex"] = split.vertex;
  r["component_sizes"] = split.component_sizes;
  r["steps"] = split.steps;
  r["u"] = comp.u;
  r["w"] = comp.w;
  r["split_spectral_bound"] = r12(sb);
  r["test_vector_bound"] = r12(comp.bound);
  r["lambda2"] = r12(l2);
  std::string sizes;
  for (std::size_t i = 0; i < split.component_sizes.size(); ++i)
    sizes += (i ? " " : "") + std::to_string(split.component_sizes[i]);
  o.header = {"vertex", "component_sizes", "steps", "u", "w", "split_spectral_bound", "test_vector_bound", "lambda2"};
  o.rows.push_back({std::to_string(split.vertex), sizes, std::to_string(split.steps), std::to_string(comp.u),
                    std::to_string(comp.w), fmt_num(sb), fmt_num(comp.bound), fmt_num(l2)});
  return o;
}

inline Output outcome_output(const SearchOutcome& s) {
  Output o;
  auto& r = o.record["results"];
  r["family"] = s.family;
  r["enumerated"] = s.enumerated;
  r["best_lambda2"] = r12(s.best_lambda2);
  r["maximizers"] = s.maximizers;
  o.header = {"family", "enumerated", "best_lambda2", "maximizer"};
  for (const auto& m : s.maximizers)
    o.rows.push_back({s.family, std::to_string(s.enumerated), fmt_num(s.best_lambda2), m});
  return o;
}

inline Output report_output(const ConjectureReport& rep) {
  Output o;
  auto& r = o.record["results"];
  r["conjecture"] = rep.conjecture;
  r["verdict"] = to_string(rep.verdict);
  r["exhaustive"] = rep.exhaustive;
  r["checked"] = rep.checked;
  r["max_lambda2"] = r12(rep.max_lambda2);
  r["reference"] = r12(rep.reference);
  r["attainers"] = rep.attainers;
  r["witness"] = rep.witness ? json(*rep.witness) : json(nullptr);
  r["detail"] = rep.detail;
  std::string att;
  for (std::size_t i = 0; i < rep.attainers.size(); ++i) att += (i ? " " : "") + rep.attainers[i];
  o.header = {"conjecture", "verdict", "exhaustive", "checked", "max_lambda2", "reference", "attainers", "witness", "detail"};
  o.rows.push_back({rep.conjecture, to_string(rep.verdict), rep.exhaustive ? "true" : "false",
                    std::to_string(rep.checked), fmt_num(rep.max_lambda2), fmt_num(rep.reference), att,
                    rep.witness.value_or(""), rep.detail});
  o.exit_code = rep.verdict == Verdict::Pass ? 0 : rep.verdict == Verdict::Fail ? 2 : 3;
  return o;
}

inline Output cmd_augment(int n, int m) {
  auto trace = edge_augmentation(n, m);
  Output o;
  o.header = {"step", "u", "v", "lambda2"};
  json steps = json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    steps.push_back({{"u", s.edge.first}, {"v", s.edge.second}, {"lambda2", r12(s.lambda2)}});
    o.rows.push_back({std::to_string(i + 1), std::to_string(s.edge.first), std::to_string(s.edge.second),
                      fmt_num(s.lambda2)});
  }
  o.record["results"]["steps"] = steps;
  o.record["results"]["final"] = graph6_encode(trace.final_graph);
  o.record["results"]["degree_sequence"] = degree_sequence(trace.final_graph);
  return o;
}

inline Output cmd_compare(int n, const std::vector<int>& ms) {
  auto rows = compare_families(n, ms);
  Output o;
  o.header = {"m", "augmentation", "b", "bipartite", "d", "regular_mean", "regular_min", "regular_max", "regular_skipped"};
  json arr = json::array();
  for (const auto& r : rows) {
    json j{{"m", r.m}, {"augmentation", r12(r.augmentation)}, {"b", r.b}, {"bipartite", r12(r.bipartite)}};
    j["d"] = r.d ? json(*r.d) : json(nullptr);
    j["regular_mean"] = r.regular_skipped ? json(nullptr) : json(r12(r.regular_mean));
    j["regular_min"] = r.regular_skipped ? json(nullptr) : json(r12(r.regular_min));
    j["regular_max"] = r.regular_skipped ? json(nullptr) : json(r12(r.regular_max));
    j["regular_skipped"] = r.regular_skipped;
    arr.push_back(j);
    auto opt = [&](double v) { return r.regular_skipped ? std::string() : fmt_num(v); };
    o.rows.push_back({std::to_string(r.m), fmt_num(r.augmentation), std::to_string(r.b), fmt_num(r.bipartite),
                      r.d ? std::to_string(*r.d) : "", opt(r.regular_mean), opt(r.regular_min), opt(r.regular_max),
                      r.regular_skipped ? "true" : "false"});
  }
  o.record["results"]["rows"] = arr;
  return o;
}

inline Output cmd_consensus(const Graph& g, std::uint64_t seed, double t_end, double dt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> u0(static_cast<std::size_t>(g.n()));
  for (double& x : u0) x = unit(rng);
  if (dt <= 0) dt = 0.1 / (2.0 * max_degree(g));
  auto fit = consensus_decay_rate(g, u0, t_end, dt);
  const double l2 = algebraic_connectivity(g);
  const double rel = std::abs(fit.rate - l2) / l2;
  Output o;
  auto& r = o.record["results"];
  r["rate"] = r12(fit.rate);
  r["lambda2"] = r12(l2);
  r["relative_difference"] = r12(rel);
  r["fit_rms_residual"] = r12(fit.rel_err);
  r["dt"] = r12(dt);
  o.header = {"rate", "lambda2", "relative_difference", "fit_rms_residual", "dt"};
  o.rows.push_back({fmt_num(fit.rate), fmt_num(l2), fmt_num(rel), fmt_num(fit.rel_err), fmt_num(dt)});
  return o;
}

// ---------------------------------------------------------------------------

/// Runs the command line; data goes to `out`, diagnostics to `err`.
/// Exit codes: 0 success or PASS, 1 usage/IO error, 2 FAIL, 3 sampled.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic connectivity toolkit: lambda_2, bounds, searches and heuristics", "algconn"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  int threads = 0;
  bool timing = false;
  app.add_option("--format", format, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "Worker threads for searches (default: $ALGCON_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Include wall time in the JSON record");

  std::string graph_src;
  const std::string graph_help = "graph6 string, file path, or named:NAME (see README for the grammar)";

  auto* lambda2 = app.add_subcommand("lambda2", "Algebraic connectivity of a graph");
  bool want_vector = false;
  lambda2->add_option("graph", graph_src, graph_help)->required();
  lambda2->add_flag("--vector", want_vector, "Also print the Fiedler vector");

  auto* bounds = app.add_subcommand("bounds", "All applicable upper bounds next to lambda_2");
  bounds->add_option("graph", graph_src, graph_help)->required();

  auto* tsplit = app.add_subcommand("tree-split", "Splitting vertex and the split-based bounds for a tree");
  tsplit->add_option("graph", graph_src, graph_help)->required();

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate a family (graph6 lines) or maximize lambda_2 over it");
  enumerate->require_subcommand(1);
  int en_n = 0, en_d = 3, en_m = 0, en_delta = 0;
  bool max_l2 = false;
  auto* e_trees = enumerate->add_subcommand("trees", "Free trees with max degree <= d (n <= 24)");
  e_trees->add_option("-n", en_n, "Vertices")->required();
  e_trees->add_option("-d", en_d, "Maximum degree")->capture_default_str();
  auto* e_cubic = enumerate->add_subcommand("cubic", "Connected cubic graphs (even n, 4..14)");
  e_cubic->add_option("-n", en_n, "Vertices")->required();
  auto* e_graphs = enumerate->add_subcommand("graphs", "Connected graphs with m edges and min degree (n <= 10)");
  e_graphs->add_option("-n", en_n, "Vertices")->required();
  e_graphs->add_option("-m", en_m, "Edges")->required();
  e_graphs->add_option("--min-degree", en_delta, "Minimum degree")->capture_default_str();
  std::string family_file;
  auto* e_file = enumerate->add_subcommand("file", "Graphs read from a graph6 file, one per line");
  e_file->add_option("path", family_file, "graph6 file")->required()->check(CLI::ExistingFile);
  for (auto* s : {e_trees, e_cubic, e_graphs, e_file})
    s->add_flag("--max-lambda2", max_l2, "Report the maximum lambda_2 and all maximizers instead of listing");

  auto* verify = app.add_subcommand("verify", "Check a conjecture; exit 0 PASS, 2 FAIL, 3 sampled");
  verify->require_subcommand(1);
  int v_n = 0, v_d = 3, v_K = 2, v_samples = 2000;
  std::uint64_t v_seed = 0;
  auto* v_k2 = verify->add_subcommand("k2", "K_{2,n-2} maximizes lambda_2 for m = 2(n-2), min degree 2");
  v_k2->add_option("-n", v_n, "Vertices (4..10)")->required();
  auto* v_tree2 = verify->add_subcommand("tree2", "The Bethe tree maximizes lambda_2 among trees of its order");
  v_tree2->add_option("-d", v_d, "Degree")->capture_default_str();
  v_tree2->add_option("-K", v_K, "Depth")->required();
  v_tree2->add_option("--samples", v_samples, "Random trees when the order exceeds 24")->capture_default_str();
  v_tree2->add_option("--seed", v_seed, "Sampling seed")->capture_default_str();
  auto* v_cubic = verify->add_subcommand("cubic", "Cubic graphs of order 2^(K+1)-2 obey 3 - 2^(3/2)cos(pi/K)");
  v_cubic->add_option("-K", v_K, "2 or 3")->required();

  int a_n = 0, a_m = 0;
  auto* augment = app.add_subcommand(
      "augment", "Greedy Fiedler edge augmentation; CSV columns: step,u,v,lambda2 (lambda2 after adding u-v)");
  augment->add_option("-n", a_n, "Vertices")->required();
  augment->add_option("-m", a_m, "Edges to add")->required();

  std::vector<int> m_list;
  auto* compare = app.add_subcommand(
      "compare",
      "Augmentation vs K_{b,n-b} vs random d-regular; CSV columns: m,augmentation,b,bipartite,d,regular_mean,"
      "regular_min,regular_max,regular_skipped");
  compare->add_option("-n", a_n, "Vertices")->required();
  compare->add_option("--m-list", m_list, "Edge counts, comma separated")->required()->delimiter(',');

  std::uint64_t c_seed = 0;
  double t_end = 20, dt = 0;
  auto* consensus = app.add_subcommand("consensus", "Fitted consensus decay rate against lambda_2");
  consensus->add_option("graph", graph_src, graph_help)->required();
  consensus->add_option("--seed", c_seed, "Seed for the random initial loads")->capture_default_str();
  consensus->add_option("--t-end", t_end, "Integration horizon")->capture_default_str();
  consensus->add_option("--dt", dt, "Step size (default 0.1 / (2 max degree))");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, help;
    app.exit(e, help, msg);
    err << msg.str();
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  if (threads <= 0) {
    try {
      threads = default_threads();
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  Output result;
  json params;
  std::string command;
  std::string default_format = "json";
  bool streamed = false;
  try {
    if (*lambda2) {
      command = "lambda2";
      params = {{"graph", graph_src}, {"vector", want_vector}};
      result = cmd_lambda2(load_graph(graph_src), want_vector);
    } else if (*bounds) {
      command = "bounds";
      params = {{"graph", graph_src}};
      result = cmd_bounds(load_graph(graph_src));
    } else if (*tsplit) {
      command = "tree-split";
      params = {{"graph", graph_src}};
      result = cmd_tree_split(load_graph(graph_src));
    } else if (*enumerate) {
      Family fam;
      std::string label;
      if (*e_trees) {
        command = "enumerate trees";
        params = {{"n", en_n}, {"d", en_d}};
        fam = trees_family(en_n, en_d);
        label = "trees n=" + std::to_string(en_n) + " max_degree<=" + std::to_string(en_d);
      } else if (*e_cubic) {
        command = "enumerate cubic";
        params = {{"n", en_n}};
        fam = cubic_family(en_n);
        label = "connected cubic graphs n=" + std::to_string(en_n);
      } else if (*e_file) {
        command = "enumerate file";
        params = {{"path", family_file}};
        std::ifstream in(family_file);
        fam = list_family(read_graph6_stream(in));
        label = "graph6 file " + family_file;
      } else {
        command = "enumerate graphs";
        params = {{"n", en_n}, {"m", en_m}, {"min_degree", en_delta}};
        fam = graphs_family(en_n, en_m, en_delta);
        label = "connected graphs n=" + std::to_string(en_n) + " m=" + std::to_string(en_m) +
                " min_degree>=" + std::to_string(en_delta);
      }
      if (max_l2) {
        params["threads"] = threads;
        result = outcome_output(maximize_lambda2(fam, label, threads));
      } else {
        fam([&](const Graph& g) {
          out << graph6_encode(g) << "\n";
          return true;
        });
        streamed = true;
      }
    } else if (*verify) {
      ConjectureReport rep;
      if (*v_k2) {
        command = "verify k2";
        params = {{"n", v_n}};
        rep = verify_conjecture_k2(v_n, threads);
      } else if (*v_tree2) {
        command = "verify tree2";
        params = {{"d", v_d}, {"K", v_K}, {"samples", v_samples}, {"seed", v_seed}};
        rep = verify_conjecture_tree2(v_d, v_K, threads, v_samples, v_seed);
      } else {
        command = "verify cubic";
        params = {{"K", v_K}};
        rep = verify_conjecture_cubic(v_K, threads);
      }
      result = report_output(rep);
    } else if (*augment) {
      command = "augment";
      default_format = "csv";
      params = {{"n", a_n}, {"m", a_m}};
      result = cmd_augment(a_n, a_m);
    } else if (*compare) {
      command = "compare";
      default_format = "csv";
      params = {{"n", a_n}, {"m_list", m_list}};
      result = cmd_compare(a_n, m_list);
    } else if (*consensus) {
      command = "consensus";
      params = {{"graph", graph_src}, {"seed", c_seed}, {"t_end", t_end}, {"dt", dt}};
      result = cmd_consensus(load_graph(graph_src), c_seed, t_end, dt);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (streamed) return 0;

  const std::string fmt = format.empty() ? default_format : format;
  if (fmt == "csv") {
    write_csv(result, out);
  } else {
    json rec;
    rec["command"] = command;
    rec["parameters"] = params;
    rec["results"] = result.record["results"];
    if (timing)
      rec["wall_time_s"] = r12(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    out << rec.dump(2) << "\n";
  }
  return result.exit_code;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace algconn::cli
