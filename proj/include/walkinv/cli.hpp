#pragma once

// Command-line front end. Kept in a header so the tests can drive it with
// in-memory streams; tools/walkinv.cpp is a thin main().
//
// Exit codes: 0 success / Isomorphic, 1 NotIsomorphic (or a non-Success
// reconstruction), 2 Inconclusive, 3 I/O or parse failure, 4 usage error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charpoly.hpp"
#include "graph.hpp"
#include "invariants.hpp"
#include "isomatch.hpp"
#include "reconstruct.hpp"
#include "serialize.hpp"

namespace walkinv::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_negative = 1,
  exit_inconclusive = 2,
  exit_input_error = 3,
  exit_usage_error = 4,
};

enum class OutputFormat { json, text };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::size_t> kmax;  // default n
  std::optional<std::uint64_t> modulus;
  bool modular = false;  // --modular: use mersenne61
  std::size_t rounds = default_refinement_rounds;
  std::uint64_t budget = default_node_budget;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::json;
  bool text = false;
  bool profile = false;
  bool refine = false;
  bool timing = false;
  bool relabel = false;
  bool edge_list = false;
  std::string fixture;
  std::size_t n = 0;
  double p = 0.5;

  std::optional<std::uint64_t> effective_modulus() const {
    if (modulus) return modulus;
    if (modular) return mersenne61;
    return std::nullopt;
  }
  bool as_text() const { return text || format == OutputFormat::text; }
};

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

inline Graph load_graph(const std::string& path) {
  auto text = read_input(path);
  try {
    return parse_graph(text);
  } catch (const parse_error& e) {
    throw input_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw input_error(path + ": " + e.what());
  }
}

namespace detail {

inline std::size_t kmax_for(const RunConfig& cfg, const Graph& g) { return cfg.kmax.value_or(g.size()); }

template <class Row>
void print_rows(std::ostream& out, const std::vector<Row>& rows, const std::vector<std::string>& labels) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 1;
  for (const auto& r : rows) {
    auto& c = cells.emplace_back();
    for (const auto& x : r) {
      std::ostringstream os;
      os << x;
      c.push_back(os.str());
      width = std::max(width, c.back().size());
    }
  }
  std::size_t label_width = 1;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << std::setw(static_cast<int>(label_width)) << labels[i] << " |";
    for (const auto& c : cells[i]) out << ' ' << std::setw(static_cast<int>(width)) << c;
    out << '\n';
  }
}

inline int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph(cfg.inputs.at(0));
  const std::size_t kmax = kmax_for(cfg, g);
  json doc;

  if (auto m = cfg.effective_modulus()) {
    auto table = walk_diagonal_table_mod(g, kmax, *m);
    auto cert = certificate(table);
    if (cfg.as_text()) {
      out << "n = " << g.size() << ", kmax = " << kmax << ", modulus = " << *m << "\n";
      std::vector<std::vector<std::uint64_t>> rows(g.size());
      std::vector<std::string> labels;
      for (Vertex i = 0; i < g.size(); ++i) {
        labels.push_back(std::to_string(i));
        for (std::size_t k = 1; k <= kmax; ++k) rows[i].push_back(table.at(k, i));
      }
      out << "walk table (residues):\n";
      print_rows(out, rows, labels);
      std::vector<std::string> sorted_labels;
      for (auto v : cert.order.map()) sorted_labels.push_back(std::to_string(v));
      out << "sorted residues (order is a hint only):\n";
      print_rows(out, cert.rows, sorted_labels);
      return exit_ok;
    }
    auto t = to_json(table);
    doc["header"] = t["header"];
    doc["rows"] = t["rows"];
    doc["certificate"] = to_json(cert);
    doc["certificate"]["order_is_hint"] = true;
    out << doc.dump(2) << '\n';
    return exit_ok;
  }

  auto table = walk_diagonal_table(g, kmax);
  auto cert = certificate(table);
  std::optional<ExtendedProfile> profile;
  if (cfg.profile) profile = extended_profile(g, kmax);
  std::optional<std::vector<std::vector<BigInt>>> refined;
  if (cfg.refine) refined = neighbor_sum_refinement(g, vertex_vectors(table), cfg.rounds);

  if (cfg.as_text()) {
    out << "n = " << g.size() << ", kmax = " << kmax << "\n";
    std::vector<std::string> labels;
    for (Vertex i = 0; i < g.size(); ++i) labels.push_back(std::to_string(i));
    out << "walk table (vertex | d1 .. d" << kmax << "):\n";
    print_rows(out, vertex_vectors(table), labels);
    std::vector<std::string> sorted_labels;
    for (auto v : cert.order.map()) sorted_labels.push_back(std::to_string(v));
    out << "certificate (original vertex | sorted row):\n";
    print_rows(out, cert.rows, sorted_labels);
    if (refined) {
      out << "neighbor-sum refinement, " << cfg.rounds << " rounds:\n";
      print_rows(out, *refined, labels);
    }
    if (profile) {
      for (Vertex i = 0; i < g.size(); ++i) {
        out << "profile of vertex " << i << ":\n";
        std::vector<std::string> none(profile->vertices[i].tuples.size(), "");
        print_rows(out, profile->vertices[i].tuples, none);
      }
    }
    return exit_ok;
  }

  auto t = to_json(table);
  doc["header"] = t["header"];
  doc["rows"] = t["rows"];
  doc["certificate"] = to_json(cert);
  if (refined) {
    json r = json::array();
    for (const auto& v : *refined) r.push_back(walkinv::detail::big_array(v));
    doc["refinement"] = {{"rounds", cfg.rounds}, {"vectors", std::move(r)}};
  }
  if (profile) doc["profile"] = to_json(*profile);
  out << doc.dump(2) << '\n';
  return exit_ok;
}

inline int cmd_iso(const RunConfig& cfg, std::ostream& out) {
  Graph a = load_graph(cfg.inputs.at(0));
  Graph b = load_graph(cfg.inputs.at(1));
  IsoConfig ic;
  ic.kmax = cfg.kmax;
  ic.rounds = cfg.rounds;
  ic.node_budget = cfg.budget;
  ic.modulus = cfg.effective_modulus();
  auto r = find_isomorphism(a, b, ic);
  if (cfg.as_text()) {
    out << to_string(r.verdict) << " (" << to_string(r.witness) << ")\n";
    if (r.permutation) {
      out << "map:";
      for (auto v : r.permutation->map()) out << ' ' << v;
      out << '\n';
    }
    out << "nodes: " << r.stats.nodes << ", classes: " << r.stats.classes << '\n';
    if (cfg.timing) out << "seconds: " << r.stats.seconds << '\n';
  } else {
    auto doc = to_json(r);
    if (cfg.timing) doc["stats"]["seconds"] = r.stats.seconds;
    out << doc.dump(2) << '\n';
  }
  switch (r.verdict) {
    case Verdict::Isomorphic: return exit_ok;
    case Verdict::NotIsomorphic: return exit_negative;
    case Verdict::Inconclusive: return exit_inconclusive;
  }
  return exit_inconclusive;
}

inline int cmd_charpoly(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph(cfg.inputs.at(0));
  auto table = walk_diagonal_table(g, std::max(kmax_for(cfg, g), g.size()));
  auto traces = power_traces(table);
  auto p = charpoly_from_traces(traces, g.size());
  auto direct = charpoly_direct(g);
  if (cfg.as_text()) {
    out << p.to_string() << '\n';
    out << "coefficients (constant first):";
    for (const auto& c : p.coeffs()) out << ' ' << c;
    out << '\n' << "direct determinant agrees: " << (p == direct ? "yes" : "no") << '\n';
  } else {
    json doc;
    doc["charpoly"] = to_json(p);
    doc["traces"] = walkinv::detail::big_array(traces.t);
    doc["direct_agrees"] = p == direct;
    out << doc.dump(2) << '\n';
  }
  return p == direct ? exit_ok : exit_negative;
}

inline int cmd_deleted(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph(cfg.inputs.at(0));
  auto table = walk_diagonal_table(g, g.size());
  auto p = charpoly_from_traces(power_traces(table), g.size());
  auto deleted = vertex_deleted_charpolys(table, p);
  const bool identity = check_derivative_identity(deleted, p);
  if (cfg.as_text()) {
    out << "p(x) = " << p.to_string() << '\n';
    for (Vertex i = 0; i < g.size(); ++i) out << "p_" << i << "(x) = " << deleted[i].to_string() << '\n';
    out << "sum of p_i equals p': " << (identity ? "yes" : "no") << '\n';
  } else {
    json doc;
    doc["charpoly"] = to_json(p);
    json list = json::array();
    for (const auto& q : deleted.polys) list.push_back(to_json(q));
    doc["deleted"] = std::move(list);
    doc["derivative_identity"] = identity;
    out << doc.dump(2) << '\n';
  }
  return identity ? exit_ok : exit_negative;
}

inline int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
  const auto& path = cfg.inputs.at(0);
  auto text = read_input(path);
  InvariantTable table;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      table = table_from_json(json::parse(text));
    } catch (const std::exception& e) {
      throw input_error(path + ": " + e.what());
    }
  } else {
    Graph g = load_graph(path);
    table = walk_diagonal_table(g, std::max(kmax_for(cfg, g), g.size()));
  }
  if (table.kmax() < table.size())
    throw input_error(path + ": reconstruction needs a table with kmax >= n");
  auto r = reconstruct_adjacency(table);
  if (cfg.as_text()) {
    out << "status: " << to_string(r.status) << '\n';
    out << "eigenvalues:";
    for (double l : r.spectrum.eigenvalues) out << ' ' << std::setprecision(12) << l;
    out << "\nmin gap: " << r.spectrum.min_gap << '\n';
    if (!r.residuals.empty())
      out << "max residual: " << *std::max_element(r.residuals.begin(), r.residuals.end()) << '\n';
    if (r.adj) out << "graph6: " << write_graph6(*r.adj) << '\n';
    if (r.alternative) out << "alternative graph6: " << write_graph6(*r.alternative) << '\n';
    if (!r.note.empty()) out << "note: " << r.note << '\n';
  } else {
    out << to_json(r).dump(2) << '\n';
  }
  return r.ok() ? exit_ok : exit_negative;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  Graph g;
  if (!cfg.fixture.empty()) {
    g = fixtures::by_name(cfg.fixture);
  } else {
    if (cfg.n == 0) throw std::invalid_argument("gen: give --fixture NAME or --n N");
    g = random_graph(cfg.n, cfg.p, cfg.seed);
  }
  if (cfg.relabel) g = apply_permutation(g, random_permutation(g.size(), cfg.seed));
  out << (cfg.edge_list ? write_edge_list(g) : write_graph6(g) + "\n");
  return exit_ok;
}

}  // namespace detail

/// Runs one command line; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walk-count graph invariants, characteristic polynomials, reconstruction and isomorphism search",
               "walkinv"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json (default) or text")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"text", OutputFormat::text}},
            CLI::ignore_case));
    sub->add_flag("--text", cfg.text, "same as --format text");
  };
  auto add_kmax = [&](CLI::App* sub) {
    sub->add_option("--kmax", cfg.kmax, "highest power (default n)")->check(CLI::PositiveNumber);
  };
  auto add_mod = [&](CLI::App* sub) {
    sub->add_option("--mod", cfg.modulus, "work modulo M (M >= 2)")->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
    sub->add_flag("--modular", cfg.modular, "work modulo 2^61 - 1");
  };

  auto* inv = app.add_subcommand("invariants", "walk table and sorted certificate");
  inv->add_option("graph", cfg.inputs, "graph file (graph6 or edge list, - for stdin)")->required()->expected(1);
  add_kmax(inv);
  add_mod(inv);
  add_format(inv);
  inv->add_flag("--profile", cfg.profile, "include extended off-diagonal profiles");
  inv->add_flag("--refine", cfg.refine, "include neighbor-sum refinement of the walk vectors");
  inv->add_option("--rounds", cfg.rounds, "refinement rounds (default 2)");

  auto* iso = app.add_subcommand("iso", "isomorphism verdict for two graphs");
  iso->add_option("graphs", cfg.inputs, "two graph files")->required()->expected(2);
  add_kmax(iso);
  add_mod(iso);
  add_format(iso);
  iso->add_option("--rounds", cfg.rounds, "refinement rounds (default 2)");
  iso->add_option("--budget", cfg.budget, "backtracking node budget (default 10^7)");
  iso->add_flag("--timing", cfg.timing, "include wall-clock time in the output");

  auto* cp = app.add_subcommand("charpoly", "characteristic polynomial via power traces");
  cp->add_option("graph", cfg.inputs, "graph file")->required()->expected(1);
  add_kmax(cp);
  add_format(cp);

  auto* del = app.add_subcommand("deleted", "vertex-deleted characteristic polynomials");
  del->add_option("graph", cfg.inputs, "graph file")->required()->expected(1);
  add_format(del);

  auto* rec = app.add_subcommand("reconstruct", "rebuild the adjacency matrix from the walk table");
  rec->add_option("input", cfg.inputs, "graph file or walk-table JSON")->required()->expected(1);
  add_kmax(rec);
  add_format(rec);

  auto* gen = app.add_subcommand("gen", "write a graph6 line for a fixture or a random graph");
  gen->add_option("--fixture", cfg.fixture, "shrikhande, rook44, petersen, kN, pathN, cycleN");
  gen->add_option("--n", cfg.n, "vertex count for G(n, p)");
  gen->add_option("--p", cfg.p, "edge probability for G(n, p)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", cfg.seed, "seed for the generator and --relabel");
  gen->add_flag("--relabel", cfg.relabel, "apply a random permutation drawn from --seed");
  gen->add_flag("--edge-list", cfg.edge_list, "write the edge-list format instead of graph6");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "walkinv: " << e.what() << '\n';
    return exit_usage_error;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    if (inv->parsed()) return detail::cmd_invariants(cfg, out);
    if (iso->parsed()) return detail::cmd_iso(cfg, out);
    if (cp->parsed()) return detail::cmd_charpoly(cfg, out);
    if (del->parsed()) return detail::cmd_deleted(cfg, out);
    if (rec->parsed()) return detail::cmd_reconstruct(cfg, out);
    if (gen->parsed()) return detail::cmd_gen(cfg, out);
  } catch (const input_error& e) {
    err << "walkinv: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    err << "walkinv: " << e.what() << '\n';
    return exit_usage_error;
  }
  return exit_usage_error;
}

}  // namespace walkinv::cli
