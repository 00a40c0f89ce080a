#include "stabsdp/cli.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "stabsdp/certify.hpp"
#include "stabsdp/sdpa_io.hpp"
#include "stabsdp/selfcheck.hpp"
#include "stabsdp/solver.hpp"

namespace stabsdp::cli {

namespace {

using nlohmann::json;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

bool leveled(const std::string& relax) {
  return relax == "l" || relax == "tildel" || relax == "lasserre" || relax == "nplus";
}

SolveOptions solver_options(const RunConfig& cfg) {
  SolveOptions o;
  o.gap_tol = cfg.gap_tol;
  o.max_iter = cfg.max_iter;
  return o;
}

json cell_json(const TableCell& c) {
  json j;
  if (c.ok) {
    j["value"] = c.value;
  } else {
    j["error"] = c.note;
  }
  j["seconds"] = c.seconds;
  return j;
}

}  // namespace

Graph load_graph(const std::string& source) {
  const std::string prefix = "paley:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string digits = source.substr(prefix.size());
    if (digits.empty() || digits.size() > 6 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidParameterError("bad graph source '" + source + "': expected paley:q");
    return paley_graph(std::stoi(digits));
  }
  return load_graph_file(source);
}

RelaxationInstance build_named(const Graph& g, const std::string& relax, int t,
                               bool nonneg) {
  if (nonneg && relax != "l")
    throw InvalidParameterError("--nonneg only applies to the subset hierarchy 'l'");
  if (relax == "theta" || relax == "nplus-th") {
    if (t != 1)
      throw InvalidParameterError("relaxation '" + relax + "' has no level parameter");
    return relax == "theta" ? build_theta(g) : build_nplus_th(g);
  }
  if (relax == "l") return build_Lt_graph(g, t, nonneg);
  if (relax == "tildel") return build_tildeLt(fr_cone(g), t);
  if (relax == "lasserre") return build_lasserre(fr_cone(g), t);
  if (relax == "nplus") return build_nplus_explicit(fr_cone(g), t);
  throw InvalidParameterError("unknown relaxation '" + relax + "'");
}

std::pair<std::string, int> parse_column(const std::string& token) {
  size_t i = 0;
  while (i < token.size() && !std::isdigit((unsigned char)token[i])) ++i;
  const std::string base = token.substr(0, i);
  const std::string digits = token.substr(i);
  if (!digits.empty() && digits.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidParameterError("bad column token '" + token + "'");
  if (base == "theta" || base == "nplus-th") {
    if (!digits.empty())
      throw InvalidParameterError("column '" + base + "' takes no level");
    return {base, 1};
  }
  if (!leveled(base))
    throw InvalidParameterError("unknown column '" + token + "'");
  if (digits.empty())
    throw InvalidParameterError("column '" + token + "' needs a level, e.g. " + base + "2");
  return {base, std::stoi(digits)};
}

BoundReport cmd_bound(const RunConfig& cfg) {
  BoundReport rep;
  rep.graph = cfg.graph;
  rep.relax = cfg.relax;
  rep.t = cfg.t;
  rep.nonneg = cfg.nonneg;

  Graph g = load_graph(cfg.graph);
  rep.n = g.num_vertices();
  rep.m = g.num_edges();

  auto t0 = std::chrono::steady_clock::now();
  RelaxationInstance inst = build_named(g, cfg.relax, cfg.t, cfg.nonneg);
  rep.build_seconds = seconds_since(t0);
  rep.stats = instance_stats(inst);

  t0 = std::chrono::steady_clock::now();
  SolveResult r = solve(inst.sdp, solver_options(cfg));
  rep.solve_seconds = seconds_since(t0);
  rep.value = relaxation_bound(inst, r);
  rep.status = status_name(r.status);
  rep.optimal = r.optimal();
  rep.iterations = r.iterations;
  rep.rel_gap = r.rel_gap;
  if (r.optimal()) rep.certified = verify_solution(inst.sdp, r).pass();
  if (rep.n <= 64) rep.alpha = stability_number(g);
  return rep;
}

TableReport cmd_table(const std::vector<int>& qs, const std::vector<std::string>& columns,
                      const RunConfig& cfg) {
  if (qs.empty()) throw InvalidParameterError("no graphs requested");
  std::vector<std::pair<std::string, int>> parsed;
  for (const auto& c : columns) parsed.push_back(parse_column(c));

  std::vector<Graph> graphs;
  for (int q : qs) graphs.push_back(paley_graph(q));  // validates q up front

  TableReport rep;
  rep.qs = qs;
  rep.columns = columns;
  rep.alphas.resize(qs.size());
  rep.cells.assign(qs.size(), std::vector<TableCell>(columns.size()));

  struct Task {
    size_t row;
    int col;  // -1: the alpha cell
  };
  std::vector<Task> tasks;
  for (size_t r = 0; r < qs.size(); ++r) {
    tasks.push_back({r, -1});
    for (size_t c = 0; c < columns.size(); ++c) tasks.push_back({r, int(c)});
  }

  std::atomic<size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      const Graph& g = graphs[task.row];
      if (task.col < 0) {
        if (g.num_vertices() <= 64) rep.alphas[task.row] = stability_number(g);
        continue;
      }
      TableCell& cell = rep.cells[task.row][task.col];
      auto t0 = std::chrono::steady_clock::now();
      try {
        const auto& [name, level] = parsed[task.col];
        RelaxationInstance inst = build_named(g, name, level, false);
        if (uint64_t(inst.sdp.num_vars) > cfg.cell_var_cap) {
          cell.note = fmt("skipped: %d variables exceeds the per-cell cap of %llu",
                          inst.sdp.num_vars, (unsigned long long)cfg.cell_var_cap);
        } else {
          SolveResult r = solve(inst.sdp, solver_options(cfg));
          if (r.optimal()) {
            cell.ok = true;
            cell.value = relaxation_bound(inst, r);
          } else {
            cell.note = std::string("solver: ") + status_name(r.status);
          }
        }
      } catch (const std::exception& e) {
        cell.note = e.what();
      }
      cell.seconds = seconds_since(t0);
    }
  };

  const int workers = std::max(1, std::min(cfg.workers, 64));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rep;
}

ExportReport cmd_export(const RunConfig& cfg) {
  Graph g = load_graph(cfg.graph);
  RelaxationInstance inst = build_named(g, cfg.relax, cfg.t, cfg.nonneg);

  ExportReport rep;
  rep.relax = cfg.relax;
  rep.t = cfg.t;
  rep.stats = instance_stats(inst);
  if (cfg.out.empty()) {
    std::string base;
    for (char ch : cfg.graph)
      if (std::isalnum((unsigned char)ch)) base += ch;
    rep.path = base + "-" + cfg.relax + (leveled(cfg.relax) ? std::to_string(cfg.t) : "") +
               ".dat-s";
  } else {
    rep.path = cfg.out;
  }
  try {
    rep.reference = formulation_stats(inst.tag, inst.n, inst.t);
    rep.has_reference = true;
  } catch (const CapacityError&) {
  }
  export_sdpa_file(inst.sdp, rep.path);
  return rep;
}

int cmd_verify(bool full, std::ostream& log) {
  int failures = 0, checks = 0;
  for (const auto& suite : selfcheck::run_suites(full)) {
    log << fmt("[%s] %-40s %5d checks  %2d failures  %6.2f s\n",
               suite.ok() ? " ok " : "FAIL", suite.name.c_str(), suite.checks,
               suite.failures, suite.seconds);
    for (const auto& note : suite.notes) log << "         " << note << "\n";
    failures += suite.failures;
    checks += suite.checks;
  }
  log << fmt("total: %d checks, %d failures\n", checks, failures);
  return failures;
}

std::string render(const BoundReport& r, const std::string& format) {
  if (format == "json") {
    json j{{"graph", r.graph},
           {"n", r.n},
           {"m", r.m},
           {"relax", r.relax},
           {"t", r.t},
           {"nonneg", r.nonneg},
           {"value", r.value},
           {"status", r.status},
           {"iterations", r.iterations},
           {"rel_gap", r.rel_gap},
           {"certified", r.certified},
           {"variables", r.stats.variables},
           {"blocks", r.stats.blocks},
           {"max_order", r.stats.max_order},
           {"nonzeros", r.stats.nonzeros},
           {"build_seconds", r.build_seconds},
           {"solve_seconds", r.solve_seconds}};
    if (r.alpha) j["alpha"] = *r.alpha;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string head = "graph,relax,t,value,alpha,status,iterations,rel_gap,variables,blocks";
    std::string row = fmt("%s,%s,%d,%.17g,", r.graph.c_str(), r.relax.c_str(), r.t, r.value);
    row += r.alpha ? fmt("%ld", *r.alpha) : "";
    row += fmt(",%s,%d,%.3g,%d,%d", r.status.c_str(), r.iterations, r.rel_gap,
               r.stats.variables, r.stats.blocks);
    return head + "\n" + row + "\n";
  }
  std::string out;
  out += fmt("graph: %s  (%d vertices, %d edges)\n", r.graph.c_str(), r.n, r.m);
  out += fmt("relaxation: %s%s%s\n", r.relax.c_str(),
             leveled(r.relax) ? fmt("  level %d", r.t).c_str() : "",
             r.nonneg ? "  with nonnegativity cuts" : "");
  out += fmt("instance: %d variables, %d blocks, max order %d\n", r.stats.variables,
             r.stats.blocks, r.stats.max_order);
  out += fmt("bound: %.3f\n", r.value);
  if (r.alpha) out += fmt("alpha: %ld\n", *r.alpha);
  out += fmt("status: %s  (%d iterations, relative gap %.1e%s)\n", r.status.c_str(),
             r.iterations, r.rel_gap, r.certified ? ", certified" : "");
  out += fmt("time: build %.2f s, solve %.2f s\n", r.build_seconds, r.solve_seconds);
  return out;
}

std::string render(const TableReport& r, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (size_t i = 0; i < r.qs.size(); ++i) {
      json row{{"q", r.qs[i]}};
      if (r.alphas[i]) row["alpha"] = *r.alphas[i];
      json cells;
      for (size_t c = 0; c < r.columns.size(); ++c)
        cells[r.columns[c]] = cell_json(r.cells[i][c]);
      row["cells"] = cells;
      rows.push_back(row);
    }
    return json{{"columns", r.columns}, {"rows", rows}}.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out = "q,alpha";
    for (const auto& c : r.columns) out += "," + c;
    out += "\n";
    for (size_t i = 0; i < r.qs.size(); ++i) {
      out += fmt("%d,", r.qs[i]);
      if (r.alphas[i]) out += fmt("%ld", *r.alphas[i]);
      for (const auto& cell : r.cells[i])
        out += cell.ok ? fmt(",%.17g", cell.value) : ",";
      out += "\n";
    }
    return out;
  }
  std::string out = fmt("%6s %6s", "q", "alpha");
  for (const auto& c : r.columns) out += fmt(" %9s", c.c_str());
  out += "\n";
  std::vector<std::string> notes;
  for (size_t i = 0; i < r.qs.size(); ++i) {
    out += fmt("%6d %6s", r.qs[i],
               r.alphas[i] ? fmt("%ld", *r.alphas[i]).c_str() : "—");
    for (size_t c = 0; c < r.columns.size(); ++c) {
      const TableCell& cell = r.cells[i][c];
      out += cell.ok ? fmt(" %9.3f", cell.value) : fmt(" %9s", "—");
      if (!cell.ok)
        notes.push_back(fmt("%d/%s: %s", r.qs[i], r.columns[c].c_str(), cell.note.c_str()));
    }
    out += "\n";
  }
  if (!notes.empty()) {
    out += "notes:\n";
    for (const auto& n : notes) out += "  " + n + "\n";
  }
  return out;
}

std::string render(const ExportReport& r, const std::string& format) {
  if (format == "json") {
    json j{{"path", r.path},
           {"relax", r.relax},
           {"t", r.t},
           {"variables", r.stats.variables},
           {"blocks", r.stats.blocks},
           {"max_order", r.stats.max_order},
           {"nonzeros", r.stats.nonzeros}};
    if (r.has_reference) {
      j["reference"] = {{"variables", r.reference.variables},
                        {"matrices", r.reference.matrices},
                        {"block_order", r.reference.block_order}};
    }
    return j.dump(2) + "\n";
  }
  std::string out;
  out += fmt("wrote: %s\n", r.path.c_str());
  out += fmt("instance: %d variables, %d blocks, max order %d, %lld nonzeros\n",
             r.stats.variables, r.stats.blocks, r.stats.max_order,
             (long long)r.stats.nonzeros);
  if (r.has_reference)
    out += fmt("closed-form size before reduction: %llu variables, %llu matrices, order %llu\n",
               (unsigned long long)r.reference.variables,
               (unsigned long long)r.reference.matrices,
               (unsigned long long)r.reference.block_order);
  return out;
}

void emit(const std::string& text, const RunConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << text;
  if (!f.good()) throw IoError("write failed: '" + cfg.out + "'");
}

}  // namespace stabsdp::cli
