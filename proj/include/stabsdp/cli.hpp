#pragma once

// Command implementations behind the executable.  Kept in the library so the
// table/report plumbing (cell scheduling, text/json/csv rendering) is
// testable without spawning processes; the binary is a thin flag parser.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabsdp/hierarchy.hpp"

namespace stabsdp::cli {

struct RunConfig {
  std::string graph;            // "paley:q" or a path to an edge-list file
  std::string relax = "theta";  // theta | l | tildel | lasserre | nplus-th | nplus
  int t = 1;
  bool nonneg = false;
  double gap_tol = 1e-8;
  int max_iter = 200;
  std::string format = "text";  // text | json | csv
  std::string out;              // empty: stdout
  int workers = 1;
  uint64_t cell_var_cap = 12000;  // refuse table cells larger than this
};

Graph load_graph(const std::string& source);

// Instance of a named relaxation for the stable set problem on g; the cone
// hierarchies run on the fractional stable set cone of g.
RelaxationInstance build_named(const Graph& g, const std::string& relax, int t,
                               bool nonneg);

// Column token -> (relaxation name, level): "theta", "l2", "l3", "nplus-th",
// "tildel1", "lasserre2", "nplus1", ...
std::pair<std::string, int> parse_column(const std::string& token);

struct BoundReport {
  std::string graph;
  int n = 0;
  int m = 0;
  std::string relax;
  int t = 1;
  bool nonneg = false;
  double value = 0.0;
  std::optional<long> alpha;
  std::string status;
  int iterations = 0;
  double rel_gap = 0.0;
  bool certified = false;
  bool optimal = false;
  InstanceStats stats;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
};
BoundReport cmd_bound(const RunConfig& cfg);

struct TableCell {
  bool ok = false;
  double value = 0.0;
  std::string note;  // failure reason when !ok
  double seconds = 0.0;
};
struct TableReport {
  std::vector<int> qs;
  std::vector<std::string> columns;
  std::vector<std::optional<long>> alphas;  // one per row
  std::vector<std::vector<TableCell>> cells;  // [row][column]
};
TableReport cmd_table(const std::vector<int>& qs, const std::vector<std::string>& columns,
                      const RunConfig& cfg);

struct ExportReport {
  std::string path;
  std::string relax;
  int t = 1;
  InstanceStats stats;
  bool has_reference = false;
  FormulationStats reference;
};
ExportReport cmd_export(const RunConfig& cfg);

// Runs the property suites, printing one line per suite plus failure notes;
// returns the number of failed checks.
int cmd_verify(bool full, std::ostream& log);

std::string render(const BoundReport& r, const std::string& format);
std::string render(const TableReport& r, const std::string& format);
std::string render(const ExportReport& r, const std::string& format);

// Writes to cfg.out when set, otherwise to stdout.
void emit(const std::string& text, const RunConfig& cfg);

}  // namespace stabsdp::cli
