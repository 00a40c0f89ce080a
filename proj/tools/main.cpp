#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "stabsdp/cli.hpp"
#include "stabsdp/errors.hpp"

using namespace stabsdp;

namespace {

// 0 success, 1 verification failure, 2 usage, 3 capacity, 4 numerical
int dispatch(CLI::App& bound, CLI::App& table, CLI::App& verify, CLI::App& exp,
             cli::RunConfig& cfg, std::vector<int>& qs, std::vector<std::string>& columns,
             std::string& scale) {
  if (bound.parsed()) {
    cli::BoundReport rep = cli::cmd_bound(cfg);
    cli::emit(cli::render(rep, cfg.format), cfg);
    if (!rep.optimal) return 4;
    return rep.certified ? 0 : 1;
  }
  if (table.parsed()) {
    cli::TableReport rep = cli::cmd_table(qs, columns, cfg);
    cli::emit(cli::render(rep, cfg.format), cfg);
    return 0;
  }
  if (verify.parsed()) return cli::cmd_verify(scale == "full", std::cout) == 0 ? 0 : 1;
  if (exp.parsed()) {
    cli::ExportReport rep = cli::cmd_export(cfg);
    std::cout << cli::render(rep, cfg.format);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable set bounds from block-diagonal semidefinite hierarchies"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::vector<int> qs;
  std::vector<std::string> columns{"theta", "l2", "l3", "nplus-th"};
  std::string scale = "small";

  const auto relax_names =
      CLI::IsMember({"theta", "l", "tildel", "lasserre", "nplus", "nplus-th"});

  auto add_solver_flags = [&](CLI::App* c) {
    c->add_option("--gap", cfg.gap_tol, "relative duality gap target")
        ->check(CLI::PositiveNumber);
    c->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  };
  auto add_output_flags = [&](CLI::App* c) {
    c->add_option("--format", cfg.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    c->add_option("--out", cfg.out, "write the report here instead of stdout");
  };
  auto add_instance_flags = [&](CLI::App* c) {
    c->add_option("--graph", cfg.graph, "paley:q or an edge-list file")->required();
    c->add_option("--relax", cfg.relax, "relaxation family")->check(relax_names);
    c->add_option("--t", cfg.t, "hierarchy level")->check(CLI::Range(1, 1000));
    c->add_flag("--nonneg", cfg.nonneg, "add nonnegativity cuts (family 'l' only)");
  };

  CLI::App* bound = app.add_subcommand("bound", "compute one relaxation bound");
  add_instance_flags(bound);
  add_solver_flags(bound);
  add_output_flags(bound);

  CLI::App* table = app.add_subcommand("table", "bounds for a list of paley graphs");
  table->add_option("--q", qs, "paley parameters, q prime = 1 mod 4")
      ->required()
      ->delimiter(',');
  table->add_option("--relax", columns, "columns: theta, l2, l3, nplus-th, ...")
      ->delimiter(',');
  table->add_option("--workers", cfg.workers, "parallel table cells")
      ->check(CLI::Range(1, 64));
  table->add_option("--cell-cap", cfg.cell_var_cap,
                    "skip cells with more variables than this");
  add_solver_flags(table);
  add_output_flags(table);

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("scale", scale, "small or full")
      ->check(CLI::IsMember({"small", "full"}));

  CLI::App* exp = app.add_subcommand("export", "write an instance in SDPA sparse format");
  add_instance_flags(exp);
  exp->add_option("--out", cfg.out, "output path (default derived from the config)");
  exp->add_option("--format", cfg.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(*bound, *table, *verify, *exp, cfg, qs, columns, scale);
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
