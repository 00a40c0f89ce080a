#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "stabsdp/cli.hpp"
#include "stabsdp/sdpa_io.hpp"

using namespace stabsdp;
using cli::RunConfig;

namespace {

RunConfig table_config() {
  RunConfig cfg;
  cfg.workers = 2;
  return cfg;
}

// Pull a named cell value out of the json table render.
double json_cell(const nlohmann::json& doc, int q, const std::string& col) {
  for (const auto& row : doc.at("rows"))
    if (row.at("q") == q) return row.at("cells").at(col).at("value").get<double>();
  FAIL("row not found");
  return 0.0;
}

}  // namespace

TEST_CASE("column tokens split into name and level") {
  CHECK(cli::parse_column("theta") == std::pair<std::string, int>{"theta", 1});
  CHECK(cli::parse_column("nplus-th") == std::pair<std::string, int>{"nplus-th", 1});
  CHECK(cli::parse_column("l2") == std::pair<std::string, int>{"l", 2});
  CHECK(cli::parse_column("l10") == std::pair<std::string, int>{"l", 10});
  CHECK(cli::parse_column("tildel1") == std::pair<std::string, int>{"tildel", 1});
  CHECK(cli::parse_column("lasserre3") == std::pair<std::string, int>{"lasserre", 3});
  CHECK(cli::parse_column("nplus2") == std::pair<std::string, int>{"nplus", 2});

  CHECK_THROWS_AS(cli::parse_column("l"), InvalidParameterError);      // needs a level
  CHECK_THROWS_AS(cli::parse_column("theta2"), InvalidParameterError); // takes none
  CHECK_THROWS_AS(cli::parse_column("nplus-th1"), InvalidParameterError);
  CHECK_THROWS_AS(cli::parse_column("l2x"), InvalidParameterError);
  CHECK_THROWS_AS(cli::parse_column("bogus"), InvalidParameterError);
  CHECK_THROWS_AS(cli::parse_column(""), InvalidParameterError);
}

TEST_CASE("graph sources") {
  CHECK(cli::load_graph("paley:13").num_vertices() == 13);
  CHECK_THROWS_AS(cli::load_graph("paley:8"), UnsupportedFieldError);
  CHECK_THROWS_AS(cli::load_graph("paley:"), InvalidParameterError);
  CHECK_THROWS_AS(cli::load_graph("paley:12x"), InvalidParameterError);
  CHECK_THROWS_AS(cli::load_graph("/no/such/file.col"), IoError);
}

TEST_CASE("named builders reject bad combinations") {
  Graph g = cli::load_graph("paley:5");
  CHECK(structurally_equal(cli::build_named(g, "theta", 1, false).sdp,
                           build_theta(g).sdp));
  CHECK_THROWS_AS(cli::build_named(g, "theta", 2, false), InvalidParameterError);
  CHECK_THROWS_AS(cli::build_named(g, "nplus-th", 3, false), InvalidParameterError);
  CHECK_THROWS_AS(cli::build_named(g, "theta", 1, true), InvalidParameterError);
  CHECK_THROWS_AS(cli::build_named(g, "tildel", 1, true), InvalidParameterError);
  CHECK_THROWS_AS(cli::build_named(g, "what", 1, false), InvalidParameterError);
}

TEST_CASE("bound report on the pentagon") {
  RunConfig cfg;
  cfg.graph = "paley:5";
  cli::BoundReport rep = cli::cmd_bound(cfg);
  CHECK(rep.optimal);
  CHECK(rep.certified);
  CHECK(rep.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-8));
  REQUIRE(rep.alpha.has_value());
  CHECK(*rep.alpha == 2);
  CHECK(rep.n == 5);
  CHECK(rep.m == 5);
  CHECK(rep.stats.variables == 10);

  const std::string text = cli::render(rep, "text");
  CHECK(text.find("bound: 2.236") != std::string::npos);
  CHECK(text.find("alpha: 2") != std::string::npos);
  CHECK(text.find("certified") != std::string::npos);

  const auto j = nlohmann::json::parse(cli::render(rep, "json"));
  CHECK(j.at("value").get<double>() == rep.value);
  CHECK(j.at("alpha").get<long>() == 2);
  CHECK(j.at("certified").get<bool>());
}

TEST_CASE("table runs cells concurrently and renders consistently") {
  const std::vector<int> qs{5, 13};
  const std::vector<std::string> cols{"theta", "l2"};
  cli::TableReport rep = cli::cmd_table(qs, cols, table_config());

  REQUIRE(rep.cells.size() == 2);
  REQUIRE(rep.cells[0].size() == 2);
  for (const auto& row : rep.cells)
    for (const auto& cell : row) CHECK(cell.ok);
  REQUIRE(rep.alphas[0].has_value());
  CHECK(*rep.alphas[0] == 2);
  CHECK(*rep.alphas[1] == 3);
  CHECK(rep.cells[0][0].value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-8));
  CHECK(rep.cells[1][0].value == doctest::Approx(std::sqrt(13.0)).epsilon(1e-8));
  CHECK(rep.cells[1][1].value == doctest::Approx(3.0).epsilon(1e-6));

  SUBCASE("text rounds to three decimals") {
    const std::string text = cli::render(rep, "text");
    CHECK(text.find("2.236") != std::string::npos);
    CHECK(text.find("3.606") != std::string::npos);
    CHECK(text.find("3.000") != std::string::npos);
    CHECK(text.find("—") == std::string::npos);  // no failed cells
  }

  SUBCASE("json and csv carry the same numbers") {
    const auto doc = nlohmann::json::parse(cli::render(rep, "json"));
    CHECK(json_cell(doc, 5, "theta") == rep.cells[0][0].value);
    CHECK(json_cell(doc, 13, "l2") == rep.cells[1][1].value);

    std::istringstream csv(cli::render(rep, "csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "q,alpha,theta,l2");
    std::getline(csv, line);  // q=5 row
    int q = 0;
    long alpha = 0;
    double th = 0, l2 = 0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%ld,%lf,%lf", &q, &alpha, &th, &l2) == 4);
    CHECK(q == 5);
    CHECK(alpha == 2);
    CHECK(th == rep.cells[0][0].value);
    CHECK(l2 == rep.cells[0][1].value);
  }

  SUBCASE("a second run reproduces every cell bitwise") {
    cli::TableReport again = cli::cmd_table(qs, cols, table_config());
    for (size_t r = 0; r < rep.cells.size(); ++r)
      for (size_t c = 0; c < rep.cells[r].size(); ++c) {
        CHECK(again.cells[r][c].ok == rep.cells[r][c].ok);
        CHECK(again.cells[r][c].value == rep.cells[r][c].value);
      }
  }
}

TEST_CASE("oversized cells are skipped with a note and the run continues") {
  RunConfig cfg = table_config();
  cfg.cell_var_cap = 15;  // theta on q=5 fits (10 vars); both q=13 cells trip
  cli::TableReport rep = cli::cmd_table({5, 13}, {"theta", "l2"}, cfg);

  CHECK(rep.cells[0][0].ok);
  CHECK_FALSE(rep.cells[1][0].ok);  // 52 variables
  CHECK_FALSE(rep.cells[1][1].ok);  // 78 variables
  CHECK(rep.cells[1][1].note.find("per-cell cap") != std::string::npos);

  const std::string text = cli::render(rep, "text");
  CHECK(text.find("—") != std::string::npos);
  CHECK(text.find("notes:") != std::string::npos);
  CHECK(text.find("13/l2: skipped") != std::string::npos);

  // csv leaves failed cells empty instead of inventing values
  const std::string csv = cli::render(rep, "csv");
  CHECK(csv.find("13,3,,\n") != std::string::npos);

  const auto doc = nlohmann::json::parse(cli::render(rep, "json"));
  CHECK(doc.at("rows")[1].at("cells").at("l2").contains("error"));
  CHECK_FALSE(doc.at("rows")[1].at("cells").at("l2").contains("value"));
}

TEST_CASE("table rejects empty input and bad columns up front") {
  CHECK_THROWS_AS(cli::cmd_table({}, {"theta"}, table_config()), InvalidParameterError);
  CHECK_THROWS_AS(cli::cmd_table({5}, {"wat"}, table_config()), InvalidParameterError);
  CHECK_THROWS_AS(cli::cmd_table({6}, {"theta"}, table_config()),
                  InvalidParameterError);  // 6 is not a prime power we accept
}

TEST_CASE("export writes a file that parses back to the same instance") {
  RunConfig cfg;
  cfg.graph = "paley:5";
  cfg.relax = "l";
  cfg.t = 2;
  cfg.out = "/tmp/stabsdp-test-export.dat-s";
  cli::ExportReport rep = cli::cmd_export(cfg);
  CHECK(rep.path == cfg.out);
  CHECK(rep.has_reference);

  RelaxationInstance inst = cli::build_named(cli::load_graph("paley:5"), "l", 2, false);
  CHECK(structurally_equal(import_sdpa_file(rep.path), inst.sdp));
  std::remove(rep.path.c_str());

  const std::string text = cli::render(rep, "text");
  CHECK(text.find("wrote: /tmp/stabsdp-test-export.dat-s") != std::string::npos);
  CHECK(text.find("closed-form size") != std::string::npos);
}

TEST_CASE("derived export names strip the source punctuation") {
  RunConfig cfg;
  cfg.graph = "paley:5";
  cfg.relax = "tildel";
  cfg.t = 1;
  cli::ExportReport rep = cli::cmd_export(cfg);
  CHECK(rep.path == "paley5-tildel1.dat-s");
  std::remove(rep.path.c_str());
}

TEST_CASE("emit fails loudly on unwritable targets") {
  RunConfig cfg;
  cfg.out = "/no/such/dir/out.txt";
  CHECK_THROWS_AS(cli::emit("x", cfg), IoError);
}
