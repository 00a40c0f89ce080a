#include "stabsdp/sdpa_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace stabsdp {

namespace {

// Shortest decimal form that reads back to the same double; integral values
// get a trailing ".0" so they stay recognizable as reals.
std::string fmt_num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  (void)ec;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

struct Line {
  std::string text;
  int number = 0;
};

// Splits into whitespace tokens; braces, parens and commas count as spaces
// (the sizes/objective lines of the format allow them as decoration).
std::vector<std::string> tokens_of(const std::string& text) {
  std::string cleaned = text;
  for (char& ch : cleaned)
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  std::istringstream ls(cleaned);
  std::vector<std::string> out;
  std::string tok;
  while (ls >> tok) out.push_back(tok);
  return out;
}

long parse_int(const std::string& tok, int lineno, const char* what) {
  const char* begin = tok.c_str();
  if (*begin == '+') ++begin;
  long v = 0;
  auto [ptr, ec] = std::from_chars(begin, tok.c_str() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.c_str() + tok.size())
    throw ParseError(std::string("expected an integer ") + what + ", got '" + tok + "'",
                     lineno);
  return v;
}

double parse_real(const std::string& tok, int lineno, const char* what) {
  const char* begin = tok.c_str();
  if (*begin == '+') ++begin;
  double v = 0;
  auto [ptr, ec] = std::from_chars(begin, tok.c_str() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.c_str() + tok.size())
    throw ParseError(std::string("expected a number ") + what + ", got '" + tok + "'",
                     lineno);
  return v;
}

}  // namespace

std::string export_sdpa(const BlockSDP& p) {
  p.validate();
  const int nblocks = static_cast<int>(p.blocks.size());

  // trailing run of 1x1 blocks, merged when at least two long
  int run_start = nblocks;
  while (run_start > 0 && p.blocks[run_start - 1].order == 1) --run_start;
  const bool merge = nblocks - run_start >= 2;
  const int out_blocks = merge ? run_start + 1 : nblocks;

  std::ostringstream os;
  os << p.num_vars << "\n" << out_blocks << "\n";
  for (int b = 0; b < (merge ? run_start : nblocks); ++b)
    os << p.blocks[b].order << (b + 1 < out_blocks ? " " : "");
  if (merge) os << -(nblocks - run_start);
  os << "\n";
  for (int j = 0; j < p.num_vars; ++j)
    os << fmt_num(p.objective[j]) << (j + 1 < p.num_vars ? " " : "");
  os << "\n";

  // entry position of a block in the written file
  auto placed = [&](int b) -> std::pair<int, int> {  // (block number, row offset)
    if (!merge || b < run_start) return {b + 1, 0};
    return {run_start + 1, b - run_start};
  };

  auto write_matrix = [&](int j, int b, const SparseSym& mat, double sign) {
    auto [blk, off] = placed(b);
    for (const auto& e : mat.entries)  // stored row >= col; file wants upper
      os << j << " " << blk << " " << off + e.col + 1 << " " << off + e.row + 1 << " "
         << fmt_num(sign * e.value) << "\n";
  };

  for (int b = 0; b < nblocks; ++b) write_matrix(0, b, p.blocks[b].constant, 1.0);
  for (int j = 1; j <= p.num_vars; ++j)
    for (int b = 0; b < nblocks; ++b)
      for (const auto& [var, mat] : p.blocks[b].coeffs)
        if (var == j - 1) write_matrix(j, b, mat, -1.0);
  return os.str();
}

void export_sdpa_file(const BlockSDP& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << export_sdpa(p);
  if (!out) throw IoError("write failed: " + path);
}

BlockSDP import_sdpa(std::istream& in) {
  std::vector<Line> lines;
  {
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      size_t first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (raw[first] == '*' || raw[first] == '"') continue;
      lines.push_back({raw, lineno});
    }
  }
  size_t cursor = 0;
  auto next_line = [&](const char* what) -> const Line& {
    if (cursor >= lines.size())
      throw ParseError(std::string("missing ") + what,
                       lines.empty() ? 1 : lines.back().number);
    return lines[cursor++];
  };

  const Line& lm = next_line("variable count line");
  auto toks = tokens_of(lm.text);
  long m = parse_int(toks.at(0), lm.number, "variable count");
  if (m < 0) throw ValidationError("line " + std::to_string(lm.number) +
                                   ": negative variable count");

  const Line& lb = next_line("block count line");
  toks = tokens_of(lb.text);
  long nblocks = parse_int(toks.at(0), lb.number, "block count");
  if (nblocks <= 0)
    throw ValidationError("line " + std::to_string(lb.number) + ": block count must be positive");

  const Line& ls = next_line("block sizes line");
  toks = tokens_of(ls.text);
  if (static_cast<long>(toks.size()) < nblocks)
    throw ParseError("expected " + std::to_string(nblocks) + " block sizes", ls.number);
  std::vector<long> sizes(nblocks);
  for (long b = 0; b < nblocks; ++b) {
    sizes[b] = parse_int(toks[b], ls.number, "block size");
    if (sizes[b] == 0)
      throw ValidationError("line " + std::to_string(ls.number) + ": block size zero");
  }

  const Line& lo = next_line("objective line");
  toks = tokens_of(lo.text);
  if (static_cast<long>(toks.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " objective values, got " +
                         std::to_string(toks.size()),
                     lo.number);

  BlockSDP p;
  p.num_vars = static_cast<int>(m);
  p.objective.resize(m);
  for (long j = 0; j < m; ++j)
    p.objective[j] = parse_real(toks[j], lo.number, "objective value");

  // expand declared blocks: a negative size -k stands for k 1x1 blocks
  std::vector<int> first_expanded(nblocks);
  for (long b = 0; b < nblocks; ++b) {
    first_expanded[b] = static_cast<int>(p.blocks.size());
    if (sizes[b] > 0) {
      p.blocks.push_back(SDPBlock{});
      p.blocks.back().order = static_cast<int>(sizes[b]);
    } else {
      for (long k = 0; k < -sizes[b]; ++k) {
        p.blocks.push_back(SDPBlock{});
        p.blocks.back().order = 1;
      }
    }
  }

  // coefficient staging: per (expanded block, variable) sparse matrices
  std::vector<std::vector<SparseSym>> coef(p.blocks.size());
  for (auto& v : coef) v.assign(m + 1, SparseSym{});

  for (; cursor < lines.size(); ++cursor) {
    const Line& le = lines[cursor];
    auto et = tokens_of(le.text);
    if (et.size() != 5)
      throw ParseError("expected 'j b r c v' with five fields, got " +
                           std::to_string(et.size()),
                       le.number);
    long j = parse_int(et[0], le.number, "variable index");
    long b = parse_int(et[1], le.number, "block index");
    long r = parse_int(et[2], le.number, "row index");
    long cc = parse_int(et[3], le.number, "column index");
    double v = parse_real(et[4], le.number, "entry value");
    if (j < 0 || j > m)
      throw ValidationError("line " + std::to_string(le.number) + ": variable index " +
                            std::to_string(j) + " outside [0, " + std::to_string(m) + "]");
    if (b < 1 || b > nblocks)
      throw ValidationError("line " + std::to_string(le.number) + ": block index " +
                            std::to_string(b) + " outside [1, " + std::to_string(nblocks) +
                            "]");
    long dim = sizes[b - 1] > 0 ? sizes[b - 1] : -sizes[b - 1];
    if (r < 1 || r > dim || cc < 1 || cc > dim)
      throw ValidationError("line " + std::to_string(le.number) +
                            ": entry index outside block of size " + std::to_string(dim));
    int target;
    int rr, ccc;
    if (sizes[b - 1] > 0) {
      target = first_expanded[b - 1];
      rr = static_cast<int>(r - 1);
      ccc = static_cast<int>(cc - 1);
    } else {
      if (r != cc)
        throw ValidationError("line " + std::to_string(le.number) +
                              ": off-diagonal entry in a diagonal block");
      target = first_expanded[b - 1] + static_cast<int>(r - 1);
      rr = ccc = 0;
    }
    coef[target][j].add(rr, ccc, j == 0 ? v : -v);
  }

  for (size_t blk = 0; blk < p.blocks.size(); ++blk) {
    coef[blk][0].canonicalize();
    p.blocks[blk].constant = std::move(coef[blk][0]);
    for (long j = 1; j <= m; ++j) {
      coef[blk][j].canonicalize();
      if (!coef[blk][j].empty())
        p.blocks[blk].coeffs.emplace_back(static_cast<int>(j - 1), std::move(coef[blk][j]));
    }
  }
  p.validate();
  return p;
}

BlockSDP import_sdpa(const std::string& text) {
  std::istringstream in(text);
  return import_sdpa(in);
}

BlockSDP import_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return import_sdpa(in);
}

}  // namespace stabsdp
