#include "decaf/io.hpp"

#include "decaf/rational.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace decaf {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

// Splits text into lines with `#` comments removed, keeping 1-based numbers.
struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

long long parse_int(const Line& line, const Token& t, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw ParseError(line.number, t.column, std::string("expected integer ") + what + ", got '" +
                                                std::string(t.text) + "'");
  return value;
}

Rational parse_weight(const Line& line, const Token& t) {
  Rational w;
  if (!parse_rational(t.text, w))
    throw ParseError(line.number, t.column, "malformed weight '" + std::string(t.text) + "'");
  return w;
}

void expect_arity(const Line& line, std::size_t min, std::size_t max, const char* what) {
  if (line.tokens.size() < min || line.tokens.size() > max) {
    int col = line.tokens.size() > max ? line.tokens[max].column : line.tokens.back().column;
    throw ParseError(line.number, col, std::string("wrong number of fields for ") + what);
  }
}

Clique parse_clique_line(const Line& line) {
  expect_arity(line, 2, static_cast<std::size_t>(-1), "clique line");
  Clique c;
  c.weight = parse_weight(line, line.tokens[1]);
  for (std::size_t t = 2; t < line.tokens.size(); ++t) {
    long long v = parse_int(line, line.tokens[t], "vertex id");
    if (v < 0 || v > std::numeric_limits<int>::max())
      throw ParseError(line.number, line.tokens[t].column, "vertex id out of range");
    c.members.push_back(static_cast<VertexId>(v));
  }
  return c;
}

std::string clique_line(const Clique& c) {
  std::string s = "c " + format_rational(c.weight);
  for (VertexId v : c.members) s += " " + std::to_string(v);
  return s;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

// ---------------------------------------------------------------- instance

InstanceFile parse_instance(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "missing header 'ewcd 1 <n> <m>'");
  const Line& head = lines.front();
  if (head.tokens[0].text != "ewcd")
    throw ParseError(head.number, head.tokens[0].column, "expected header 'ewcd 1 <n> <m>'");
  expect_arity(head, 4, 4, "header");
  if (head.tokens[1].text != "1")
    throw ParseError(head.number, head.tokens[1].column,
                     "unsupported format version '" + std::string(head.tokens[1].text) + "'");
  long long n = parse_int(head, head.tokens[2], "vertex count");
  long long m = parse_int(head, head.tokens[3], "edge count");
  if (n < 0 || n > std::numeric_limits<int>::max())
    throw ParseError(head.number, head.tokens[2].column, "vertex count out of range");
  if (m < 0) throw ParseError(head.number, head.tokens[3].column, "negative edge count");

  std::vector<Edge> edges;
  Annotations annotations;
  std::set<std::pair<VertexId, VertexId>> seen;
  auto vertex = [&](const Line& line, const Token& t) {
    long long v = parse_int(line, t, "vertex id");
    if (v < 0 || v >= n)
      throw ParseError(line.number, t.column,
                       "vertex " + std::string(t.text) + " outside [0," + std::to_string(n) + ")");
    return static_cast<VertexId>(v);
  };
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    std::string_view kind = line.tokens[0].text;
    if (kind == "e") {
      expect_arity(line, 4, 4, "edge line");
      VertexId u = vertex(line, line.tokens[1]);
      VertexId v = vertex(line, line.tokens[2]);
      if (u == v) throw ParseError(line.number, line.tokens[2].column, "self-loop at vertex " + std::to_string(u));
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw ParseError(line.number, line.tokens[1].column,
                         "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
      Rational w = parse_weight(line, line.tokens[3]);
      if (w <= 0) throw ParseError(line.number, line.tokens[3].column, "edge weight must be positive");
      edges.push_back({u, v, std::move(w)});
    } else if (kind == "a") {
      expect_arity(line, 3, 3, "annotation line");
      VertexId v = vertex(line, line.tokens[1]);
      Rational w = parse_weight(line, line.tokens[2]);
      if (w < 0) throw ParseError(line.number, line.tokens[2].column, "negative vertex weight");
      if (!annotations.emplace(v, std::move(w)).second)
        throw ParseError(line.number, line.tokens[1].column, "duplicate annotation");
    } else {
      throw ParseError(line.number, line.tokens[0].column,
                       "unknown record '" + std::string(kind) + "'");
    }
  }
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(head.number, head.tokens[3].column,
                     "header announces " + std::to_string(m) + " edges, file has " +
                         std::to_string(edges.size()));
  return {WeightedGraph(static_cast<int>(n), std::move(edges)), std::move(annotations)};
}

std::string write_instance(const WeightedGraph& g, const Annotations& annotations) {
  std::ostringstream out;
  out << "ewcd 1 " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << format_rational(e.w) << '\n';
  for (const auto& [v, w] : annotations) out << "a " << v << ' ' << format_rational(w) << '\n';
  return out.str();
}

// ---------------------------------------------------------------- solution

void sort_cliques(std::vector<Clique>& cliques) {
  for (Clique& c : cliques) std::sort(c.members.begin(), c.members.end());
  std::stable_sort(cliques.begin(), cliques.end(), [](const Clique& a, const Clique& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return a.members < b.members;
  });
}

std::vector<Clique> solution_cliques(const Decomposition& d, bool annotated) {
  std::vector<Clique> out;
  for (Clique& c : d.cliques())
    if (c.members.size() >= (annotated ? 1u : 2u)) out.push_back(std::move(c));
  sort_cliques(out);
  return out;
}

std::vector<std::pair<std::string, std::string>> stats_lines(const SolveStats& s) {
  return {{"lp_runs", std::to_string(s.lp_runs)},
          {"signatures_tested", std::to_string(s.signatures_tested)},
          {"backtracks", std::to_string(s.backtracks)},
          {"max_basis_rows", std::to_string(s.max_basis_rows)},
          {"wall_ms", format_double(s.wall_ms)}};
}

std::string write_solution(const SolutionFile& s) {
  std::string out = to_string(s.outcome) + "\n";
  for (const Clique& c : s.cliques) out += clique_line(c) + "\n";
  for (const auto& [key, value] : s.stats) out += "s " + key + " " + value + "\n";
  return out;
}

SolutionFile parse_solution(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "missing outcome line");
  SolutionFile s;
  const Line& head = lines.front();
  expect_arity(head, 1, 1, "outcome line");
  std::string_view o = head.tokens[0].text;
  if (o == "yes") s.outcome = SolveOutcome::kYes;
  else if (o == "no") s.outcome = SolveOutcome::kNo;
  else if (o == "timeout") s.outcome = SolveOutcome::kTimeout;
  else throw ParseError(head.number, head.tokens[0].column, "expected yes, no or timeout");
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    std::string_view kind = line.tokens[0].text;
    if (kind == "c") {
      if (s.outcome != SolveOutcome::kYes)
        throw ParseError(line.number, 1, "clique line in a '" + std::string(o) + "' solution");
      if (!s.stats.empty()) throw ParseError(line.number, 1, "clique line after stats");
      s.cliques.push_back(parse_clique_line(line));
    } else if (kind == "s") {
      expect_arity(line, 3, 3, "stats line");
      s.stats.emplace_back(std::string(line.tokens[1].text), std::string(line.tokens[2].text));
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown record '" + std::string(kind) + "'");
    }
  }
  return s;
}

// ------------------------------------------------------------------- truth

std::string write_truth(const TruthFile& t) {
  std::string out = "truth 1\nk " + std::to_string(t.k_true) + "\n";
  if (!t.k_in.empty()) {
    out += "kin";
    for (int k : t.k_in) out += " " + std::to_string(k);
    out += "\n";
  }
  for (const Clique& c : t.cliques) out += clique_line(c) + "\n";
  return out;
}

TruthFile parse_truth(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0].text != "truth")
    throw ParseError(1, 1, "expected header 'truth 1'");
  expect_arity(lines[0], 2, 2, "header");
  if (lines[0].tokens[1].text != "1") throw ParseError(lines[0].number, lines[0].tokens[1].column, "unsupported version");
  TruthFile t;
  bool have_k = false;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    std::string_view kind = line.tokens[0].text;
    if (kind == "k") {
      expect_arity(line, 2, 2, "k line");
      t.k_true = static_cast<int>(parse_int(line, line.tokens[1], "k"));
      have_k = true;
    } else if (kind == "kin") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        t.k_in.push_back(static_cast<int>(parse_int(line, line.tokens[i], "k_in")));
    } else if (kind == "c") {
      t.cliques.push_back(parse_clique_line(line));
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown record '" + std::string(kind) + "'");
    }
  }
  if (!have_k) throw ParseError(lines.back().number, 1, "missing 'k' line");
  return t;
}

// ------------------------------------------------------------------- trace

std::string write_trace(const KernelTrace& trace) {
  std::ostringstream out;
  out << "trace 1 " << trace.original_size << ' ' << trace.vertex_map.size() << '\n';
  for (std::size_t t = 0; t < trace.vertex_map.size(); ++t) out << "m " << t << ' ' << trace.vertex_map[t] << '\n';
  for (const ReductionRecord& r : trace.removed) {
    out << "r " << r.representative << ' ' << format_rational(r.weight);
    for (VertexId v : r.removed) out << ' ' << v;
    out << '\n';
  }
  if (!trace.isolated_removed.empty()) {
    out << 'i';
    for (VertexId v : trace.isolated_removed) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

// --------------------------------------------------------------------- csv

const std::vector<std::string>& bench_csv_header() {
  static const std::vector<std::string> header = {
      "config",   "instance_id", "n",       "m",       "k_true",  "k_in",
      "kernel_variant", "n_kernel", "ordering", "srules", "symmetry", "lp_runs",
      "signatures_tested", "backtracks", "outcome", "expected", "wall_ms"};
  return header;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv(std::string_view line, int line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(line_no, static_cast<int>(line.size()), "unterminated quote");
  return fields;
}

template <class T>
T csv_number(const std::string& s, int line_no, int column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line_no, column, "malformed number '" + s + "'");
  return value;
}

}  // namespace

std::string bench_csv_row(const BenchRecord& r) {
  std::vector<std::string> f = {csv_field(r.config),
                                csv_field(r.instance_id),
                                std::to_string(r.n),
                                std::to_string(r.m),
                                std::to_string(r.k_true),
                                std::to_string(r.k_in),
                                csv_field(r.kernel_variant),
                                std::to_string(r.n_kernel),
                                csv_field(r.ordering),
                                csv_field(r.srules),
                                r.symmetry ? "1" : "0",
                                std::to_string(r.lp_runs),
                                std::to_string(r.signatures_tested),
                                std::to_string(r.backtracks),
                                csv_field(r.outcome),
                                csv_field(r.expected),
                                format_double(r.wall_ms)};
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + f[i];
  return line;
}

std::string write_bench_csv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchCsvVersion);
  out += '\n';
  const auto& h = bench_csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + h[i];
  out += '\n';
  for (const BenchRecord& r : records) out += bench_csv_row(r) + '\n';
  return out;
}

std::vector<BenchRecord> parse_bench_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty() || lines[0] != kBenchCsvVersion)
    throw ParseError(1, 1, "expected '" + std::string(kBenchCsvVersion) + "'");
  if (lines.size() < 2 || split_csv(lines[1], 2) != bench_csv_header())
    throw ParseError(2, 1, "unexpected CSV header");
  std::vector<BenchRecord> out;
  for (std::size_t l = 2; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    const int no = static_cast<int>(l) + 1;
    std::vector<std::string> f = split_csv(lines[l], no);
    if (f.size() != bench_csv_header().size())
      throw ParseError(no, 1, "expected " + std::to_string(bench_csv_header().size()) + " fields");
    BenchRecord r;
    int c = 0;
    r.config = f[c++];
    r.instance_id = f[c++];
    r.n = csv_number<int>(f[c], no, c + 1), ++c;
    r.m = csv_number<int>(f[c], no, c + 1), ++c;
    r.k_true = csv_number<int>(f[c], no, c + 1), ++c;
    r.k_in = csv_number<int>(f[c], no, c + 1), ++c;
    r.kernel_variant = f[c++];
    r.n_kernel = csv_number<int>(f[c], no, c + 1), ++c;
    r.ordering = f[c++];
    r.srules = f[c++];
    if (f[c] != "0" && f[c] != "1") throw ParseError(no, c + 1, "symmetry must be 0 or 1");
    r.symmetry = f[c++] == "1";
    r.lp_runs = csv_number<long long>(f[c], no, c + 1), ++c;
    r.signatures_tested = csv_number<long long>(f[c], no, c + 1), ++c;
    r.backtracks = csv_number<long long>(f[c], no, c + 1), ++c;
    r.outcome = f[c++];
    r.expected = f[c++];
    r.wall_ms = csv_number<double>(f[c], no, c + 1), ++c;
    out.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------------- files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace decaf
