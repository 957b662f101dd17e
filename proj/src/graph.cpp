#include "labelprop/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

namespace labelprop {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary CSR I/O assumes a little-endian host");

constexpr char kCsrMagic[8] = {'L', 'P', 'C', 'S', 'R', 'B', 'I', 'N'};
constexpr std::uint32_t kCsrVersion = 1;

void split_tokens(const std::string& line, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line, start, i - start);
  }
}

bool parse_int(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_real(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_skippable(const std::string& line, char extra_comment = '#') {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '%' || ch == extra_comment;
  }
  return true;  // blank
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

void check_weight(double w, std::size_t lineno) {
  if (!std::isfinite(w)) {
    throw ValidationError("line " + std::to_string(lineno) +
                          ": non-finite edge weight");
  }
  if (w < 0) {
    throw ValidationError("line " + std::to_string(lineno) +
                          ": negative edge weight " + std::to_string(w));
  }
}

VertexId checked_vertex(long long id, long long base, std::size_t lineno) {
  if (id < base) {
    throw BoundsError("line " + std::to_string(lineno) + ": vertex id " +
                      std::to_string(id) + " below the first valid id " +
                      std::to_string(base));
  }
  const long long shifted = id - base;
  if (shifted >= std::numeric_limits<VertexId>::max()) {
    throw BoundsError("line " + std::to_string(lineno) + ": vertex id " +
                      std::to_string(id) + " exceeds the supported range");
  }
  return static_cast<VertexId>(shifted);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void write_raw(std::ostream& out, const void* data, std::size_t bytes) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
}

void read_raw(std::istream& in, void* data, std::size_t bytes) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    throw ValidationError("truncated binary CSR stream");
  }
}

}  // namespace

Graph build_graph(VertexId num_vertices, std::span<const Arc> arcs) {
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    if (a.source >= num_vertices || a.target >= num_vertices) {
      throw BoundsError("arc " + std::to_string(k) + " endpoint (" +
                        std::to_string(a.source) + ", " +
                        std::to_string(a.target) +
                        ") outside vertex range [0, " +
                        std::to_string(num_vertices) + ")");
    }
    if (!std::isfinite(a.weight) || a.weight < 0) {
      throw ValidationError("arc " + std::to_string(k) +
                            " has a negative or non-finite weight");
    }
  }

  Graph g;
  g.offsets.assign(static_cast<std::size_t>(num_vertices) + 1, 0);
  for (const Arc& a : arcs) ++g.offsets[a.source + 1];
  for (VertexId v = 0; v < num_vertices; ++v) g.offsets[v + 1] += g.offsets[v];

  g.targets.resize(arcs.size());
  g.weights.resize(arcs.size());
  std::vector<EdgeId> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const Arc& a : arcs) {
    const EdgeId slot = cursor[a.source]++;
    g.targets[slot] = a.target;
    g.weights[slot] = a.weight;
  }

  // Cached sums use a fixed order (arc order within a vertex, then ascending
  // vertex id) so that revalidation and binary round trips reproduce them
  // bit-exactly.
  g.weighted_degrees.assign(num_vertices, 0.0);
  for (VertexId v = 0; v < num_vertices; ++v) {
    Weight sum = 0.0;
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) sum += g.weights[k];
    g.weighted_degrees[v] = sum;
  }
  g.total_weight_2m = 0.0;
  for (VertexId v = 0; v < num_vertices; ++v) {
    g.total_weight_2m += g.weighted_degrees[v];
  }
  return g;
}

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<Arc> arcs;
  std::vector<std::string> toks;
  std::string line;
  std::size_t lineno = 0;
  long long max_id = -1;
  const long long base = options.one_indexed ? 1 : 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    split_tokens(line, toks);
    if (toks.size() < 2 || toks.size() > 3) {
      throw ParseError(lineno, "expected 'u v' or 'u v w', got " +
                                   std::to_string(toks.size()) + " fields");
    }
    long long u_raw = 0, v_raw = 0;
    if (!parse_int(toks[0], u_raw) || !parse_int(toks[1], v_raw)) {
      throw ParseError(lineno, "vertex ids must be integers");
    }
    double w = 1.0;
    if (options.weighted && toks.size() == 3) {
      if (!parse_real(toks[2], w)) {
        throw ParseError(lineno, "edge weight must be a number");
      }
    }
    check_weight(w, lineno);
    const VertexId u = checked_vertex(u_raw, base, lineno);
    const VertexId v = checked_vertex(v_raw, base, lineno);
    arcs.push_back({u, v, w});
    if (options.symmetrize && u != v) arcs.push_back({v, u, w});
    max_id = std::max(max_id, std::max<long long>(u, v));
  }
  return build_graph(static_cast<VertexId>(max_id + 1), arcs);
}

Graph load_edge_list_file(const std::string& path,
                          const EdgeListOptions& options) {
  auto in = open_input(path);
  return load_edge_list(in, options);
}

Graph load_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw FormatError("empty MatrixMarket stream");
  ++lineno;

  std::vector<std::string> toks;
  split_tokens(line, toks);
  if (toks.size() != 5 || lower(toks[0]) != "%%matrixmarket") {
    throw FormatError(
        "missing '%%MatrixMarket object format field symmetry' banner");
  }
  const std::string object = lower(toks[1]);
  const std::string format = lower(toks[2]);
  const std::string field = lower(toks[3]);
  const std::string symmetry = lower(toks[4]);
  if (object != "matrix") {
    throw FormatError("unsupported MatrixMarket object '" + object + "'");
  }
  if (format != "coordinate") {
    throw FormatError("unsupported MatrixMarket format '" + format +
                      "' (only coordinate is accepted)");
  }
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") {
    throw FormatError("unsupported MatrixMarket field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw FormatError("unsupported MatrixMarket symmetry '" + symmetry + "'");
  }

  // Size line: first non-comment, non-blank line after the banner.
  long long rows = -1, cols = -1, declared = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_skippable(line, '%')) continue;
    split_tokens(line, toks);
    if (toks.size() != 3 || !parse_int(toks[0], rows) ||
        !parse_int(toks[1], cols) || !parse_int(toks[2], declared) ||
        rows < 0 || cols < 0 || declared < 0) {
      throw ParseError(lineno, "expected size line 'rows cols entries'");
    }
    break;
  }
  if (rows < 0) throw FormatError("missing MatrixMarket size line");
  const long long dim = std::max(rows, cols);
  if (dim >= std::numeric_limits<VertexId>::max()) {
    throw BoundsError("matrix dimension " + std::to_string(dim) +
                      " exceeds the supported vertex range");
  }

  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(declared) * 2);
  long long seen = 0;
  while (seen < declared && std::getline(in, line)) {
    ++lineno;
    if (is_skippable(line, '%')) continue;
    split_tokens(line, toks);
    const std::size_t expected = pattern ? 2 : 3;
    if (toks.size() != expected) {
      throw ParseError(lineno, "expected " + std::to_string(expected) +
                                   " fields per entry, got " +
                                   std::to_string(toks.size()));
    }
    long long u_raw = 0, v_raw = 0;
    if (!parse_int(toks[0], u_raw) || !parse_int(toks[1], v_raw)) {
      throw ParseError(lineno, "entry indices must be integers");
    }
    if (u_raw < 1 || u_raw > rows || v_raw < 1 || v_raw > cols) {
      throw BoundsError("line " + std::to_string(lineno) + ": entry (" +
                        std::to_string(u_raw) + ", " + std::to_string(v_raw) +
                        ") outside the declared " + std::to_string(rows) +
                        "x" + std::to_string(cols) + " shape");
    }
    double w = 1.0;
    if (!pattern) {
      if (!parse_real(toks[2], w)) {
        throw ParseError(lineno, "entry value must be a number");
      }
      check_weight(w, lineno);
    }
    const VertexId u = static_cast<VertexId>(u_raw - 1);
    const VertexId v = static_cast<VertexId>(v_raw - 1);
    arcs.push_back({u, v, w});
    // Symmetric storage keeps one triangle, so off-diagonal entries expand to
    // both arcs; general storage is symmetrized the same way, keeping any
    // duplicates the file carries.
    if (u != v) arcs.push_back({v, u, w});
    ++seen;
  }
  if (seen < declared) {
    throw ValidationError("header declares " + std::to_string(declared) +
                          " entries but the file holds " +
                          std::to_string(seen));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!is_skippable(line, '%')) {
      throw ValidationError("line " + std::to_string(lineno) +
                            ": data beyond the declared " +
                            std::to_string(declared) + " entries");
    }
  }
  return build_graph(static_cast<VertexId>(dim), arcs);
}

Graph load_matrix_market_file(const std::string& path) {
  auto in = open_input(path);
  return load_matrix_market(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  std::ostringstream buf;
  buf.precision(std::numeric_limits<double>::max_digits10);
  const VertexId n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      buf << v << ' ' << g.targets[k] << ' ' << g.weights[k] << '\n';
    }
  }
  out << buf.str();
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  write_edge_list(g, out);
}

void write_matrix_market(const Graph& g, std::ostream& out) {
  const VertexId n = g.num_vertices();
  bool unit = true;
  for (Weight w : g.weights) {
    if (w != 1.0) {
      unit = false;
      break;
    }
  }
  // Count lower-triangle entries (source >= target): one per undirected edge,
  // one per self-loop.
  EdgeId entries = 0;
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      if (g.targets[k] <= v) ++entries;
    }
  }
  std::ostringstream buf;
  buf.precision(std::numeric_limits<double>::max_digits10);
  buf << "%%MatrixMarket matrix coordinate " << (unit ? "pattern" : "real")
      << " symmetric\n";
  buf << n << ' ' << n << ' ' << entries << '\n';
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      if (g.targets[k] > v) continue;
      buf << (v + 1) << ' ' << (g.targets[k] + 1);
      if (!unit) buf << ' ' << g.weights[k];
      buf << '\n';
    }
  }
  out << buf.str();
}

void write_matrix_market_file(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  write_matrix_market(g, out);
}

void save_csr_binary(const Graph& g, std::ostream& out) {
  const std::uint64_t n = g.num_vertices();
  const std::uint64_t m = g.num_arcs();
  write_raw(out, kCsrMagic, sizeof kCsrMagic);
  write_raw(out, &kCsrVersion, sizeof kCsrVersion);
  write_raw(out, &n, sizeof n);
  write_raw(out, &m, sizeof m);
  write_raw(out, g.offsets.data(), g.offsets.size() * sizeof(EdgeId));
  write_raw(out, g.targets.data(), g.targets.size() * sizeof(VertexId));
  write_raw(out, g.weights.data(), g.weights.size() * sizeof(Weight));
}

void save_csr_binary_file(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  save_csr_binary(g, out);
  if (!out) throw IoError("failed writing binary CSR file: " + path);
}

Graph load_csr_binary(std::istream& in) {
  char magic[sizeof kCsrMagic];
  read_raw(in, magic, sizeof magic);
  if (std::memcmp(magic, kCsrMagic, sizeof magic) != 0) {
    throw FormatError("not a binary CSR stream (bad magic bytes)");
  }
  std::uint32_t version = 0;
  read_raw(in, &version, sizeof version);
  if (version != kCsrVersion) {
    throw FormatError("unsupported binary CSR version " +
                      std::to_string(version));
  }
  std::uint64_t n = 0, m = 0;
  read_raw(in, &n, sizeof n);
  read_raw(in, &m, sizeof m);
  if (n >= std::numeric_limits<VertexId>::max()) {
    throw ValidationError("binary CSR vertex count out of range");
  }

  Graph g;
  g.offsets.resize(n + 1);
  g.targets.resize(m);
  g.weights.resize(m);
  read_raw(in, g.offsets.data(), g.offsets.size() * sizeof(EdgeId));
  read_raw(in, g.targets.data(), g.targets.size() * sizeof(VertexId));
  read_raw(in, g.weights.data(), g.weights.size() * sizeof(Weight));
  if (g.offsets.front() != 0 || g.offsets.back() != m) {
    throw ValidationError("binary CSR offsets disagree with the arc count");
  }
  for (std::size_t v = 0; v + 1 < g.offsets.size(); ++v) {
    if (g.offsets[v] > g.offsets[v + 1]) {
      throw ValidationError("binary CSR offsets are not monotone");
    }
  }
  for (VertexId t : g.targets) {
    if (t >= n) throw ValidationError("binary CSR target out of range");
  }

  // Recompute the cached sums in the canonical order; see build_graph.
  g.weighted_degrees.assign(n, 0.0);
  for (std::uint64_t v = 0; v < n; ++v) {
    Weight sum = 0.0;
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) sum += g.weights[k];
    g.weighted_degrees[v] = sum;
  }
  g.total_weight_2m = 0.0;
  for (std::uint64_t v = 0; v < n; ++v) {
    g.total_weight_2m += g.weighted_degrees[v];
  }
  return g;
}

Graph load_csr_binary_file(const std::string& path) {
  auto in = open_input(path);
  return load_csr_binary(in);
}

std::vector<Violation> validate(const Graph& g) {
  std::vector<Violation> out;
  if (g.offsets.empty()) {
    out.push_back({"offsets", 0, "offsets array is empty"});
    return out;
  }
  const VertexId n = g.num_vertices();
  const EdgeId m = g.num_arcs();
  if (g.offsets.front() != 0) {
    out.push_back({"offsets", 0, "offsets[0] must be 0"});
  }
  for (VertexId v = 0; v < n; ++v) {
    if (g.offsets[v] > g.offsets[v + 1]) {
      out.push_back({"offsets", v, "offsets must be non-decreasing"});
      return out;  // ranges below would be nonsense
    }
  }
  if (g.offsets.back() != m) {
    out.push_back({"offsets", n, "offsets[N] must equal the arc count"});
    return out;
  }
  if (g.weights.size() != m) {
    out.push_back({"weights", 0, "weights and targets lengths differ"});
    return out;
  }
  if (g.weighted_degrees.size() != n) {
    out.push_back({"weighted_degrees", 0,
                   "weighted_degrees length differs from the vertex count"});
    return out;
  }

  for (EdgeId k = 0; k < m; ++k) {
    if (g.targets[k] >= n) {
      out.push_back({"target_range", k,
                     "arc target " + std::to_string(g.targets[k]) +
                         " outside [0, " + std::to_string(n) + ")"});
    }
    if (!std::isfinite(g.weights[k]) || g.weights[k] < 0) {
      out.push_back({"weight_range", k, "arc weight negative or non-finite"});
    }
  }
  if (!out.empty()) return out;

  for (VertexId v = 0; v < n; ++v) {
    Weight sum = 0.0;
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) sum += g.weights[k];
    if (sum != g.weighted_degrees[v]) {
      out.push_back({"weighted_degree", v,
                     "cached weighted degree differs from the arc-weight sum"});
    }
  }
  Weight total = 0.0;
  for (VertexId v = 0; v < n; ++v) total += g.weighted_degrees[v];
  if (total != g.total_weight_2m) {
    out.push_back({"total_weight", 0,
                   "cached total weight differs from the degree sum"});
  }

  // Symmetry: the multiset of (source, target, weight) triples must equal its
  // transpose. Sort both sides with original arc indexes attached so the
  // first mismatch can name a concrete arc.
  using Entry = std::tuple<VertexId, VertexId, Weight, EdgeId>;
  std::vector<Entry> forward, reverse;
  forward.reserve(m);
  reverse.reserve(m);
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      forward.emplace_back(v, g.targets[k], g.weights[k], k);
      reverse.emplace_back(g.targets[k], v, g.weights[k], k);
    }
  }
  auto key_less = [](const Entry& a, const Entry& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
  };
  std::sort(forward.begin(), forward.end(), key_less);
  std::sort(reverse.begin(), reverse.end(), key_less);
  for (EdgeId k = 0; k < m; ++k) {
    const bool same =
        std::get<0>(forward[k]) == std::get<0>(reverse[k]) &&
        std::get<1>(forward[k]) == std::get<1>(reverse[k]) &&
        std::get<2>(forward[k]) == std::get<2>(reverse[k]);
    if (!same) {
      out.push_back({"symmetry", std::get<3>(forward[k]),
                     "arc (" + std::to_string(std::get<0>(forward[k])) + ", " +
                         std::to_string(std::get<1>(forward[k])) +
                         ") has no matching reverse arc of equal weight"});
      break;
    }
  }
  return out;
}

}  // namespace labelprop
