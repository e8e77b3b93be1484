#include "atcurv/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "atcurv/errors.hpp"

namespace atcurv {

namespace {

constexpr long kMaxVertices = 1'000'000;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_long(const std::string& s, const char* what) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw InvalidSpec(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

}  // namespace

int AntitreeSpec::size_of(int generation) const {
  const int idx = generation - first_generation;
  if (idx < 0 || idx >= generation_count()) return 0;
  return sizes[static_cast<std::size_t>(idx)];
}

void AntitreeSpec::validate() const {
  if (sizes.empty()) throw InvalidSpec("antitree spec has no generations");
  if (first_generation < 1) throw InvalidSpec("first generation index must be >= 1");
  long total = 0;
  for (int a : sizes) {
    if (a < 1) throw InvalidSpec("every generation size must be >= 1");
    total += a;
  }
  if (total > kMaxVertices) throw InvalidSpec("antitree too large");
}

AntitreeSpec parse_antitree_spec(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw InvalidSpec("empty antitree spec");
  AntitreeSpec spec;
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    for (const auto& part : split(s, ',')) spec.sizes.push_back(static_cast<int>(parse_long(part, "generation size")));
    spec.validate();
    return spec;
  }

  const std::string family = trim(std::string_view(s).substr(0, colon));
  const auto args = split(std::string_view(s).substr(colon + 1), ',');
  std::vector<long> nums;
  for (const auto& a : args) nums.push_back(parse_long(a, "family parameter"));
  spec.truncated = true;

  auto count = [&](std::size_t expected) {
    if (nums.size() != expected) throw InvalidSpec("family '" + family + "' expects " + std::to_string(expected) + " parameters");
    if (nums.back() < 1) throw InvalidSpec("generation count must be >= 1");
    return nums.back();
  };

  if (family == "identity") {
    const long n = count(1);
    for (long k = 1; k <= n; ++k) spec.sizes.push_back(static_cast<int>(k));
  } else if (family == "linear") {
    const long n = count(2);
    const long t = nums[0];
    if (t < 0) throw InvalidSpec("linear growth rate must be >= 0");
    for (long k = 1; k <= n; ++k) spec.sizes.push_back(static_cast<int>(1 + (k - 1) * t));
  } else if (family == "exp") {
    const long n = count(2);
    const long r = nums[0];
    if (r < 1) throw InvalidSpec("exponential base must be >= 1");
    long a = 1;
    for (long k = 1; k <= n; ++k) {
      if (a > kMaxVertices) throw InvalidSpec("antitree too large");
      spec.sizes.push_back(static_cast<int>(a));
      a *= r;
    }
  } else {
    throw InvalidSpec("unknown antitree family '" + family + "'");
  }
  spec.validate();
  return spec;
}

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::RadialRoot: return "radial-root";
    case EdgeClass::SphericalRoot: return "spherical-root";
    case EdgeClass::InnerRadial: return "inner-radial";
    case EdgeClass::InnerSpherical: return "inner-spherical";
  }
  return "unknown";
}

Graph Graph::from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count < 0 || vertex_count > kMaxVertices) throw InvalidArgument("bad vertex count");
  Graph g;
  g.adjacency_.resize(static_cast<std::size_t>(vertex_count));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw InvalidArgument("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : g.adjacency_) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw InvalidArgument("multiple edge in graph");
  }
  return g;
}

long Graph::edge_count() const {
  long total = 0;
  for (const auto& nb : adjacency_) total += static_cast<long>(nb.size());
  return total / 2;
}

int Graph::max_degree() const {
  int m = 0;
  for (const auto& nb : adjacency_) m = std::max(m, static_cast<int>(nb.size()));
  return m;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
  if (adjacency_.empty()) return true;
  const auto d = distances_from(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<int> Graph::distances_from(int source) const {
  if (!contains(source)) throw InvalidArgument("vertex out of range: " + std::to_string(source));
  std::vector<int> dist(adjacency_.size(), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : adjacency_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

void Graph::attach_generations(AntitreeSpec spec) {
  spec.validate();
  long total = 0;
  generation_start_.clear();
  for (int a : spec.sizes) {
    generation_start_.push_back(static_cast<int>(total));
    total += a;
  }
  generation_start_.push_back(static_cast<int>(total));
  if (total != vertex_count()) throw InvalidSpec("generation sizes do not sum to the vertex count");
  spec_ = std::move(spec);
}

int Graph::generation(int v) const {
  if (!spec_) throw InvalidArgument("graph has no generation labels");
  if (!contains(v)) throw InvalidArgument("vertex out of range: " + std::to_string(v));
  const auto it = std::upper_bound(generation_start_.begin(), generation_start_.end(), v);
  return spec_->first_generation + static_cast<int>(it - generation_start_.begin()) - 1;
}

std::vector<int> Graph::generation_vertices(int k) const {
  if (!spec_) throw InvalidArgument("graph has no generation labels");
  const int idx = k - spec_->first_generation;
  std::vector<int> out;
  if (idx < 0 || idx >= spec_->generation_count()) return out;
  for (int v = generation_start_[static_cast<std::size_t>(idx)]; v < generation_start_[static_cast<std::size_t>(idx) + 1]; ++v)
    out.push_back(v);
  return out;
}

bool Graph::within_margin(int v, int radius) const {
  if (!spec_) return true;
  const int k = generation(v);
  if (spec_->truncated && k + radius > spec_->last_generation()) return false;
  if (spec_->first_generation > 1 && k - radius < spec_->first_generation) return false;
  return true;
}

Graph Graph::from_adjacency(std::vector<std::vector<int>> lists) {
  Graph g;
  const int n = static_cast<int>(lists.size());
  if (n > kMaxVertices) throw InvalidArgument("bad vertex count");
  for (int v = 0; v < n; ++v) {
    auto& nb = lists[static_cast<std::size_t>(v)];
    if (!std::is_sorted(nb.begin(), nb.end())) std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw InvalidArgument("multiple edge in graph");
    for (int w : nb) {
      if (w < 0 || w >= n) throw InvalidArgument("edge endpoint out of range");
      if (w == v) throw InvalidArgument("loop at vertex " + std::to_string(v));
    }
  }
  g.adjacency_ = std::move(lists);
  for (int v = 0; v < n; ++v)
    for (int w : g.adjacency_[static_cast<std::size_t>(v)])
      if (!g.adjacent(w, v)) throw InvalidArgument("adjacency lists are not symmetric");
  return g;
}

Graph build_antitree(const AntitreeSpec& spec) {
  spec.validate();
  std::vector<int> start;
  int total = 0;
  for (int a : spec.sizes) {
    start.push_back(total);
    total += a;
  }
  start.push_back(total);

  // x in V_k is adjacent to V_{k-1}, V_k \ {x} and V_{k+1}: a contiguous id range.
  const int gens = spec.generation_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  for (int k = 0; k < gens; ++k) {
    const int lo = start[static_cast<std::size_t>(std::max(0, k - 1))];
    const int hi = start[static_cast<std::size_t>(std::min(gens, k + 2))];
    for (int v = start[static_cast<std::size_t>(k)]; v < start[static_cast<std::size_t>(k) + 1]; ++v) {
      auto& nb = adj[static_cast<std::size_t>(v)];
      nb.reserve(static_cast<std::size_t>(hi - lo - 1));
      for (int w = lo; w < hi; ++w)
        if (w != v) nb.push_back(w);
    }
  }
  Graph g = Graph::from_adjacency(std::move(adj));
  g.attach_generations(spec);
  return g;
}

int degree(const Graph& g, int x) {
  if (!g.contains(x)) throw InvalidArgument("vertex out of range: " + std::to_string(x));
  return g.degree(x);
}

int distance(const Graph& g, int x, int y) {
  if (!g.contains(y)) throw InvalidArgument("vertex out of range: " + std::to_string(y));
  const int d = g.distances_from(x)[static_cast<std::size_t>(y)];
  if (d < 0) throw Unreachable("vertices " + std::to_string(x) + " and " + std::to_string(y) + " are not connected");
  return d;
}

std::vector<int> sphere(const Graph& g, int x, int r) {
  if (r < 0) throw InvalidArgument("radius must be >= 0");
  const auto d = g.distances_from(x);
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (d[static_cast<std::size_t>(v)] == r) out.push_back(v);
  return out;
}

std::vector<int> ball(const Graph& g, int x, int r) {
  if (r < 0) throw InvalidArgument("radius must be >= 0");
  const auto d = g.distances_from(x);
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int dv = d[static_cast<std::size_t>(v)];
    if (dv >= 0 && dv <= r) out.push_back(v);
  }
  return out;
}

EdgeClass classify_edge(const Graph& g, int x, int y) {
  if (!g.contains(x) || !g.contains(y) || !g.adjacent(x, y))
    throw InvalidArgument("classify_edge: " + std::to_string(x) + " " + std::to_string(y) + " is not an edge");
  if (!g.has_generations()) throw InvalidArgument("classify_edge: graph has no generation labels");
  const int kx = g.generation(x);
  const int ky = g.generation(y);
  const bool root = g.antitree()->first_generation == 1 && std::min(kx, ky) == 1;
  if (kx == ky) return root ? EdgeClass::SphericalRoot : EdgeClass::InnerSpherical;
  return root ? EdgeClass::RadialRoot : EdgeClass::InnerRadial;
}

void write_graph(std::ostream& os, const Graph& g) {
  if (g.has_generations()) {
    const auto& spec = *g.antitree();
    os << "generations: ";
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) os << (i ? "," : "") << spec.sizes[i];
    os << "\n";
    if (spec.first_generation != 1) os << "first-generation: " << spec.first_generation << "\n";
    if (spec.truncated) os << "truncated: yes\n";
  } else {
    os << "vertices: " << g.vertex_count() << "\n";
  }
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) os << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& is) {
  std::optional<AntitreeSpec> spec;
  std::optional<long> vertices;
  int first_generation = 1;
  bool truncated = false;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (const auto colon = t.find(':'); colon != std::string::npos) {
      const std::string key = trim(std::string_view(t).substr(0, colon));
      const std::string value = trim(std::string_view(t).substr(colon + 1));
      if (key == "generations") {
        spec = parse_antitree_spec(value);
      } else if (key == "vertices") {
        vertices = parse_long(value, "vertex count");
      } else if (key == "first-generation") {
        first_generation = static_cast<int>(parse_long(value, "first generation"));
      } else if (key == "truncated") {
        truncated = (value == "yes" || value == "true" || value == "1");
      } else {
        throw InvalidSpec("line " + std::to_string(lineno) + ": unknown header '" + key + "'");
      }
      continue;
    }
    std::istringstream ls(t);
    long u = 0, v = 0;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) throw InvalidSpec("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  long n = 0;
  if (spec) {
    for (int a : spec->sizes) n += a;
    if (vertices && *vertices != n) throw InvalidSpec("vertex count disagrees with generation sizes");
  } else if (vertices) {
    n = *vertices;
  } else {
    for (const auto& [u, v] : edges) n = std::max<long>(n, std::max(u, v) + 1L);
  }
  Graph g = Graph::from_edges(static_cast<int>(n), edges);
  if (spec) {
    spec->first_generation = first_generation;
    spec->truncated = truncated;
    g.attach_generations(*spec);
  }
  return g;
}

}  // namespace atcurv
