#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atcurv {

/// Generation sizes (a_1, …, a_N) of an antitree with complete generations.
///
/// `first_generation` is the index of sizes[0] in the generation numbering
/// (1 for a graph that starts at its root set). A family spec such as
/// "identity:N" describes a truncation of an infinite antitree, which is
/// recorded in `truncated`; local quantities are then only reported for
/// vertices far enough from the cut.
struct AntitreeSpec {
  std::vector<int> sizes;
  int first_generation = 1;
  bool truncated = false;

  int generation_count() const { return static_cast<int>(sizes.size()); }
  int last_generation() const { return first_generation + generation_count() - 1; }
  /// a_k for a generation index k; 0 outside the stored range.
  int size_of(int generation) const;
  void validate() const;
};

/// Parses "2,3,5", "identity:N" (a_k = k), "linear:t,N" (a_k = 1+(k−1)t)
/// and "exp:r,N" (a_k = r^(k−1)). Families are truncations of infinite
/// antitrees; explicit lists are finite graphs.
AntitreeSpec parse_antitree_spec(std::string_view text);

enum class EdgeClass { RadialRoot, SphericalRoot, InnerRadial, InnerSpherical };

std::string to_string(EdgeClass c);

/// Immutable simple undirected graph on vertices 0..n−1. Antitrees carry
/// generation labels: generation blocks are contiguous id ranges.
class Graph {
 public:
  Graph() = default;

  /// Validates simplicity; duplicate edges and loops are rejected.
  static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);
  /// Takes ownership of per-vertex neighbour lists; validates symmetry.
  static Graph from_adjacency(std::vector<std::vector<int>> lists);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  long edge_count() const;
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  bool adjacent(int u, int v) const;
  bool contains(int v) const { return v >= 0 && v < vertex_count(); }
  bool is_connected() const;

  /// BFS distances from `source`; −1 marks unreachable vertices.
  std::vector<int> distances_from(int source) const;

  bool has_generations() const { return spec_.has_value(); }
  const std::optional<AntitreeSpec>& antitree() const { return spec_; }
  /// Generation index of v (in the AntitreeSpec numbering).
  int generation(int v) const;
  /// Vertex ids of generation k, in increasing order.
  std::vector<int> generation_vertices(int k) const;

  /// True when the ball of the given radius around v is complete in this
  /// graph, i.e. no truncation cut lies within `radius` generations.
  bool within_margin(int v, int radius) const;

  void attach_generations(AntitreeSpec spec);

 private:
  std::vector<std::vector<int>> adjacency_;
  std::optional<AntitreeSpec> spec_;
  std::vector<int> generation_start_;
};

Graph build_antitree(const AntitreeSpec& spec);

int degree(const Graph& g, int x);
/// Combinatorial distance; throws Unreachable for disconnected pairs.
int distance(const Graph& g, int x, int y);
std::vector<int> sphere(const Graph& g, int x, int r);
std::vector<int> ball(const Graph& g, int x, int r);
/// Throws InvalidArgument for non-edges or when generations are missing.
EdgeClass classify_edge(const Graph& g, int x, int y);

/// Line format: optional "generations: a_1,…,a_N" header (plus
/// "first-generation: k" and "truncated: yes"), or "vertices: n" for plain
/// graphs, followed by one "u v" line per edge. '#' starts a comment.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

}  // namespace atcurv
