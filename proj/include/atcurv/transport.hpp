#pragma once

#include <map>
#include <utility>
#include <vector>

#include "atcurv/graph.hpp"
#include "atcurv/rational.hpp"

namespace atcurv {

/// Probability measure with finite support. Entries are kept sorted by vertex.
class Measure {
 public:
  Measure() = default;
  /// Zero weights are dropped; throws InvalidArgument on negative weights,
  /// repeated vertices or a total different from 1.
  explicit Measure(std::vector<std::pair<int, Rational>> entries);

  static Measure point(int v) { return Measure({{v, Rational(1)}}); }

  const std::vector<std::pair<int, Rational>>& entries() const { return entries_; }
  std::vector<int> support() const;
  std::size_t size() const { return entries_.size(); }
  Rational operator[](int v) const;

  friend bool operator==(const Measure& a, const Measure& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<std::pair<int, Rational>> entries_;
};

struct TransportPlan {
  std::map<std::pair<int, int>, Rational> flows;

  Rational cost(const Graph& g) const;
  /// Exact marginal check against μ₁ (rows) and μ₂ (columns).
  bool has_marginals(const Measure& mu1, const Measure& mu2) const;
};

struct TransportResult {
  Rational value;
  TransportPlan plan;
  /// φ on the union of both supports, 1-Lipschitz for the graph distance,
  /// min φ = 0, with Σ φ(μ₁ − μ₂) = W₁.
  std::map<int, Rational> potential;
  long pivots = 0;
};

/// Exact W₁ by the primal transportation simplex. Common mass is left in
/// place, so the LP runs on the surplus of μ₁ against the surplus of μ₂.
/// Entering cells are priced by most negative reduced cost; after a run of
/// degenerate pivots the rule switches to Bland's lowest-index rule for the
/// rest of the solve. Throws Unreachable when supports are disconnected.
TransportResult solve_transport(const Graph& g, const Measure& mu1, const Measure& mu2);

inline Rational wasserstein1(const Graph& g, const Measure& mu1, const Measure& mu2) {
  return solve_transport(g, mu1, mu2).value;
}

inline std::map<int, Rational> kantorovich_potential(const Graph& g, const Measure& mu1, const Measure& mu2) {
  return solve_transport(g, mu1, mu2).potential;
}

}  // namespace atcurv
