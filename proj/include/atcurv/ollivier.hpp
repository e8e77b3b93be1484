#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atcurv/graph.hpp"
#include "atcurv/rational.hpp"
#include "atcurv/transport.hpp"

namespace atcurv {

/// Lazy random walk: mass p at x, (1−p)/d_x on each neighbour.
Measure mu_p(const Graph& g, int x, const Rational& p);

/// κ_p(x,y) = 1 − W₁(μ_x^p, μ_y^p) for an edge x ~ y.
Rational kappa_p(const Graph& g, int x, int y, const Rational& p);

/// Lin–Lu–Yau curvature, read off the terminal linear piece at
/// p* = 1/(max(d_x,d_y)+1) and confirmed at the midpoint of [p*, 1].
Rational kappa_lly(const Graph& g, int x, int y);

struct KappaSegment {
  Rational from, to;
  Rational slope, intercept;
};

/// Exact piecewise-linear κ_p on [0,1].
struct KappaCurve {
  std::vector<KappaSegment> segments;

  std::vector<Rational> breakpoints() const;
  Rational operator()(const Rational& p) const;
};

/// Samples κ_p at 0, 1/(lcm(d_x,d_y)+1), 1/(max(d_x,d_y)+1), 1 and at
/// interior points of every interval, fits and merges affine pieces, and
/// checks continuity, concavity, κ₁ = 0 and at most three pieces. A failed
/// check throws StructureViolation.
KappaCurve kappa_curve(const Graph& g, int x, int y);

/// Closed form of κ_p from the antitree edge theorems. `k` is the generation
/// of the lower endpoint (both endpoints for spherical edges).
struct KappaOracle {
  Rational value;
  std::string theorem;  // e.g. "radial-root(b)"
};

/// Throws UnsupportedCase when the generations around the edge fall
/// outside every theorem's hypotheses (including missing generations at a
/// finite end).
KappaOracle antitree_kappa_oracle(const AntitreeSpec& spec, EdgeClass cls, int k, const Rational& p);

/// Interior breakpoints of the oracle's piecewise formula, increasing.
std::vector<Rational> antitree_kappa_breakpoints(const AntitreeSpec& spec, EdgeClass cls, int k);

/// Radial root edge formula of the general main theorem (a₁ = 1, sizes
/// non-decreasing), with denominator a₂ + a₃ in the first piece's slope.
Rational main_theorem_radial_root(int a2, int a3, const Rational& p);

/// κ₀ for AT((1+(k−1)t)) and AT((r^(k−1))). `cls` is RadialRoot (k = 1),
/// InnerRadial (x ∈ V_k, y ∈ V_{k+1}) or InnerSpherical (k ≥ 2).
Rational linear_growth_kappa0(int t, EdgeClass cls, int k);
Rational exponential_growth_kappa0(int r, EdgeClass cls, int k);

/// Representative edge (x, y) of a class at generation k, or nullopt.
std::optional<std::pair<int, int>> representative_edge(const Graph& g, EdgeClass cls, int k);

}  // namespace atcurv
