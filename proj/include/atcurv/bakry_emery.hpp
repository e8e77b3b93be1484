#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atcurv/exact_linalg.hpp"
#include "atcurv/graph.hpp"
#include "atcurv/rational.hpp"

namespace atcurv {

/// Vertex measure μ defining Δf(x) = (1/μ(x)) Σ_{y~x} (f(y) − f(x)).
class VertexMeasure {
 public:
  enum class Kind { NonNormalized, Normalized, Custom };

  static VertexMeasure non_normalized() { return VertexMeasure(Kind::NonNormalized); }
  static VertexMeasure normalized() { return VertexMeasure(Kind::Normalized); }
  /// Weights must be positive; vertices missing from the map are rejected on use.
  static VertexMeasure custom(std::map<int, Rational> weights);

  Kind kind() const { return kind_; }
  std::string name() const;
  Rational operator()(const Graph& g, int v) const;

 private:
  explicit VertexMeasure(Kind k) : kind_(k) {}
  Kind kind_;
  std::map<int, Rational> weights_;
};

/// Quadratic forms of Γ and Γ₂ at a vertex, in local coordinates.
///
/// b1 lists B_1(x) as x followed by its neighbours in increasing id order;
/// b2 extends b1 by S_2(x) in increasing id order, so b1 is a prefix of b2.
struct LocalForms {
  int center = -1;
  std::vector<int> b1;
  std::vector<int> b2;
  QuadMatrix<Rational> gamma;     // on b1
  QuadMatrix<Rational> gamma2;    // on b2
  Vec<Rational> laplacian_row;    // on b1: f ↦ Δf(x)

  /// Γ embedded into b2 coordinates with zero padding.
  QuadMatrix<Rational> gamma_padded() const;
  Vec<Rational> laplacian_row_padded() const;
};

/// Builds Γ(x) and Γ₂(x) by expanding Γ(f,g) = ½(Δ(fg) − fΔg − gΔf) and
/// Γ₂(f,g) = ½(ΔΓ(f,g) − Γ(f,Δg) − Γ(g,Δf)) on indicator functions of B_2(x).
/// Throws LocalityError if B_2(x) crosses a truncation boundary.
LocalForms local_forms(const Graph& g, const VertexMeasure& mu, int x);

enum class CurvatureMethod { Auto, Dense, BlockReduced };

struct CurvatureOptions {
  double tol = 1e-9;
  CurvatureMethod method = CurvatureMethod::Auto;
  /// Confirm the float bracket with exact rational PSD tests.
  bool certify = true;
};

struct CurvatureResult {
  int vertex = -1;
  std::optional<int> generation;
  std::string measure;
  double K = 0;
  Rational lo;
  Rational hi;
  bool positive = false;  // exact: Γ₂ PSD with one-dimensional kernel
  bool certified = false;
  std::string method;
};

/// K_{G,x}(∞) = sup{K : Γ₂(x) − K·Γ(x) ⪰ 0} by bisection. The float PSD test
/// deflates the constant vector and accepts eigenvalues ≥ −tol·scale.
CurvatureResult curvature_infinity(const Graph& g, const VertexMeasure& mu, int x,
                                   const CurvatureOptions& options = {});

/// Exact CD(K, N, x) test; pass std::nullopt for N = ∞.
bool cd_holds(const Graph& g, const VertexMeasure& mu, int x, const Rational& K,
              const std::optional<Rational>& N = std::nullopt);
bool cd_holds(const LocalForms& forms, const Rational& K, const std::optional<Rational>& N = std::nullopt);

}  // namespace atcurv
