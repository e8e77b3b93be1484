#include "atcurv/bakry_emery.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "atcurv/block_reduction.hpp"
#include "atcurv/errors.hpp"

namespace atcurv {

VertexMeasure VertexMeasure::custom(std::map<int, Rational> weights) {
  for (const auto& [v, w] : weights)
    if (w.sign() <= 0) throw InvalidArgument("custom measure: weight of vertex " + std::to_string(v) + " is not positive");
  VertexMeasure m(Kind::Custom);
  m.weights_ = std::move(weights);
  return m;
}

std::string VertexMeasure::name() const {
  switch (kind_) {
    case Kind::NonNormalized: return "nonnorm";
    case Kind::Normalized: return "norm";
    case Kind::Custom: return "custom";
  }
  return "custom";
}

Rational VertexMeasure::operator()(const Graph& g, int v) const {
  if (!g.contains(v)) throw InvalidArgument("measure: vertex " + std::to_string(v) + " is not in the graph");
  switch (kind_) {
    case Kind::NonNormalized: return Rational(1);
    case Kind::Normalized: {
      const int d = g.degree(v);
      if (d == 0) throw InvalidArgument("normalized measure: vertex " + std::to_string(v) + " is isolated");
      return Rational(d);
    }
    case Kind::Custom: {
      auto it = weights_.find(v);
      if (it == weights_.end()) throw InvalidArgument("custom measure: no weight for vertex " + std::to_string(v));
      return it->second;
    }
  }
  throw InvalidArgument("measure: unknown kind");
}

QuadMatrix<Rational> LocalForms::gamma_padded() const {
  const auto m = static_cast<Eigen::Index>(b2.size());
  QuadMatrix<Rational> out = zero_matrix<Rational>(m, m);
  out.topLeftCorner(gamma.rows(), gamma.cols()) = gamma;
  return out;
}

Vec<Rational> LocalForms::laplacian_row_padded() const {
  Vec<Rational> out(static_cast<Eigen::Index>(b2.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = i < laplacian_row.size() ? laplacian_row(i) : Rational(0);
  return out;
}

LocalForms local_forms(const Graph& g, const VertexMeasure& mu, int x) {
  if (!g.contains(x)) throw InvalidArgument("vertex " + std::to_string(x) + " is not in the graph");
  if (!g.within_margin(x, 2))
    throw LocalityError("B_2(" + std::to_string(x) + ") reaches a truncation boundary");

  LocalForms f;
  f.center = x;
  f.b1.push_back(x);
  for (int y : g.neighbors(x)) f.b1.push_back(y);
  std::unordered_map<int, int> index;
  for (std::size_t i = 0; i < f.b1.size(); ++i) index.emplace(f.b1[i], static_cast<int>(i));
  std::vector<int> s2;
  for (int y : g.neighbors(x))
    for (int z : g.neighbors(y))
      if (!index.count(z)) {
        index.emplace(z, -1);
        s2.push_back(z);
      }
  std::sort(s2.begin(), s2.end());
  f.b2 = f.b1;
  for (int z : s2) {
    index[z] = static_cast<int>(f.b2.size());
    f.b2.push_back(z);
  }
  const auto n1 = static_cast<Eigen::Index>(f.b1.size());
  const auto n2 = static_cast<Eigen::Index>(f.b2.size());
  auto at = [&](int v) { return static_cast<Eigen::Index>(index.at(v)); };

  std::vector<Rational> inv_mu(static_cast<std::size_t>(n1));
  for (Eigen::Index i = 0; i < n1; ++i) inv_mu[static_cast<std::size_t>(i)] = Rational(1) / mu(g, f.b1[static_cast<std::size_t>(i)]);
  const Rational& inv_mx = inv_mu[0];
  const int dx = g.degree(x);
  const Rational half(1, 2);

  f.gamma = zero_matrix<Rational>(n1, n1);
  f.laplacian_row = Vec<Rational>(n1);
  f.laplacian_row(0) = -Rational(dx) * inv_mx;
  const Rational gxy = half * inv_mx;
  f.gamma(0, 0) = Rational(dx) * gxy;
  for (Eigen::Index i = 1; i < n1; ++i) {
    f.laplacian_row(i) = inv_mx;
    f.gamma(i, i) = gxy;
    f.gamma(0, i) = f.gamma(i, 0) = -gxy;
  }

  // ½ΔΓ(f)(x) part: (1/2μ(x)) Σ_{y~x} (G_y − G_x), G_v the matrix of Γ(f)(v).
  QuadMatrix<Rational> t = zero_matrix<Rational>(n2, n2);
  auto add_gamma_at = [&](int v, const Rational& c) {
    const Eigen::Index iv = at(v);
    for (int z : g.neighbors(v)) {
      const Eigen::Index iz = at(z);
      t(iz, iz) += c;
      t(iv, iv) += c;
      t(iz, iv) -= c;
      t(iv, iz) -= c;
    }
  };
  for (Eigen::Index i = 1; i < n1; ++i)
    add_gamma_at(f.b1[static_cast<std::size_t>(i)], half * inv_mx * half * inv_mu[static_cast<std::size_t>(i)]);
  add_gamma_at(x, -(Rational(dx) * half * inv_mx * half * inv_mx));

  // Γ(f, Δf)(x) = (1/2μ(x)) Σ_y (f_y − f_x)(Δf(y) − Δf(x)), bilinear in f.
  // Only rows of B_1 are populated.
  QuadMatrix<Rational> b = zero_matrix<Rational>(n1, n2);
  const Rational c = half * inv_mx;
  for (Eigen::Index i = 1; i < n1; ++i) {
    const int y = f.b1[static_cast<std::size_t>(i)];
    const Rational cy = c * inv_mu[static_cast<std::size_t>(i)];
    for (int z : g.neighbors(y)) {
      const Eigen::Index iz = at(z);
      b(i, iz) += cy;
      b(0, iz) -= cy;
    }
    const Rational diag = cy * Rational(g.degree(y));
    b(i, i) -= diag;
    b(0, i) += diag;
    for (Eigen::Index j = 0; j < n1; ++j) {
      const Rational v = c * f.laplacian_row(j);
      b(i, j) -= v;
      b(0, j) += v;
    }
  }

  f.gamma2 = std::move(t);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) {
      if (b(i, j).is_zero()) continue;
      const Rational h = half * b(i, j);
      f.gamma2(i, j) -= h;
      f.gamma2(j, i) -= h;
    }
  return f;
}

bool cd_holds(const LocalForms& forms, const Rational& K, const std::optional<Rational>& N) {
  QuadMatrix<Rational> m = forms.gamma2;
  const Eigen::Index n1 = forms.gamma.rows();
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n1; ++j) m(i, j) -= K * forms.gamma(i, j);
  if (N) {
    if (N->sign() <= 0) throw InvalidArgument("cd_holds: dimension N must be positive");
    const Rational inv = Rational(1) / *N;
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n1; ++j) m(i, j) -= inv * forms.laplacian_row(i) * forms.laplacian_row(j);
  }
  return is_psd(m);
}

bool cd_holds(const Graph& g, const VertexMeasure& mu, int x, const Rational& K, const std::optional<Rational>& N) {
  return cd_holds(local_forms(g, mu, x), K, N);
}

namespace {

// Orthonormal basis of u^⊥ for a unit vector u, as the trailing columns of a
// Householder reflection mapping u to a multiple of e_1.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& u) {
  const Eigen::Index m = u.size();
  Eigen::VectorXd v = u;
  v(0) += (u(0) >= 0 ? 1.0 : -1.0);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - (2.0 / v.squaredNorm()) * v * v.transpose();
  return h.rightCols(m - 1);
}

// A pencil M(K) = P2 − K·P1 that knows how to test itself in floating
// point and exactly.
struct Pencil {
  std::function<bool(double, double)> float_psd;        // (K, tol)
  std::function<bool(const Rational&)> exact_psd;
  std::function<bool()> positive;
  std::string method;
};

bool float_psd_deflated(const Eigen::MatrixXd& p2, const Eigen::MatrixXd& p1, double scale, double K, double tol) {
  const Eigen::MatrixXd m = p2 - K * p1;
  if (m.rows() == 0) return true;
  const auto eig = symmetric_eigenvalues(m, 1e-13);
  return eig.front() >= -tol * scale;
}

Pencil dense_pencil(const LocalForms& forms) {
  const QuadMatrix<Rational> gp = forms.gamma_padded();
  const Eigen::Index m = gp.rows();
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  const Eigen::MatrixXd q = complement_basis(u);
  const Eigen::MatrixXd p2 = q.transpose() * to_double(forms.gamma2) * q;
  const Eigen::MatrixXd p1 = q.transpose() * to_double(gp) * q;
  const double scale = std::max({1.0, p2.cwiseAbs().maxCoeff(), p1.cwiseAbs().maxCoeff()});

  Pencil p;
  p.method = "dense-bisection";
  p.float_psd = [=](double K, double tol) { return float_psd_deflated(p2, p1, scale, K, tol); };
  p.exact_psd = [&forms](const Rational& K) { return cd_holds(forms, K); };
  p.positive = [&forms] {
    const PsdDecision d = psd_with_kernel_dim(forms.gamma2);
    return d.is_psd && d.kernel_dim == 1;
  };
  return p;
}

Pencil block_pencil(const Graph& g, const LocalForms& forms) {
  const LocalBlockOrder lo = antitree_block_order(g, forms);
  const auto p2b = detect_blocks(permute(forms.gamma2, lo.order), lo.dims);
  const auto p1b = detect_blocks(permute(forms.gamma_padded(), lo.order), lo.dims);
  const QuadMatrix<Rational> r2 = reduce(p2b);
  const QuadMatrix<Rational> r1 = reduce(p1b);
  const int r = p2b.block_count();

  // A_red is congruent to the restriction on block-constant vectors via
  // D^{1/2}; the constant vector becomes D^{1/2}·1.
  Eigen::VectorXd sq(r);
  for (int i = 0; i < r; ++i) sq(i) = std::sqrt(static_cast<double>(lo.dims[static_cast<std::size_t>(i)]));
  const Eigen::MatrixXd dinv = sq.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd q = complement_basis(sq.normalized());
  const Eigen::MatrixXd n2 = q.transpose() * dinv * to_double(r2) * dinv * q;
  const Eigen::MatrixXd n1 = q.transpose() * dinv * to_double(r1) * dinv * q;
  std::vector<double> a2, a1;
  std::vector<Rational> a2r, a1r;
  for (int i = 0; i < r; ++i)
    if (lo.dims[static_cast<std::size_t>(i)] >= 2) {
      a2r.push_back(p2b.alpha[static_cast<std::size_t>(i)]);
      a1r.push_back(p1b.alpha[static_cast<std::size_t>(i)]);
      a2.push_back(a2r.back().to_double());
      a1.push_back(a1r.back().to_double());
    }
  double scale = 1.0;
  if (n2.size()) scale = std::max({scale, n2.cwiseAbs().maxCoeff(), n1.cwiseAbs().maxCoeff()});
  for (std::size_t i = 0; i < a2.size(); ++i) scale = std::max({scale, std::abs(a2[i]), std::abs(a1[i])});

  Pencil p;
  p.method = "block-reduced-bisection";
  p.float_psd = [=](double K, double tol) {
    for (std::size_t i = 0; i < a2.size(); ++i)
      if (a2[i] - K * a1[i] < -tol * scale) return false;
    return float_psd_deflated(n2, n1, scale, K, tol);
  };
  p.exact_psd = [=](const Rational& K) {
    for (std::size_t i = 0; i < a2r.size(); ++i)
      if ((a2r[i] - K * a1r[i]).sign() < 0) return false;
    QuadMatrix<Rational> m = r2;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) -= K * r1(i, j);
    return is_psd(m);
  };
  p.positive = [=] {
    for (const auto& a : a2r)
      if (a.sign() <= 0) return false;
    const PsdDecision d = psd_with_kernel_dim(r2);
    return d.is_psd && d.kernel_dim == 1;
  };
  return p;
}

}  // namespace

CurvatureResult curvature_infinity(const Graph& g, const VertexMeasure& mu, int x, const CurvatureOptions& options) {
  if (!(options.tol > 0)) throw InvalidArgument("curvature: tol must be positive");
  const LocalForms forms = local_forms(g, mu, x);

  CurvatureMethod method = options.method;
  if (method == CurvatureMethod::Auto)
    method = g.has_generations() ? CurvatureMethod::BlockReduced : CurvatureMethod::Dense;
  if (method == CurvatureMethod::BlockReduced && !g.has_generations())
    throw InvalidArgument("curvature: block-reduced method needs an antitree");
  const Pencil pencil = method == CurvatureMethod::Dense ? dense_pencil(forms) : block_pencil(g, forms);

  int maxdeg = 0;
  for (int v : forms.b2) maxdeg = std::max(maxdeg, g.degree(v));
  // Under the normalized or custom measure Γ and Γ₂ carry 1/μ factors; the
  // bracket is widened on demand anyway.
  double lo = -2.0 * maxdeg - 2.0;
  double hi = 2.0 * maxdeg + 2.0;
  const double tol = options.tol;
  for (int i = 0; !pencil.float_psd(lo, tol); ++i) {
    if (i > 60) throw NumericalFailure("curvature: no lower bracket found");
    lo *= 2;
  }
  for (int i = 0; pencil.float_psd(hi, tol); ++i) {
    if (i > 60) throw NumericalFailure("curvature: no upper bracket found");
    hi *= 2;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pencil.float_psd(mid, tol))
      lo = mid;
    else
      hi = mid;
  }

  CurvatureResult res;
  res.vertex = x;
  if (g.has_generations()) res.generation = g.generation(x);
  res.measure = mu.name();
  res.method = pencil.method;
  res.K = 0.5 * (lo + hi);
  res.lo = Rational::from_double(lo);
  res.hi = Rational::from_double(hi);
  res.positive = pencil.positive();

  if (options.certify) {
    bool ok_lo = false, ok_hi = false;
    Rational step = Rational::from_double(std::max(hi - lo, tol));
    for (int i = 0; i < 40; ++i) {
      if (pencil.exact_psd(res.lo)) {
        ok_lo = true;
        break;
      }
      res.lo -= step;
      step *= Rational(2);
    }
    step = Rational::from_double(std::max(hi - lo, tol));
    for (int i = 0; i < 40; ++i) {
      if (!pencil.exact_psd(res.hi)) {
        ok_hi = true;
        break;
      }
      res.hi += step;
      step *= Rational(2);
    }
    res.certified = ok_lo && ok_hi;
    // The float test accepts slightly negative eigenvalues, so the certified
    // bracket can be wider than tol; shrink it with exact tests.
    const Rational width = Rational::from_double(tol);
    for (int i = 0; res.certified && res.hi - res.lo > width && i < 200; ++i) {
      Rational mid = Rational::from_double(0.5 * (res.lo.to_double() + res.hi.to_double()));
      if (!(res.lo < mid && mid < res.hi)) mid = (res.lo + res.hi) / Rational(2);
      if (pencil.exact_psd(mid))
        res.lo = mid;
      else
        res.hi = mid;
    }
    if (res.certified) res.K = 0.5 * (res.lo.to_double() + res.hi.to_double());
  }
  return res;
}

}  // namespace atcurv
