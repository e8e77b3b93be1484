#include "atcurv/exact_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace atcurv {

namespace {

// Shared elimination driver. Returns the decision; with stop_on_negative the
// rank fields are not meaningful once a negative direction is found.
PsdDecision ldlt_decide(const QuadMatrix<Rational>& m, bool stop_on_negative) {
  if (m.rows() != m.cols()) throw InvalidArgument("psd test: matrix is not square");
  const int d = static_cast<int>(m.rows());
  QuadMatrix<Rational> a = m;
  std::vector<int> active(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) active[static_cast<std::size_t>(i)] = i;

  PsdDecision out;
  out.is_psd = true;
  std::vector<Rational> factor(static_cast<std::size_t>(d));

  while (!active.empty()) {
    // Largest absolute diagonal pivot, lowest index on ties.
    int best = -1;
    Rational best_abs(0);
    for (int i : active) {
      const Rational v = abs(a(i, i));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }

    if (best >= 0) {
      const Rational pivot = a(best, best);
      if (pivot.sign() < 0) {
        out.is_psd = false;
        if (stop_on_negative) return out;
      }
      ++out.rank;
      std::erase(active, best);
      for (int i : active) factor[static_cast<std::size_t>(i)] = a(i, best) / pivot;
      for (std::size_t ii = 0; ii < active.size(); ++ii) {
        const int i = active[ii];
        const Rational& fi = factor[static_cast<std::size_t>(i)];
        if (fi.is_zero()) continue;
        for (std::size_t jj = ii; jj < active.size(); ++jj) {
          const int j = active[jj];
          a(i, j) -= fi * a(best, j);
          if (j != i) a(j, i) = a(i, j);
        }
      }
      continue;
    }

    // Every remaining diagonal entry is zero.
    int pi = -1, pj = -1;
    for (std::size_t ii = 0; ii < active.size() && pi < 0; ++ii)
      for (std::size_t jj = ii + 1; jj < active.size(); ++jj)
        if (!a(active[ii], active[jj]).is_zero()) {
          pi = active[ii];
          pj = active[jj];
          break;
        }
    if (pi < 0) break;  // remaining block is identically zero

    // A zero diagonal next to a nonzero off-diagonal entry is indefinite.
    out.is_psd = false;
    if (stop_on_negative) return out;
    out.rank += 2;
    const Rational off = a(pi, pj);
    std::erase(active, pi);
    std::erase(active, pj);
    for (std::size_t kk = 0; kk < active.size(); ++kk) {
      const int k = active[kk];
      for (std::size_t ll = kk; ll < active.size(); ++ll) {
        const int l = active[ll];
        a(k, l) -= (a(k, pi) * a(pj, l) + a(k, pj) * a(pi, l)) / off;
        if (l != k) a(l, k) = a(k, l);
      }
    }
  }
  out.kernel_dim = d - out.rank;
  return out;
}

}  // namespace

PsdDecision psd_with_kernel_dim(const QuadMatrix<Rational>& m) { return ldlt_decide(m, false); }

bool is_psd(const QuadMatrix<Rational>& m) { return ldlt_decide(m, true).is_psd; }

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("symmetric_eigenvalues: matrix is not square");
  if (!(tol > 0)) throw InvalidArgument("symmetric_eigenvalues: tol must be positive");
  const Eigen::Index d = m.rows();
  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  const double norm = a.norm();
  std::vector<double> out(static_cast<std::size_t>(d));
  if (d == 0) return out;

  auto off_norm = [&] {
    double s = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) s += 2 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const long max_sweeps = 100L * d * d;
  long sweep = 0;
  while (off_norm() > tol * norm) {
    if (++sweep > max_sweeps) throw NumericalFailure("symmetric_eigenvalues: Jacobi sweeps did not converge");
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0;
        for (Eigen::Index r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd to_double(const QuadMatrix<Rational>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace atcurv
