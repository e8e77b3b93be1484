#pragma once

#include <Eigen/Core>
#include <vector>

#include "atcurv/errors.hpp"
#include "atcurv/polynomial.hpp"
#include "atcurv/rational.hpp"

namespace atcurv {

/// Dense symmetric matrix over a scalar ring (Rational, PolyRational, double).
template <class S>
using QuadMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
QuadMatrix<S> zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  QuadMatrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = S(0);
  return m;
}

template <class S>
QuadMatrix<S> identity_matrix(Eigen::Index n) {
  QuadMatrix<S> m = zero_matrix<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
bool is_symmetric(const QuadMatrix<S>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

template <class S>
QuadMatrix<S> multiply(const QuadMatrix<S>& a, const QuadMatrix<S>& b) {
  QuadMatrix<S> out = zero_matrix<S>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (atcurv::is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

/// Symmetric permutation: out(i, j) = m(order[i], order[j]).
template <class S>
QuadMatrix<S> permute(const QuadMatrix<S>& m, const std::vector<int>& order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  QuadMatrix<S> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return out;
}

/// det(t·Id − m) by Faddeev–LeVerrier. The only divisions are by the
/// integers 1..d, so any commutative ring containing Q works as scalar.
template <class S>
Polynomial<S> char_poly(const QuadMatrix<S>& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("char_poly: matrix is not square");
  const Eigen::Index d = m.rows();
  std::vector<S> c(static_cast<std::size_t>(d) + 1, S(0));
  c[static_cast<std::size_t>(d)] = S(1);
  QuadMatrix<S> run = identity_matrix<S>(d);
  for (Eigen::Index k = 1; k <= d; ++k) {
    QuadMatrix<S> am = multiply(m, run);
    S trace(0);
    for (Eigen::Index i = 0; i < d; ++i) trace += am(i, i);
    const S ck = -divide_by_integer(trace, static_cast<long>(k));
    c[static_cast<std::size_t>(d - k)] = ck;
    if (k < d) {
      for (Eigen::Index i = 0; i < d; ++i) am(i, i) += ck;
      run = std::move(am);
    }
  }
  return Polynomial<S>(std::move(c));
}

template <class S>
S eval_poly(const Polynomial<S>& p, const S& at) {
  return p.eval(at);
}

struct PsdDecision {
  bool is_psd = false;
  int rank = 0;
  int kernel_dim = 0;
};

/// Exact inertia-style decision by symmetric LDLᵀ. Pivots on the largest
/// absolute diagonal entry (lowest index on ties); when every remaining
/// diagonal entry is zero a 2×2 pivot on the first nonzero off-diagonal
/// entry keeps the rank count exact.
PsdDecision psd_with_kernel_dim(const QuadMatrix<Rational>& m);

/// Same decision without the rank; stops at the first negative pivot.
bool is_psd(const QuadMatrix<Rational>& m);

/// Ascending eigenvalues of a real symmetric matrix by cyclic Jacobi
/// rotations. Converges when the off-diagonal Frobenius norm drops below
/// tol·‖m‖_F; throws NumericalFailure after 100·d² sweeps.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m, double tol = 1e-12);

Eigen::MatrixXd to_double(const QuadMatrix<Rational>& m);

}  // namespace atcurv
