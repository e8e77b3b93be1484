#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atcurv/bakry_emery.hpp"
#include "atcurv/errors.hpp"
#include "atcurv/exact_linalg.hpp"
#include "atcurv/graph.hpp"
#include "atcurv/polynomial.hpp"

namespace atcurv {

/// Symmetric matrix in Id/J block form: diagonal blocks α_i·Id + β_i·J, off-
/// diagonal blocks γ_ij·J. Block sizes are kept as scalars so that sizes
/// depending on a symbolic parameter (d_i = n+1, …) reduce exactly;
/// `dims` holds the concrete sizes when the partition came from a matrix.
template <class S>
struct BlockPartition {
  std::vector<S> sizes;
  std::vector<int> dims;
  std::vector<S> alpha;
  std::vector<S> beta;
  QuadMatrix<S> gamma;  // r×r; diagonal unused

  int block_count() const { return static_cast<int>(sizes.size()); }
  bool concrete() const { return dims.size() == sizes.size(); }
  int dimension() const {
    int d = 0;
    for (int v : dims) d += v;
    return d;
  }
};

/// Where the blocks of a partition start in the full matrix.
inline std::vector<int> block_offsets(const std::vector<int>& dims) {
  std::vector<int> off(dims.size() + 1, 0);
  for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
  return off;
}

/// Extracts α, β, γ and checks every entry. A size-1 block records its
/// entry as α with β = 0. Throws NotBlockStructured naming the first entry
/// that breaks the pattern.
template <class S>
BlockPartition<S> detect_blocks(const QuadMatrix<S>& m, const std::vector<int>& dims) {
  const auto off = block_offsets(dims);
  if (m.rows() != m.cols() || off.back() != m.rows())
    throw InvalidArgument("detect_blocks: partition does not match matrix dimension");
  for (int d : dims)
    if (d < 1) throw InvalidArgument("detect_blocks: block sizes must be positive");
  const int r = static_cast<int>(dims.size());

  BlockPartition<S> bp;
  bp.dims = dims;
  bp.gamma = zero_matrix<S>(r, r);
  auto fail = [&](int i, int j, const S& expected) {
    throw NotBlockStructured("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                             detail::scalar_text(m(i, j)) + " breaks block pattern, expected " +
                             detail::scalar_text(expected));
  };

  for (int bi = 0; bi < r; ++bi) {
    bp.sizes.push_back(S(static_cast<long>(dims[static_cast<std::size_t>(bi)])));
    const int i0 = off[static_cast<std::size_t>(bi)], i1 = off[static_cast<std::size_t>(bi) + 1];
    S beta(0);
    if (i1 - i0 >= 2) beta = m(i0, i0 + 1);
    const S alpha = m(i0, i0) - beta;
    for (int i = i0; i < i1; ++i)
      for (int j = i0; j < i1; ++j) {
        const S expected = (i == j) ? alpha + beta : beta;
        if (!(m(i, j) == expected)) fail(i, j, expected);
      }
    bp.alpha.push_back(alpha);
    bp.beta.push_back(beta);

    for (int bj = 0; bj < r; ++bj) {
      if (bj == bi) continue;
      const int j0 = off[static_cast<std::size_t>(bj)], j1 = off[static_cast<std::size_t>(bj) + 1];
      const S g = m(i0, j0);
      for (int i = i0; i < i1; ++i)
        for (int j = j0; j < j1; ++j)
          if (!(m(i, j) == g)) fail(i, j, g);
      bp.gamma(bi, bj) = g;
    }
  }
  return bp;
}

/// A_red with a_ii = α_i d_i + β_i d_i² and a_ij = γ_ij d_i d_j.
template <class S>
QuadMatrix<S> reduce(const BlockPartition<S>& bp) {
  const int r = bp.block_count();
  QuadMatrix<S> red = zero_matrix<S>(r, r);
  for (int i = 0; i < r; ++i) {
    const S& di = bp.sizes[static_cast<std::size_t>(i)];
    for (int j = 0; j < r; ++j) {
      const S& dj = bp.sizes[static_cast<std::size_t>(j)];
      red(i, j) = (i == j) ? bp.alpha[static_cast<std::size_t>(i)] * di + bp.beta[static_cast<std::size_t>(i)] * di * di
                           : bp.gamma(i, j) * di * dj;
    }
  }
  return red;
}

/// Action of A on block-constant vectors, D⁻¹A_red with D = diag(d_i):
/// m_ii = α_i + β_i d_i and m_ij = γ_ij d_j. Its eigenvalues complete the
/// structured spectrum; A_red itself is only congruent to it.
template <class S>
QuadMatrix<S> block_constant_action(const BlockPartition<S>& bp) {
  const int r = bp.block_count();
  QuadMatrix<S> m = zero_matrix<S>(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m(i, j) = (i == j) ? bp.alpha[static_cast<std::size_t>(i)] + bp.beta[static_cast<std::size_t>(i)] * bp.sizes[static_cast<std::size_t>(i)]
                         : bp.gamma(i, j) * bp.sizes[static_cast<std::size_t>(j)];
  return m;
}

/// Eigenvalues carried by the zero-sum vectors inside each block:
/// (α_i, multiplicity d_i − 1), omitting blocks of size one.
template <class S>
std::vector<std::pair<S, S>> structured_spectrum(const BlockPartition<S>& bp) {
  std::vector<std::pair<S, S>> out;
  for (int i = 0; i < bp.block_count(); ++i) {
    const S mult = bp.sizes[static_cast<std::size_t>(i)] - S(1);
    if (!atcurv::is_zero(mult)) out.emplace_back(bp.alpha[static_cast<std::size_t>(i)], mult);
  }
  return out;
}

/// The dense matrix described by a concrete partition.
template <class S>
QuadMatrix<S> synthesize(const BlockPartition<S>& bp) {
  if (!bp.concrete()) throw InvalidArgument("synthesize: partition has no concrete block sizes");
  const auto off = block_offsets(bp.dims);
  const int d = off.back();
  QuadMatrix<S> m(d, d);
  for (int bi = 0; bi < bp.block_count(); ++bi)
    for (int bj = 0; bj < bp.block_count(); ++bj)
      for (int i = off[static_cast<std::size_t>(bi)]; i < off[static_cast<std::size_t>(bi) + 1]; ++i)
        for (int j = off[static_cast<std::size_t>(bj)]; j < off[static_cast<std::size_t>(bj) + 1]; ++j) {
          if (bi != bj)
            m(i, j) = bp.gamma(bi, bj);
          else
            m(i, j) = (i == j) ? bp.alpha[static_cast<std::size_t>(bi)] + bp.beta[static_cast<std::size_t>(bi)]
                               : bp.beta[static_cast<std::size_t>(bi)];
        }
  return m;
}

/// (ŵᵀ A ŵ, wᵀ A_red w) where ŵ repeats w_i across block i. The left side
/// is evaluated on the dense matrix, the right side on A_red.
template <class S>
std::pair<S, S> quadratic_transfer_check(const BlockPartition<S>& bp, const Vec<S>& w) {
  if (w.size() != bp.block_count()) throw InvalidArgument("quadratic_transfer_check: w has wrong length");
  const QuadMatrix<S> a = synthesize(bp);
  const auto off = block_offsets(bp.dims);
  Vec<S> hat(a.rows());
  for (int bi = 0; bi < bp.block_count(); ++bi)
    for (int i = off[static_cast<std::size_t>(bi)]; i < off[static_cast<std::size_t>(bi) + 1]; ++i) hat(i) = w(bi);
  S lhs(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) lhs += hat(i) * a(i, j) * hat(j);
  const QuadMatrix<S> red = reduce(bp);
  S rhs(0);
  for (Eigen::Index i = 0; i < red.rows(); ++i)
    for (Eigen::Index j = 0; j < red.cols(); ++j) rhs += w(i) * red(i, j) * w(j);
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Antitree block structure around a centre vertex x ∈ V_k.

/// Canonical slots, in this order: {x}, V_k \ {x}, V_{k+1}, V_{k−1}, V_{k+2}, V_{k−2}.
enum class AntitreeSlot { Center = 0, OwnGeneration, Next, Previous, NextNext, PreviousPrevious };

struct LocalBlockOrder {
  std::vector<int> order;           // positions into LocalForms::b2
  std::vector<int> dims;            // nonempty slots only
  std::vector<AntitreeSlot> slots;  // slot of each nonempty block
};

LocalBlockOrder antitree_block_order(const Graph& g, const LocalForms& forms);

/// Scaled inputs for the closed-form blocks of s·4μ(x)²Γ₂(x).
/// `scale` is s; `scaled_eps_minus` and `scaled_eps_plus` are s·ε₋ and s·ε₊
/// with ε∓ = μ(x)/μ(y∓) − 1.
template <class S>
struct AntitreeBlockInput {
  S a, b, c, d, e;
  S scale{1};
  S scaled_eps_minus{0};
  S scaled_eps_plus{0};
};

/// Block parameters of s·4μ(x)²Γ₂(x) for x ∈ V_3 of AT((a,b,c,d,e)), in slot
/// order, transcribed from the closed-form block table. Slots whose size is
/// zero (a = 0, b = 0 or c = 1) are dropped.
template <class S>
BlockPartition<S> antitree_gamma2_blocks(const AntitreeBlockInput<S>& in) {
  const S& a = in.a;
  const S& b = in.b;
  const S& c = in.c;
  const S& d = in.d;
  const S& e = in.e;
  const S& one = in.scale;
  const S& em = in.scaled_eps_minus;
  const S& ep = in.scaled_eps_plus;
  const S dx = b + c + d - S(1);
  const S two(2), three(3), four(4);

  const std::vector<S> sizes = {S(1), c - S(1), d, b, e, a};
  std::vector<S> alpha = {
      one * dx * (dx + three) + three * b * em + three * d * ep,
      one * three * (dx + S(1)) + b * em + d * ep,
      one * (three * c + three * d + three * e - b) + (three * c + four * d + three * e) * ep,
      one * (three * a + three * b + three * c - d) + (three * a + four * b + three * c) * em,
      one * d + d * ep,
      one * b + b * em,
  };
  std::vector<S> beta = {
      S(0),
      -(two * one),
      -(two * one + four * ep),
      -(two * one + four * em),
      S(0),
      S(0),
  };
  QuadMatrix<S> gamma = zero_matrix<S>(6, 6);
  auto set = [&](int i, int j, const S& v) { gamma(i, j) = v; gamma(j, i) = v; };
  set(0, 1, -(one * (dx + three)) + b * em + d * ep);
  set(0, 2, -(one * (dx + three + e)) - (two + c + e) * ep);
  set(0, 3, -(one * (dx + three + a)) - (two + a + c) * em);
  set(0, 4, one * d + d * ep);
  set(0, 5, one * b + b * em);
  set(1, 2, -(two * one + two * ep));
  set(1, 3, -(two * one + two * em));
  set(2, 3, two * one);
  set(2, 4, -(two * one + two * ep));
  set(3, 5, -(two * one + two * em));

  std::vector<int> keep;
  for (int i = 0; i < 6; ++i)
    if (!atcurv::is_zero(sizes[static_cast<std::size_t>(i)])) keep.push_back(i);

  BlockPartition<S> bp;
  bp.gamma = zero_matrix<S>(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    bp.sizes.push_back(sizes[static_cast<std::size_t>(keep[i])]);
    bp.alpha.push_back(alpha[static_cast<std::size_t>(keep[i])]);
    bp.beta.push_back(beta[static_cast<std::size_t>(keep[i])]);
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (i != j) bp.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gamma(keep[i], keep[j]);
  }
  return bp;
}

/// Closed-form blocks of 4μ(x)²Γ₂(x) for x ∈ V_3 of the finite antitree
/// AT((a,b,c,d,e)) under the given measure (a = 0 and b = 0 shift the centre
/// to V_2 and V_1). Concrete sizes are filled in.
BlockPartition<Rational> antitree_gamma2_blocks(int a, int b, int c, int d, int e, VertexMeasure::Kind measure);

/// The six-block form of A(δ,n) = 4(Γ₂(x) − δΓ(x)), x ∈ V_{n+2} of AT((k)),
/// non-normalized, with block sizes (1, n+1, n+3, n+1, n+4, n).
template <class S>
BlockPartition<S> decay_blocks(const S& n, const S& delta) {
  const S two(2);
  BlockPartition<S> bp;
  bp.sizes = {S(1), n + S(1), n + S(3), n + S(1), n + S(4), n};
  bp.alpha = {
      (S(3) * n + S(5)) * (S(3) * n + S(8)) - (S(6) * n + S(10)) * delta,
      S(9) * n + S(18) - two * delta,
      S(8) * n + S(26) - two * delta,
      S(8) * n + S(6) - two * delta,
      n + S(3),
      n + S(1),
  };
  bp.beta = {S(0), -two, -two, -two, S(0), S(0)};
  bp.gamma = zero_matrix<S>(6, 6);
  auto set = [&](int i, int j, const S& v) { bp.gamma(i, j) = v; bp.gamma(j, i) = v; };
  set(0, 1, -S(3) * n - S(8) + two * delta);
  set(0, 2, -S(4) * n - S(12) + two * delta);
  set(0, 3, -S(4) * n - S(8) + two * delta);
  set(0, 4, n + S(3));
  set(0, 5, n + S(1));
  set(1, 2, -two);
  set(1, 3, -two);
  set(2, 3, two);
  set(2, 4, -two);
  set(3, 5, -two);
  return bp;
}

enum class AntitreeFamily { V3Center, V2Center, V1Center };

std::string to_string(AntitreeFamily f);
AntitreeFamily parse_antitree_family(const std::string& text);

/// χ(t) = det(t·Id − A_red) = t^r − p_{r−1} t^{r−1} + … ± p_1 t, with the
/// coefficients p_k as polynomials in n.
struct SymbolicCharPoly {
  AntitreeFamily family = AntitreeFamily::V3Center;
  VertexMeasure::Kind measure = VertexMeasure::Kind::NonNormalized;
  int dimension = 0;
  QuadMatrix<PolyRational> reduced;  // s·A_red
  PolyRational scale;                // s > 0 for all n ≥ 1
  Polynomial<PolyRational> chi;      // of s·A_red
  std::vector<PolyRational> p;       // p[k] for k = 0..r−1 (p[0] = 0)
};

/// Families: V3-center (a..e) = (n..n+4); V2-center (b,c,d,e) = (1,2,3,4);
/// V1-center (c,d,e) = (1,2,3). In the normalized V3 case ε∓ are rational
/// functions of n, so the reduced matrix is multiplied by s = μ(y₋)μ(y₊)
/// (a positive polynomial); in all other cases s = 1.
SymbolicCharPoly symbolic_antitree_charpoly(AntitreeFamily family, VertexMeasure::Kind measure);

/// p₁(δ, n) = ∏ nonzero eigenvalues of A(δ,n)_red, as a polynomial in n.
PolyRational curvature_decay_p1(const Rational& delta);

/// p₁(δ, n) = Σ_j q_j(δ) n^j; returns q_j as polynomials in δ, recovered by
/// interpolation over δ = 0..6.
std::vector<PolyRational> curvature_decay_p1_bivariate();

/// Smallest n in [1, n_max] with p(n) < 0.
std::optional<long> first_negative(const PolyRational& p, long n_max);

}  // namespace atcurv
