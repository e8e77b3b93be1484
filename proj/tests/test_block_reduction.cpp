#include <doctest.h>

#include <random>

#include "atcurv/bakry_emery.hpp"
#include "atcurv/block_reduction.hpp"
#include "atcurv/errors.hpp"
#include "oracles.hpp"

using namespace atcurv;
using oracle::RMatrix;
using oracle::RPoly;

namespace {

RMatrix ones(int d) {
  RMatrix m(d, d);
  m.setConstant(Rational(1));
  return m;
}

RPoly structured_factor(const BlockPartition<Rational>& bp) {
  RPoly out(Rational(1));
  for (const auto& [alpha, mult] : structured_spectrum(bp))
    for (long k = 0; k < mult.numerator().get_si(); ++k) out *= RPoly(std::vector<Rational>{-alpha, Rational(1)});
  return out;
}

BlockPartition<Rational> random_partition(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 4), size(1, 4);
  std::uniform_int_distribution<long> num(-7, 7), den(1, 3);
  BlockPartition<Rational> bp;
  const int r = count(rng);
  bp.gamma = zero_matrix<Rational>(r, r);
  for (int i = 0; i < r; ++i) {
    const int d = size(rng);
    bp.dims.push_back(d);
    bp.sizes.emplace_back(d);
    bp.alpha.emplace_back(num(rng), den(rng));
    bp.beta.push_back(d >= 2 ? Rational(num(rng), den(rng)) : Rational(0));
    for (int j = 0; j < i; ++j) bp.gamma(i, j) = bp.gamma(j, i) = Rational(num(rng), den(rng));
  }
  return bp;
}

}  // namespace

TEST_SUITE("block_reduction") {
  TEST_CASE("single-block examples") {
    const auto j2 = detect_blocks(ones(2), {2});
    CHECK(j2.alpha[0] == Rational(0));
    CHECK(j2.beta[0] == Rational(1));
    CHECK(reduce(j2) == RMatrix::Constant(1, 1, Rational(4)));
    const auto id3 = detect_blocks(identity_matrix<Rational>(3), {3});
    CHECK(id3.alpha[0] == Rational(1));
    CHECK(id3.beta[0] == Rational(0));
    CHECK(reduce(id3) == RMatrix::Constant(1, 1, Rational(3)));
    const auto spec = structured_spectrum(id3);
    REQUIRE(spec.size() == 1);
    CHECK(spec[0].first == Rational(1));
    CHECK(spec[0].second == Rational(2));
    CHECK(structured_spectrum(detect_blocks(RMatrix(RMatrix::Constant(1, 1, Rational(5))), {1})).empty());
  }

  TEST_CASE("structure violations and bad partitions") {
    RMatrix m = ones(3);
    m(0, 2) = m(2, 0) = Rational(2);
    CHECK_THROWS_AS(detect_blocks(m, {3}), NotBlockStructured);
    CHECK_THROWS_AS(detect_blocks(m, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(detect_blocks(m, {3, 0}), InvalidArgument);
    RMatrix off = ones(3);
    off(0, 1) = off(1, 0) = Rational(7);
    CHECK_THROWS_AS(detect_blocks(off, {1, 2}), NotBlockStructured);
  }

  TEST_CASE("quadratic transfer on one block") {
    const auto j2 = detect_blocks(ones(2), {2});
    Vec<Rational> w(1);
    w(0) = Rational(1);
    const auto [lhs, rhs] = quadratic_transfer_check(j2, w);
    CHECK(lhs == Rational(4));
    CHECK(rhs == Rational(4));
  }

  TEST_CASE("Γ₂ of AT((2,3,4,5,6)) recovers the closed-form A_ij") {
    const Graph g = build_antitree(AntitreeSpec{{2, 3, 4, 5, 6}});
    const VertexMeasure mu = VertexMeasure::non_normalized();
    const int x = g.generation_vertices(3).front();
    const LocalForms f = local_forms(g, mu, x);
    const auto order = antitree_block_order(g, f);
    CHECK(order.dims == std::vector<int>{1, 3, 5, 3, 6, 2});
    RMatrix m = permute(f.gamma2, order.order);
    const Rational s = Rational(4) * mu(g, x) * mu(g, x);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= s;
    const auto bp = detect_blocks(m, order.dims);
    const auto closed = antitree_gamma2_blocks(2, 3, 4, 5, 6, VertexMeasure::Kind::NonNormalized);
    CHECK(bp.alpha == closed.alpha);
    CHECK(bp.beta == closed.beta);
    CHECK(bp.gamma == closed.gamma);
    CHECK(bp.beta[1] == Rational(-2));
    // α₅ = d + dε₊ with ε₊ = 0 here, multiplicity e − 1.
    const auto spec = structured_spectrum(bp);
    bool found = false;
    for (const auto& [a, mult] : spec)
      if (a == Rational(5) && mult == Rational(5)) found = true;
    CHECK(found);
  }

  TEST_CASE("A_red of the V2-centred antitree") {
    const auto red = reduce(antitree_gamma2_blocks(0, 1, 2, 3, 4, VertexMeasure::Kind::NonNormalized));
    CHECK(red.rows() == 5);
    CHECK(char_poly(red) == RPoly(std::vector<Rational>{0, 8640, -25632, 3684, -132, 1}));
  }

  TEST_CASE("detect_blocks inverts synthesize") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const auto bp = random_partition(rng);
      const auto back = detect_blocks(synthesize(bp), bp.dims);
      CHECK(back.alpha == bp.alpha);
      CHECK(back.beta == bp.beta);
      for (int i = 0; i < bp.block_count(); ++i)
        for (int j = 0; j < bp.block_count(); ++j)
          if (i != j) CHECK(back.gamma(i, j) == bp.gamma(i, j));
    }
  }

  TEST_CASE("quadratic transfer against dense evaluation") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 6);
    const Graph g = build_antitree(AntitreeSpec{{1, 2, 3, 4, 5}});
    for (const VertexMeasure& mu : {VertexMeasure::non_normalized(), VertexMeasure::normalized()}) {
      const int x = g.generation_vertices(3).front();
      const LocalForms f = local_forms(g, mu, x);
      const auto order = antitree_block_order(g, f);
      const RMatrix m = permute(f.gamma2, order.order);
      const auto bp = detect_blocks(m, order.dims);
      for (int trial = 0; trial < 10; ++trial) {
        Vec<Rational> w(bp.block_count());
        for (int i = 0; i < bp.block_count(); ++i) w(i) = Rational(num(rng), den(rng));
        const auto [lhs, rhs] = quadratic_transfer_check(bp, w);
        CHECK(lhs == rhs);
        // Independent dense evaluation on the expanded vector.
        std::vector<Rational> hat;
        for (int i = 0; i < bp.block_count(); ++i)
          for (int k = 0; k < bp.dims[static_cast<std::size_t>(i)]; ++k) hat.push_back(w(i));
        Rational direct(0);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          for (Eigen::Index j = 0; j < m.cols(); ++j) direct += hat[static_cast<std::size_t>(i)] * m(i, j) * hat[static_cast<std::size_t>(j)];
        CHECK(direct == rhs);
      }
      Vec<Rational> all(bp.block_count());
      all.setConstant(Rational(1));
      CHECK(quadratic_transfer_check(bp, all).first == Rational(0));
    }
  }

  TEST_CASE("spectrum splits into structured part and block-constant action") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      const auto bp = random_partition(rng);
      const RMatrix a = synthesize(bp);
      REQUIRE(a.rows() <= 20);
      int total = bp.block_count();
      for (const auto& [alpha, mult] : structured_spectrum(bp)) total += static_cast<int>(mult.numerator().get_si());
      CHECK(total == a.rows());
      CHECK(oracle::charpoly_by_determinants(a) == char_poly(block_constant_action(bp)) * structured_factor(bp));
      // A_red = D·(D⁻¹A_red) is congruent to the block-constant action, with the same inertia.
      const auto red = psd_with_kernel_dim(reduce(bp));
      const auto act = block_constant_action(bp);
      RMatrix sym = act;
      for (int i = 0; i < bp.block_count(); ++i)
        for (int j = 0; j < bp.block_count(); ++j) sym(i, j) = act(i, j) * bp.sizes[static_cast<std::size_t>(i)];
      CHECK(sym == reduce(bp));
      bool alphas_ok = true;
      for (const auto& [alpha, mult] : structured_spectrum(bp)) alphas_ok = alphas_ok && alpha.sign() >= 0;
      CHECK(psd_with_kernel_dim(a).is_psd == (red.is_psd && alphas_ok));
    }
  }

  TEST_CASE("χ(A_red) alone does not complete the spectrum") {
    // J₂: χ(A) = t(t − 2) while χ(A_red)·(t − α) = (t − 4)·t.
    const auto bp = detect_blocks(ones(2), {2});
    const RPoly literal = char_poly(reduce(bp)) * structured_factor(bp);
    CHECK(char_poly(ones(2)) == RPoly(std::vector<Rational>{0, -2, 1}));
    CHECK_FALSE(literal == char_poly(ones(2)));
    CHECK(char_poly(block_constant_action(bp)) * structured_factor(bp) == char_poly(ones(2)));
  }

  TEST_CASE("symbolic V3 family matches graph-built matrices") {
    for (auto kind : {VertexMeasure::Kind::NonNormalized, VertexMeasure::Kind::Normalized}) {
      const auto sym = symbolic_antitree_charpoly(AntitreeFamily::V3Center, kind);
      CHECK(sym.dimension == 6);
      for (int k = 1; k < sym.dimension; ++k)
        for (const auto& c : sym.p[static_cast<std::size_t>(k)].coefficients()) CHECK(c.sign() >= 0);
      CHECK(sym.chi.coeff(0).is_zero());
      for (int n = 1; n <= 3; ++n) {
        const VertexMeasure mu = kind == VertexMeasure::Kind::Normalized ? VertexMeasure::normalized() : VertexMeasure::non_normalized();
        const Graph g = build_antitree(AntitreeSpec{{n, n + 1, n + 2, n + 3, n + 4}});
        const int x = g.generation_vertices(3).front();
        const LocalForms f = local_forms(g, mu, x);
        const auto order = antitree_block_order(g, f);
        RMatrix m = permute(f.gamma2, order.order);
        const Rational s = Rational(4) * mu(g, x) * mu(g, x) * sym.scale.eval(Rational(n));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= s;
        const auto chi = char_poly(reduce(detect_blocks(m, order.dims)));
        for (int k = 0; k <= 6; ++k) CHECK(chi.coeff(k) == sym.chi.coeff(k).eval(Rational(n)));
        CHECK(sym.p[1].eval(Rational(n)) == (chi.coeff(1).sign() >= 0 ? chi.coeff(1) : -chi.coeff(1)));
      }
    }
  }

  TEST_CASE("small-centre golden polynomials") {
    using K = VertexMeasure::Kind;
    auto constant_chi = [](AntitreeFamily f, K k) {
      const auto sym = symbolic_antitree_charpoly(f, k);
      std::vector<Rational> c;
      for (int i = 0; i <= sym.chi.degree(); ++i) {
        REQUIRE(sym.chi.coeff(i).degree() <= 0);
        c.push_back(sym.chi.coeff(i).coeff(0));
      }
      return RPoly(std::move(c));
    };
    CHECK(constant_chi(AntitreeFamily::V1Center, K::NonNormalized) == RPoly(std::vector<Rational>{0, 72, -44, 1}));
    CHECK(constant_chi(AntitreeFamily::V1Center, K::Normalized) ==
          RPoly(std::vector<Rational>{0, Rational(144, 5), Rational(-112, 5), 1}));
    CHECK(constant_chi(AntitreeFamily::V2Center, K::Normalized) ==
          RPoly(std::vector<Rational>{0, Rational(3082725, 64), Rational(-593811, 16), Rational(118743, 32), Rational(-471, 4), 1}));
    CHECK(to_string(parse_antitree_family("V2")) == "V2");
    CHECK_THROWS_AS(parse_antitree_family("V7"), InvalidArgument);
  }

  TEST_CASE("decay polynomial") {
    for (const Rational& delta : {Rational(1), Rational(1, 2), Rational(1, 10)}) {
      const auto p1 = curvature_decay_p1(delta);
      CHECK(p1.degree() == 9);
      CHECK(p1.leading() == Rational(-240) * delta);
    }
    // Cross-check p₁ at fixed n against the reduced matrix built from concrete blocks.
    for (long n : {1L, 4L, 9L}) {
      const auto bp = decay_blocks<Rational>(Rational(n), Rational(1));
      const auto chi = char_poly(reduce(bp));
      CHECK(chi.coeff(0).is_zero());
      CHECK(curvature_decay_p1(Rational(1)).eval(Rational(n)) == -chi.coeff(1));
    }
    const auto q = curvature_decay_p1_bivariate();
    const auto direct = curvature_decay_p1(Rational(3, 7));
    for (int j = 0; j <= 9; ++j) CHECK(q[static_cast<std::size_t>(j)].eval(Rational(3, 7)) == direct.coeff(j));
    CHECK(first_negative(PolyRational(std::vector<Rational>{5, -1}), 10) == 6);
    CHECK_FALSE(first_negative(PolyRational(Rational(1)), 10).has_value());
  }

  TEST_CASE("decay at n = 50 drives K below one") {
    const Rational n(50);
    const auto p1 = curvature_decay_p1(Rational(1));
    CHECK(p1.eval(n).sign() < 0);
    // Generalized eigenvalues of the reduced pencil (4Γ₂, 4Γ) on block-constant vectors.
    const auto g2 = reduce(decay_blocks<Rational>(n, Rational(0)));
    const auto shift = reduce(decay_blocks<Rational>(n, Rational(1)));
    RMatrix gamma = g2 - shift;  // 4Γ in reduced coordinates
    const Graph g = build_antitree(parse_antitree_spec("identity:54"));
    const auto r = curvature_infinity(g, VertexMeasure::non_normalized(), g.generation_vertices(52).front());
    CHECK(r.positive);
    CHECK(r.K < 1);
    CHECK_FALSE(is_psd(shift));
    // Γ₂ − KΓ at the certified lower end stays PSD on block-constant vectors.
    RMatrix at_lo = g2;
    for (Eigen::Index i = 0; i < at_lo.rows(); ++i)
      for (Eigen::Index j = 0; j < at_lo.cols(); ++j) at_lo(i, j) -= r.lo * gamma(i, j);
    CHECK(is_psd(at_lo));
  }
}
