#include "atcurv/block_reduction.hpp"

#include <array>

namespace atcurv {

LocalBlockOrder antitree_block_order(const Graph& g, const LocalForms& forms) {
  if (!g.has_generations()) throw InvalidArgument("antitree_block_order: graph has no generations");
  const int k = g.generation(forms.center);
  std::array<std::vector<int>, 6> slot_members;
  for (std::size_t i = 0; i < forms.b2.size(); ++i) {
    const int v = forms.b2[i];
    const int gen = g.generation(v);
    int slot = -1;
    if (v == forms.center)
      slot = 0;
    else if (gen == k)
      slot = 1;
    else if (gen == k + 1)
      slot = 2;
    else if (gen == k - 1)
      slot = 3;
    else if (gen == k + 2)
      slot = 4;
    else if (gen == k - 2)
      slot = 5;
    else
      throw InvalidArgument("antitree_block_order: vertex " + std::to_string(v) + " outside B_2");
    slot_members[static_cast<std::size_t>(slot)].push_back(static_cast<int>(i));
  }
  LocalBlockOrder out;
  for (int s = 0; s < 6; ++s) {
    const auto& mem = slot_members[static_cast<std::size_t>(s)];
    if (mem.empty()) continue;
    out.order.insert(out.order.end(), mem.begin(), mem.end());
    out.dims.push_back(static_cast<int>(mem.size()));
    out.slots.push_back(static_cast<AntitreeSlot>(s));
  }
  return out;
}

BlockPartition<Rational> antitree_gamma2_blocks(int a, int b, int c, int d, int e, VertexMeasure::Kind measure) {
  if (a < 0 || b < 0 || d < 0 || e < 0 || c < 1) throw InvalidArgument("antitree blocks: invalid generation sizes");
  if ((a > 0 && b == 0) || (e > 0 && d == 0)) throw InvalidArgument("antitree blocks: generations must be contiguous");
  AntitreeBlockInput<Rational> in{a, b, c, d, e};
  if (measure == VertexMeasure::Kind::Normalized) {
    const Rational mx(b + c + d - 1);
    if (b > 0) in.scaled_eps_minus = mx / Rational(a + b + c - 1) - Rational(1);
    if (d > 0) in.scaled_eps_plus = mx / Rational(c + d + e - 1) - Rational(1);
  } else if (measure != VertexMeasure::Kind::NonNormalized) {
    throw InvalidArgument("antitree blocks: closed form needs the normalized or non-normalized measure");
  }
  BlockPartition<Rational> bp = antitree_gamma2_blocks(in);
  for (const auto& s : bp.sizes) bp.dims.push_back(static_cast<int>(s.numerator().get_si()));
  return bp;
}

std::string to_string(AntitreeFamily f) {
  switch (f) {
    case AntitreeFamily::V3Center: return "V3";
    case AntitreeFamily::V2Center: return "V2";
    case AntitreeFamily::V1Center: return "V1";
  }
  return "V3";
}

AntitreeFamily parse_antitree_family(const std::string& text) {
  if (text == "V3" || text == "v3") return AntitreeFamily::V3Center;
  if (text == "V2" || text == "v2") return AntitreeFamily::V2Center;
  if (text == "V1" || text == "v1") return AntitreeFamily::V1Center;
  throw InvalidArgument("unknown family '" + text + "' (expected V1, V2 or V3)");
}

SymbolicCharPoly symbolic_antitree_charpoly(AntitreeFamily family, VertexMeasure::Kind measure) {
  if (measure == VertexMeasure::Kind::Custom)
    throw InvalidArgument("symbolic characteristic polynomial needs the normalized or non-normalized measure");
  const PolyRational n = PolyRational::x();
  AntitreeBlockInput<PolyRational> in;
  switch (family) {
    case AntitreeFamily::V3Center:
      in.a = n;
      in.b = n + PolyRational(1);
      in.c = n + PolyRational(2);
      in.d = n + PolyRational(3);
      in.e = n + PolyRational(4);
      break;
    case AntitreeFamily::V2Center:
      in.a = PolyRational(0);
      in.b = PolyRational(1);
      in.c = PolyRational(2);
      in.d = PolyRational(3);
      in.e = PolyRational(4);
      break;
    case AntitreeFamily::V1Center:
      in.a = PolyRational(0);
      in.b = PolyRational(0);
      in.c = PolyRational(1);
      in.d = PolyRational(2);
      in.e = PolyRational(3);
      break;
  }
  in.scale = PolyRational(1);
  in.scaled_eps_minus = PolyRational(0);
  in.scaled_eps_plus = PolyRational(0);
  if (measure == VertexMeasure::Kind::Normalized) {
    const PolyRational one(1);
    const PolyRational mx = in.b + in.c + in.d - one;
    const bool has_prev = !is_zero(in.b);
    const PolyRational mm = has_prev ? in.a + in.b + in.c - one : one;
    const PolyRational mp = in.c + in.d + in.e - one;
    in.scale = mm * mp;
    if (has_prev) in.scaled_eps_minus = mp * (mx - mm);
    in.scaled_eps_plus = mm * (mx - mp);
  }

  const BlockPartition<PolyRational> bp = antitree_gamma2_blocks(in);
  SymbolicCharPoly out;
  out.family = family;
  out.measure = measure;
  out.reduced = reduce(bp);
  out.scale = in.scale;
  if (out.scale.degree() <= 0) {
    const Rational s = out.scale.coeff(0);
    for (Eigen::Index i = 0; i < out.reduced.rows(); ++i)
      for (Eigen::Index j = 0; j < out.reduced.cols(); ++j) out.reduced(i, j) = out.reduced(i, j) / s;
    out.scale = PolyRational(1);
  }
  out.dimension = static_cast<int>(out.reduced.rows());

  for (Eigen::Index i = 0; i < out.reduced.rows(); ++i) {
    PolyRational row(0);
    for (Eigen::Index j = 0; j < out.reduced.cols(); ++j) row += out.reduced(i, j);
    if (!is_zero(row)) throw Error("reduced matrix does not annihilate the constant vector (row " + std::to_string(i) + ")");
  }

  out.chi = char_poly(out.reduced);
  const int r = out.dimension;
  out.p.assign(static_cast<std::size_t>(r), PolyRational(0));
  for (int k = 1; k < r; ++k) {
    PolyRational c = out.chi.coeff(k);
    out.p[static_cast<std::size_t>(k)] = ((r - k) % 2 == 0) ? c : -c;
  }
  if (!is_zero(out.chi.coeff(0))) throw Error("characteristic polynomial has a nonzero constant term");
  return out;
}

PolyRational curvature_decay_p1(const Rational& delta) {
  const PolyRational n = PolyRational::x();
  const auto bp = decay_blocks<PolyRational>(n, PolyRational(delta));
  const auto chi = char_poly(reduce(bp));
  return -chi.coeff(1);
}

std::vector<PolyRational> curvature_decay_p1_bivariate() {
  std::vector<Rational> deltas;
  std::vector<PolyRational> samples;
  for (int k = 0; k <= 6; ++k) {
    deltas.emplace_back(k);
    samples.push_back(curvature_decay_p1(Rational(k)));
  }
  int deg = 0;
  for (const auto& s : samples) deg = std::max(deg, s.degree());
  std::vector<PolyRational> out;
  for (int j = 0; j <= deg; ++j) {
    std::vector<Rational> values;
    for (const auto& s : samples) values.push_back(s.coeff(j));
    out.push_back(interpolate(deltas, values));
  }
  return out;
}

std::optional<long> first_negative(const PolyRational& p, long n_max) {
  for (long n = 1; n <= n_max; ++n)
    if (p.eval(Rational(n)).sign() < 0) return n;
  return std::nullopt;
}

}  // namespace atcurv
