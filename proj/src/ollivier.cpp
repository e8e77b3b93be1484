#include "atcurv/ollivier.hpp"

#include <algorithm>
#include <numeric>

#include "atcurv/errors.hpp"

namespace atcurv {

Measure mu_p(const Graph& g, int x, const Rational& p) {
  if (!g.contains(x)) throw InvalidArgument("mu_p: vertex " + std::to_string(x) + " is not in the graph");
  if (p.sign() < 0 || p > Rational(1)) throw InvalidArgument("mu_p: idleness must lie in [0,1]");
  const int d = g.degree(x);
  if (d == 0) throw InvalidArgument("mu_p: vertex " + std::to_string(x) + " is isolated");
  std::vector<std::pair<int, Rational>> entries;
  entries.emplace_back(x, p);
  const Rational share = (Rational(1) - p) / Rational(d);
  for (int y : g.neighbors(x)) entries.emplace_back(y, share);
  return Measure(std::move(entries));
}

namespace {

void require_edge(const Graph& g, int x, int y) {
  if (!g.contains(x) || !g.contains(y) || !g.adjacent(x, y))
    throw InvalidArgument(std::to_string(x) + " " + std::to_string(y) + " is not an edge");
  if (!g.within_margin(x, 1) || !g.within_margin(y, 1))
    throw LocalityError("edge " + std::to_string(x) + " " + std::to_string(y) + " touches a truncation boundary");
}

Rational kappa_unchecked(const Graph& g, int x, int y, const Rational& p) {
  return Rational(1) - wasserstein1(g, mu_p(g, x, p), mu_p(g, y, p));
}

struct Line {
  Rational slope, intercept;
  Rational operator()(const Rational& p) const { return slope * p + intercept; }
};

Line through(const Rational& p0, const Rational& k0, const Rational& p1, const Rational& k1) {
  const Rational s = (k1 - k0) / (p1 - p0);
  return {s, k0 - s * p0};
}

Rational intersect(const Line& a, const Line& b) { return (b.intercept - a.intercept) / (a.slope - b.slope); }

}  // namespace

Rational kappa_p(const Graph& g, int x, int y, const Rational& p) {
  require_edge(g, x, y);
  return kappa_unchecked(g, x, y, p);
}

Rational kappa_lly(const Graph& g, int x, int y) {
  require_edge(g, x, y);
  const Rational star = Rational(1) / Rational(std::max(g.degree(x), g.degree(y)) + 1);
  const Rational value = kappa_unchecked(g, x, y, star) / (Rational(1) - star);
  const Rational mid = (star + Rational(1)) / Rational(2);
  const Rational check = kappa_unchecked(g, x, y, mid) / (Rational(1) - mid);
  if (!(value == check))
    throw StructureViolation("kappa_lly: κ_p/(1−p) differs at " + star.short_str() + " and " + mid.short_str());
  return value;
}

std::vector<Rational> KappaCurve::breakpoints() const {
  std::vector<Rational> out;
  for (const auto& s : segments) out.push_back(s.from);
  if (!segments.empty()) out.push_back(segments.back().to);
  return out;
}

Rational KappaCurve::operator()(const Rational& p) const {
  for (const auto& s : segments)
    if (p <= s.to) return s.slope * p + s.intercept;
  throw InvalidArgument("KappaCurve: p outside [0,1]");
}

KappaCurve kappa_curve(const Graph& g, int x, int y) {
  require_edge(g, x, y);
  const int dx = g.degree(x), dy = g.degree(y);
  const Rational one(1);
  const Rational p1 = one / Rational(std::lcm(dx, dy) + 1);
  const Rational p2 = one / Rational(std::max(dx, dy) + 1);
  auto kappa = [&](const Rational& p) { return kappa_unchecked(g, x, y, p); };
  auto fail = [](const std::string& what) { throw StructureViolation("kappa_curve: " + what); };

  const Rational k0 = kappa(Rational(0)), k1 = kappa(p1), k2 = kappa(p2), kend = kappa(one);
  if (!kend.is_zero()) fail("κ at p = 1 is " + kend.short_str());

  auto verify = [&](const Line& l, const Rational& a, const Rational& b) {
    for (const Rational& t : {(a + b) / Rational(2), a + (b - a) / Rational(3)})
      if (!(kappa(t) == l(t))) fail("κ is not affine on [" + a.short_str() + ", " + b.short_str() + "]");
  };

  std::vector<KappaSegment> pieces;
  const Line first = through(Rational(0), k0, p1, k1);
  verify(first, Rational(0), p1);
  const Line last = through(p2, k2, one, kend);
  verify(last, p2, one);
  pieces.push_back({Rational(0), p1, first.slope, first.intercept});

  if (p1 < p2) {
    const Line middle = through(p1, k1, p2, k2);
    const Rational mid = (p1 + p2) / Rational(2);
    if (kappa(mid) == middle(mid)) {
      verify(middle, p1, p2);
      pieces.push_back({p1, p2, middle.slope, middle.intercept});
    } else if (!(first.slope == last.slope)) {
      // Kinks inside (p1, p2): either first and last meet there, or a third
      // piece sits between them.
      const Rational q = intersect(first, last);
      if (!(p1 < q && q < p2)) fail("pieces do not meet inside the middle interval");
      const Rational kq = kappa(q);
      if (kq == first(q)) {
        verify(first, p1, q);
        verify(last, q, p2);
        pieces.back().to = q;
        pieces.push_back({q, p2, last.slope, last.intercept});
      } else {
        Rational s = (p1 + q) / Rational(2);
        bool found = false;
        for (int i = 0; i < 64 && !found; ++i) {
          found = kappa(s) < first(s);
          if (!found) s = (s + q) / Rational(2);
        }
        if (!found) fail("could not locate the middle piece");
        const Line l2 = through(s, kappa(s), q, kq);
        const Rational r1 = intersect(first, l2), r2 = intersect(l2, last);
        if (!(p1 <= r1 && r1 < r2 && r2 <= p2)) fail("middle piece is inconsistent");
        if (p1 < r1) verify(first, p1, r1);
        verify(l2, r1, r2);
        if (r2 < p2) verify(last, r2, p2);
        pieces.back().to = r1;
        pieces.push_back({r1, r2, l2.slope, l2.intercept});
        pieces.push_back({r2, p2, last.slope, last.intercept});
      }
    } else {
      fail("κ is not affine between parallel pieces");
    }
  }
  pieces.push_back({pieces.back().to, one, last.slope, last.intercept});

  // Merge collinear neighbours and drop empty pieces.
  KappaCurve curve;
  for (const auto& s : pieces) {
    if (!(s.from < s.to)) continue;
    if (!curve.segments.empty() && curve.segments.back().slope == s.slope &&
        curve.segments.back().intercept == s.intercept) {
      curve.segments.back().to = s.to;
      continue;
    }
    curve.segments.push_back(s);
  }
  for (std::size_t i = 1; i < curve.segments.size(); ++i) {
    const auto& a = curve.segments[i - 1];
    const auto& b = curve.segments[i];
    if (!(a.slope * a.to + a.intercept == b.slope * b.from + b.intercept)) fail("curve is discontinuous");
    if (!(b.slope < a.slope)) fail("curve is not concave");
  }
  if (curve.segments.size() > 3) fail("more than three linear pieces");
  return curve;
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace {

Rational R(long v) { return Rational(v); }

struct RootSizes {
  long a, b, c;
};

RootSizes sizes3(const AntitreeSpec& spec, int k) {
  return {spec.size_of(k), spec.size_of(k + 1), spec.size_of(k + 2)};
}

[[noreturn]] void unsupported(EdgeClass cls, int k, const std::string& why) {
  throw UnsupportedCase(to_string(cls) + " edge at generation " + std::to_string(k) + ": " + why);
}

void require_root(const AntitreeSpec& spec, EdgeClass cls, int k) {
  if (k != 1 || spec.first_generation != 1) unsupported(cls, k, "root edges need x in V_1");
}

}  // namespace

Rational main_theorem_radial_root(int a2, int a3, const Rational& p) {
  const Rational b(a2), c(a3);
  if (p <= Rational(1) / (b + c + Rational(1))) return (b - Rational(1)) / (b + c) + (b + Rational(2) * c + Rational(1)) / (b + c) * p;
  return (b + Rational(1)) / (b + c) * (Rational(1) - p);
}

std::vector<Rational> antitree_kappa_breakpoints(const AntitreeSpec& spec, EdgeClass cls, int k) {
  switch (cls) {
    case EdgeClass::RadialRoot: {
      require_root(spec, cls, k);
      const auto [a, b, c] = sizes3(spec, 1);
      if (!(1 <= a && a <= b && b <= c)) unsupported(cls, k, "needs 1 <= a <= b <= c");
      if (a == 1) return {R(1) / R(b + c + 1)};
      if (a >= 3 || b < c) return {R(1) / R(a + b + c)};
      return {R(1) / R((2 * b + 1) * (b + 1) + 1), R(1) / R(2 * (b + 1))};
    }
    case EdgeClass::InnerRadial: {
      (void)antitree_kappa_oracle(spec, cls, k, Rational(0));
      return {};
    }
    case EdgeClass::SphericalRoot: {
      require_root(spec, cls, k);
      const long a = spec.size_of(1), b = spec.size_of(2);
      if (!(2 <= a && a <= b)) unsupported(cls, k, "needs 2 <= a <= b");
      return {R(1) / R(a + b)};
    }
    case EdgeClass::InnerSpherical: {
      if (k < 2) unsupported(cls, k, "inner edges need k >= 2");
      const long a = spec.size_of(k - 1), b = spec.size_of(k), c = spec.size_of(k + 1);
      if (!(1 <= a && a <= b && b <= c && b >= 2)) unsupported(cls, k, "needs 1 <= a <= b <= c and b >= 2");
      return {R(1) / R(a + b + c)};
    }
  }
  unsupported(cls, k, "unknown class");
}

KappaOracle antitree_kappa_oracle(const AntitreeSpec& spec, EdgeClass cls, int k, const Rational& p) {
  if (p.sign() < 0 || p > Rational(1)) throw InvalidArgument("oracle: idleness must lie in [0,1]");
  const Rational one(1);
  const Rational q = one - p;
  switch (cls) {
    case EdgeClass::RadialRoot: {
      require_root(spec, cls, k);
      const auto [a, b, c] = sizes3(spec, 1);
      if (!(1 <= a && a <= b && b <= c)) unsupported(cls, k, "needs 1 <= a <= b <= c");
      if (a == 1) {
        const Rational s(b + c);
        const Rational v = p <= one / R(b + c + 1) ? R(b - 1) / s + R(b + 2 * c + 1) / s * p : R(b + 1) / s * q;
        return {v, "radial-root(a)"};
      }
      if (a >= 3 || b < c) {
        const Rational den = R((a + b - 1) * (a + b + c - 1));
        const Rational v = p <= one / R(a + b + c)
                               ? (R((a + b - 1) * (a + b - 1) - c * (a - 1)) + R(c * (b + 2 * a - 2)) * p) / den
                               : R((a + b) * (a + b - 1) - c * (a - 1)) * q / den;
        return {v, "radial-root(b)"};
      }
      const Rational den = R((2 * b + 1) * (b + 1));
      Rational v;
      if (p <= one / R((2 * b + 1) * (b + 1) + 1))
        v = R(b) / R(2 * b + 1) + R(3 * b + 2) / R(2 * b + 1) * p;
      else if (p <= one / R(2 * (b + 1)))
        v = R(b * b + b + 1) / den + R(b * b + 2 * b) / den * p;
      else
        v = R(b * b + 2 * b + 2) / den * q;
      return {v, "radial-root(c)"};
    }
    case EdgeClass::InnerRadial: {
      if (k < 2) unsupported(cls, k, "inner edges need k >= 2");
      const long a = spec.size_of(k - 1), b = spec.size_of(k), c = spec.size_of(k + 1), d = spec.size_of(k + 2);
      if (!(1 <= a && a <= b && b <= c && c <= d)) unsupported(cls, k, "needs 1 <= a <= b <= c <= d");
      const Rational v = (R(2 * b + c - 1) / R(b + c + d - 1) - R(2 * a + b - 1) / R(a + b + c - 1)) * q;
      return {v, "inner-radial"};
    }
    case EdgeClass::SphericalRoot: {
      require_root(spec, cls, k);
      const long a = spec.size_of(1), b = spec.size_of(2);
      if (!(2 <= a && a <= b)) unsupported(cls, k, "needs 2 <= a <= b");
      const Rational s(a + b - 1);
      const Rational v = p <= one / R(a + b) ? R(a + b - 2) / s + R(a + b) / s * p : R(a + b) / s * q;
      return {v, "spherical-root"};
    }
    case EdgeClass::InnerSpherical: {
      if (k < 2) unsupported(cls, k, "inner edges need k >= 2");
      const long a = spec.size_of(k - 1), b = spec.size_of(k), c = spec.size_of(k + 1);
      if (!(1 <= a && a <= b && b <= c && b >= 2)) unsupported(cls, k, "needs 1 <= a <= b <= c and b >= 2");
      const Rational s(a + b + c - 1);
      const Rational v = p <= one / R(a + b + c) ? R(a + b + c - 2) / s + R(a + b + c) / s * p : R(a + b + c) / s * q;
      return {v, "spherical-inner"};
    }
  }
  unsupported(cls, k, "unknown class");
}

Rational linear_growth_kappa0(int t, EdgeClass cls, int k) {
  if (t < 1) throw InvalidArgument("linear growth: t must be >= 1");
  const long tt = t, kk = k;
  switch (cls) {
    case EdgeClass::RadialRoot:
      return R(tt) / R(3 * tt + 2);
    case EdgeClass::InnerRadial:
      if (k < 2) break;
      return R(6 * tt * tt) / R((3 * kk * tt + 2) * (3 * kk * tt + 2 - 3 * tt));
    case EdgeClass::InnerSpherical:
      if (k < 2) break;
      return R(1) - R(1) / R(3 * kk * tt + 2 - 3 * tt);
    case EdgeClass::SphericalRoot:
      break;
  }
  throw UnsupportedCase("linear growth: no formula for this edge class at generation " + std::to_string(k));
}

Rational exponential_growth_kappa0(int r, EdgeClass cls, int k) {
  if (r < 1) throw InvalidArgument("exponential growth: r must be >= 1");
  const Rational rr(r);
  switch (cls) {
    case EdgeClass::RadialRoot:
      return (rr - R(1)) / (rr * (rr + R(1)));
    case EdgeClass::InnerRadial: {
      if (k < 2) break;
      const auto pw = [&](int e) { return pow(rr, static_cast<unsigned>(e)); };
      const Rational num = (rr - R(1)) * (rr - R(1)) * (rr + R(1)) * pw(k - 2);
      const Rational den = (pw(k) + pw(k - 1) + pw(k - 2) - R(1)) * (pw(k + 1) + pw(k) + pw(k - 1) - R(1));
      return num / den;
    }
    case EdgeClass::InnerSpherical: {
      if (k < 2) break;
      const auto pw = [&](int e) { return pow(rr, static_cast<unsigned>(e)); };
      return R(1) - R(1) / (pw(k) + pw(k - 1) + pw(k - 2) - R(1));
    }
    case EdgeClass::SphericalRoot:
      break;
  }
  throw UnsupportedCase("exponential growth: no formula for this edge class at generation " + std::to_string(k));
}

std::optional<std::pair<int, int>> representative_edge(const Graph& g, EdgeClass cls, int k) {
  if (!g.has_generations()) throw InvalidArgument("representative_edge: graph has no generations");
  const auto& spec = *g.antitree();
  const bool root = spec.first_generation == 1 && k == 1;
  const bool want_root = cls == EdgeClass::RadialRoot || cls == EdgeClass::SphericalRoot;
  if (root != want_root) return std::nullopt;
  const auto here = g.generation_vertices(k);
  if (here.empty()) return std::nullopt;
  if (cls == EdgeClass::RadialRoot || cls == EdgeClass::InnerRadial) {
    const auto next = g.generation_vertices(k + 1);
    if (next.empty()) return std::nullopt;
    return std::make_pair(here.front(), next.front());
  }
  if (here.size() < 2) return std::nullopt;
  return std::make_pair(here[0], here[1]);
}

}  // namespace atcurv
