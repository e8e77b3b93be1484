#include "atcurv/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "atcurv/errors.hpp"

namespace atcurv {

Measure::Measure(std::vector<std::pair<int, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total(0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw InvalidArgument("measure: vertex " + std::to_string(entries[i].first) + " listed twice");
    if (entries[i].second.sign() < 0) throw InvalidArgument("measure: negative weight");
    total += entries[i].second;
    if (!entries[i].second.is_zero()) entries_.push_back(std::move(entries[i]));
  }
  if (!(total == Rational(1))) throw InvalidArgument("measure: weights sum to " + total.short_str() + ", not 1");
}

std::vector<int> Measure::support() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

Rational Measure::operator[](int v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v, [](const auto& e, int key) { return e.first < key; });
  return (it != entries_.end() && it->first == v) ? it->second : Rational(0);
}

Rational TransportPlan::cost(const Graph& g) const {
  Rational total(0);
  for (const auto& [cell, f] : flows)
    if (cell.first != cell.second) total += f * Rational(distance(g, cell.first, cell.second));
  return total;
}

bool TransportPlan::has_marginals(const Measure& mu1, const Measure& mu2) const {
  std::map<int, Rational> rows, cols;
  for (const auto& [cell, f] : flows) {
    if (f.sign() < 0) return false;
    rows[cell.first] += f;
    cols[cell.second] += f;
  }
  auto matches = [](std::map<int, Rational>& sums, const Measure& mu) {
    for (const auto& [v, w] : mu.entries()) {
      auto it = sums.find(v);
      if (it == sums.end() || !(it->second == w)) return false;
      sums.erase(it);
    }
    for (const auto& [v, s] : sums)
      if (!s.is_zero()) return false;
    return true;
  };
  return matches(rows, mu1) && matches(cols, mu2);
}

namespace {

// BFS from `source` until every vertex in `targets` is reached.
std::unordered_map<int, int> bfs_to_targets(const Graph& g, int source, const std::unordered_set<int>& targets) {
  std::unordered_map<int, int> dist;
  std::vector<int> seen(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<int> q;
  seen[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  std::size_t found = 0;
  if (targets.count(source)) {
    dist[source] = 0;
    ++found;
  }
  while (!q.empty() && found < targets.size()) {
    const int u = q.front();
    q.pop();
    for (int w : g.neighbors(u)) {
      if (seen[static_cast<std::size_t>(w)] >= 0) continue;
      seen[static_cast<std::size_t>(w)] = seen[static_cast<std::size_t>(u)] + 1;
      if (targets.count(w)) {
        dist[w] = seen[static_cast<std::size_t>(w)];
        ++found;
      }
      q.push(w);
    }
  }
  if (found < targets.size()) throw Unreachable("measure supports are not in one connected component");
  return dist;
}

template <class F>
struct SimplexOutput {
  std::vector<int> basis;
  std::vector<F> flow;  // per basis cell
  std::vector<long long> u, v;
  long pivots = 0;
};

// Balanced transportation problem min Σ c_ij x_ij with integer costs.
template <class F>
SimplexOutput<F> transportation_simplex(int m, int n, const std::vector<long long>& cost, std::vector<F> supply,
                                        std::vector<F> demand) {
  const auto cell = [n](int i, int j) { return i * n + j; };
  SimplexOutput<F> out;

  // Least-cost start; one row or column is retired per allocation, which
  // yields exactly m + n − 1 basic cells forming a spanning tree.
  std::vector<int> order(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cost[static_cast<std::size_t>(a)] < cost[static_cast<std::size_t>(b)]; });
  std::vector<char> row_done(static_cast<std::size_t>(m), 0), col_done(static_cast<std::size_t>(n), 0);
  int rows_left = m, cols_left = n;
  std::vector<int> where(order.size(), -1);  // cell → position in basis
  for (int c : order) {
    if (cols_left == 0) break;
    const int i = c / n, j = c % n;
    if (row_done[static_cast<std::size_t>(i)] || col_done[static_cast<std::size_t>(j)]) continue;
    F& s = supply[static_cast<std::size_t>(i)];
    F& d = demand[static_cast<std::size_t>(j)];
    const F x = s < d ? s : d;
    where[static_cast<std::size_t>(c)] = static_cast<int>(out.basis.size());
    out.basis.push_back(c);
    out.flow.push_back(x);
    s -= x;
    d -= x;
    if (s == F(0) && rows_left > 1) {
      row_done[static_cast<std::size_t>(i)] = 1;
      --rows_left;
    } else {
      col_done[static_cast<std::size_t>(j)] = 1;
      --cols_left;
    }
  }
  if (static_cast<int>(out.basis.size()) != m + n - 1) throw NumericalFailure("transport: initial basis has wrong size");

  const int nodes = m + n;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  std::vector<int> parent_cell(static_cast<std::size_t>(nodes)), parent(static_cast<std::size_t>(nodes)),
      depth(static_cast<std::size_t>(nodes));
  out.u.assign(static_cast<std::size_t>(m), 0);
  out.v.assign(static_cast<std::size_t>(n), 0);
  bool bland = false;
  int degenerate_run = 0;
  constexpr int kDegenerateLimit = 50;

  for (;;) {
    // Duals from the basis tree rooted at row 0.
    for (auto& a : adj) a.clear();
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
      const int c = out.basis[k];
      adj[static_cast<std::size_t>(c / n)].push_back(static_cast<int>(k));
      adj[static_cast<std::size_t>(m + c % n)].push_back(static_cast<int>(k));
    }
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    parent[0] = -1;
    parent_cell[0] = -1;
    depth[0] = 0;
    out.u[0] = 0;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int k : adj[static_cast<std::size_t>(a)]) {
        const int c = out.basis[static_cast<std::size_t>(k)];
        const int i = c / n, j = c % n;
        const int b = (a < m) ? m + j : i;
        if (seen[static_cast<std::size_t>(b)]) continue;
        seen[static_cast<std::size_t>(b)] = 1;
        parent[static_cast<std::size_t>(b)] = a;
        parent_cell[static_cast<std::size_t>(b)] = k;
        depth[static_cast<std::size_t>(b)] = depth[static_cast<std::size_t>(a)] + 1;
        if (b >= m)
          out.v[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(c)] - out.u[static_cast<std::size_t>(i)];
        else
          out.u[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(c)] - out.v[static_cast<std::size_t>(j)];
        stack.push_back(b);
      }
    }

    int entering = -1;
    long long best = 0;
    for (int i = 0; i < m && !(bland && entering >= 0); ++i)
      for (int j = 0; j < n; ++j) {
        const int c = cell(i, j);
        if (where[static_cast<std::size_t>(c)] >= 0) continue;
        const long long r = cost[static_cast<std::size_t>(c)] - out.u[static_cast<std::size_t>(i)] - out.v[static_cast<std::size_t>(j)];
        if (r < best) {
          best = r;
          entering = c;
          if (bland) break;
        }
      }
    if (entering < 0) break;

    // Tree path row i → column j; the cycle closes through the entering cell.
    const int ei = entering / n, ej = entering % n;
    std::vector<int> from_row, from_col;
    int a = ei, b = m + ej;
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
        from_row.push_back(parent_cell[static_cast<std::size_t>(a)]);
        a = parent[static_cast<std::size_t>(a)];
      } else {
        from_col.push_back(parent_cell[static_cast<std::size_t>(b)]);
        b = parent[static_cast<std::size_t>(b)];
      }
    }
    std::vector<int> path = std::move(from_row);
    path.insert(path.end(), from_col.rbegin(), from_col.rend());

    // Odd positions along the path lose flow.
    int leave = -1;
    for (std::size_t t = 0; t < path.size(); t += 2) {
      const int k = path[t];
      if (leave < 0) {
        leave = k;
        continue;
      }
      const F& fk = out.flow[static_cast<std::size_t>(k)];
      const F& fl = out.flow[static_cast<std::size_t>(leave)];
      if (fk < fl || (fk == fl && out.basis[static_cast<std::size_t>(k)] < out.basis[static_cast<std::size_t>(leave)])) leave = k;
    }
    const F theta = out.flow[static_cast<std::size_t>(leave)];
    for (std::size_t t = 0; t < path.size(); ++t) {
      F& f = out.flow[static_cast<std::size_t>(path[t])];
      if (t % 2 == 0)
        f -= theta;
      else
        f += theta;
    }
    where[static_cast<std::size_t>(out.basis[static_cast<std::size_t>(leave)])] = -1;
    out.basis[static_cast<std::size_t>(leave)] = entering;
    out.flow[static_cast<std::size_t>(leave)] = theta;
    where[static_cast<std::size_t>(entering)] = leave;
    ++out.pivots;

    if (theta == F(0)) {
      if (++degenerate_run > kDegenerateLimit) bland = true;
    } else {
      degenerate_run = 0;
    }
  }
  return out;
}

mpz_class to_mpz(const Rational& r) { return r.numerator(); }

}  // namespace

TransportResult solve_transport(const Graph& g, const Measure& mu1, const Measure& mu2) {
  if (mu1.size() == 0 || mu2.size() == 0) throw InvalidArgument("transport: empty measure");
  for (const auto* mu : {&mu1, &mu2})
    for (const auto& [v, w] : mu->entries())
      if (!g.contains(v)) throw InvalidArgument("transport: vertex " + std::to_string(v) + " is not in the graph");

  std::map<int, Rational> diff;
  for (const auto& [v, w] : mu1.entries()) diff[v] += w;
  for (const auto& [v, w] : mu2.entries()) diff[v] -= w;

  TransportResult res;
  std::vector<int> sources, sinks, all;
  std::vector<Rational> surplus, deficit;
  for (const auto& [v, d] : diff) {
    all.push_back(v);
    const Rational common = std::min(mu1[v], mu2[v]);
    if (!common.is_zero()) res.plan.flows[{v, v}] = common;
    if (d.sign() > 0) {
      sources.push_back(v);
      surplus.push_back(d);
    } else if (d.sign() < 0) {
      sinks.push_back(v);
      deficit.push_back(-d);
    }
  }
  const std::unordered_set<int> everywhere(all.begin(), all.end());
  if (sources.empty()) {
    // Reachability is still part of the contract.
    bfs_to_targets(g, all.front(), everywhere);
    res.value = Rational(0);
    for (int v : all) res.potential[v] = Rational(0);
    return res;
  }

  const int m = static_cast<int>(sources.size());
  const int n = static_cast<int>(sinks.size());
  const bool from_rows = m <= n;
  const auto& bfs_side = from_rows ? sources : sinks;
  std::vector<std::unordered_map<int, int>> dist;
  dist.reserve(bfs_side.size());
  for (int s : bfs_side) dist.push_back(bfs_to_targets(g, s, everywhere));

  std::vector<long long> cost(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
          from_rows ? dist[static_cast<std::size_t>(i)].at(sinks[static_cast<std::size_t>(j)])
                    : dist[static_cast<std::size_t>(j)].at(sources[static_cast<std::size_t>(i)]);

  mpz_class scale = 1;
  for (const auto& r : surplus) scale = lcm(scale, r.denominator());
  for (const auto& r : deficit) scale = lcm(scale, r.denominator());
  const Rational scale_r{scale};

  std::vector<int> basis;
  std::vector<Rational> flow;
  std::vector<long long> u, v;
  const mpz_class limit = mpz_class(1) << 62;
  if (scale < limit) {
    std::vector<long long> s, d;
    for (const auto& r : surplus) s.push_back(to_mpz(r * scale_r).get_si());
    for (const auto& r : deficit) d.push_back(to_mpz(r * scale_r).get_si());
    auto out = transportation_simplex<long long>(m, n, cost, std::move(s), std::move(d));
    basis = std::move(out.basis);
    for (long long f : out.flow) flow.push_back(Rational(static_cast<long>(f)) / scale_r);
    u = std::move(out.u);
    v = std::move(out.v);
    res.pivots = out.pivots;
  } else {
    auto out = transportation_simplex<Rational>(m, n, cost, surplus, deficit);
    basis = std::move(out.basis);
    flow = std::move(out.flow);
    u = std::move(out.u);
    v = std::move(out.v);
    res.pivots = out.pivots;
  }

  res.value = Rational(0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (flow[k].is_zero()) continue;
    const int c = basis[k];
    const int i = c / n, j = c % n;
    res.plan.flows[{sources[static_cast<std::size_t>(i)], sinks[static_cast<std::size_t>(j)]}] += flow[k];
    res.value += flow[k] * Rational(static_cast<long>(cost[static_cast<std::size_t>(c)]));
  }

  // c-transform of the duals over the side whose distances are known.
  std::map<int, long long> phi;
  for (int z : all) {
    long long val = 0;
    bool first = true;
    for (std::size_t s = 0; s < bfs_side.size(); ++s) {
      const long long dz = dist[s].at(z);
      const long long cand = from_rows ? u[s] - dz : dz - v[s];
      if (first || (from_rows ? cand > val : cand < val)) val = cand;
      first = false;
    }
    phi[z] = val;
  }
  long long lo = std::numeric_limits<long long>::max();
  for (const auto& [z, p] : phi) lo = std::min(lo, p);
  for (const auto& [z, p] : phi) res.potential[z] = Rational(static_cast<long>(p - lo));
  return res;
}

}  // namespace atcurv
