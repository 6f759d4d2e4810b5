#include "hypertree/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypertree {

namespace {

// dynamic bitset sized at construction; enough machinery for clique and
// set-cover enumeration
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(int n = 0) : w(static_cast<std::size_t>((n + 63) / 64), 0) {}
  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63); }
  void reset(int i) { w[static_cast<std::size_t>(i >> 6)] &= ~(1ull << (i & 63)); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  int lowest() const {
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k]) return static_cast<int>(k * 64) + std::countr_zero(w[k]);
    return -1;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    return *this;
  }
  Bits and_not(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w.size(); ++k) r.w[k] &= ~o.w[k];
    return r;
  }
  int count_and(const Bits& o) const {
    int c = 0;
    for (std::size_t k = 0; k < w.size(); ++k) c += std::popcount(w[k] & o.w[k]);
    return c;
  }
  bool operator==(const Bits& o) const { return w == o.w; }
  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::uint64_t x = w[k];
      while (x) {
        out.push_back(static_cast<int>(k * 64) + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }
};

// exact maximum clique on <= 64 vertices, Tomita-style pivot + size bound
struct CliqueSolver64 {
  const std::vector<std::uint64_t>& adj;
  int best_size = 0;
  std::uint64_t best_set = 0;

  explicit CliqueSolver64(const std::vector<std::uint64_t>& a) : adj(a) {}

  void expand(std::uint64_t R, int rsize, std::uint64_t P) {
    if (!P) {
      if (rsize > best_size) {
        best_size = rsize;
        best_set = R;
      }
      return;
    }
    if (rsize + std::popcount(P) <= best_size) return;
    int pivot = -1, pivot_gain = -1;
    for (std::uint64_t q = P; q;) {
      int v = std::countr_zero(q);
      q &= q - 1;
      int gain = std::popcount(P & adj[static_cast<std::size_t>(v)]);
      if (gain > pivot_gain) {
        pivot_gain = gain;
        pivot = v;
      }
    }
    std::uint64_t cand = P & ~adj[static_cast<std::size_t>(pivot)];
    while (cand) {
      int v = std::countr_zero(cand);
      std::uint64_t bit = 1ull << v;
      cand &= cand - 1;
      expand(R | bit, rsize + 1, P & adj[static_cast<std::size_t>(v)]);
      P &= ~bit;
    }
  }
};

std::vector<int> bits_of_u64(std::uint64_t x) {
  std::vector<int> out;
  while (x) {
    out.push_back(std::countr_zero(x));
    x &= x - 1;
  }
  return out;
}

}  // namespace

double FiniteMetric::diameter() const {
  double best = 0;
  for (double v : d) best = std::max(best, v);
  return best;
}

double FiniteMetric::min_positive() const {
  double best = std::numeric_limits<double>::infinity();
  for (double v : d)
    if (v > 0) best = std::min(best, v);
  return std::isfinite(best) ? best : 0.0;
}

FiniteMetric FiniteMetric::from_visual(const VisualMetric& vm) {
  FiniteMetric m;
  m.n = vm.size();
  m.d = vm.dmat;
  return m;
}

PackingResult packing_count(const FiniteMetric& m, double alpha, double beta,
                            int exact_cap) {
  if (!(alpha > 0) || alpha > beta)
    throw std::invalid_argument("packing_count: need 0 < alpha <= beta");
  int n = m.n;
  PackingResult res;
  if (n == 0) return res;

  auto compatible = [&](int i, int j) {
    double dij = m(i, j);
    return dij >= alpha - kMetricTol && dij <= beta + kMetricTol;
  };

  if (n <= std::min(exact_cap, 64)) {
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && compatible(i, j)) adj[static_cast<std::size_t>(i)] |= 1ull << j;
    CliqueSolver64 solver(adj);
    std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
    solver.expand(0, 0, all);
    res.size = solver.best_size;
    res.witness = bits_of_u64(solver.best_set);
    res.exact = true;
    return res;
  }

  // greedy fallback: highest compatibility degree first
  std::vector<int> order(static_cast<std::size_t>(n));
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && compatible(i, j)) ++degree[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (degree[static_cast<std::size_t>(a)] != degree[static_cast<std::size_t>(b)])
      return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<int> chosen;
  for (int v : order) {
    bool ok = true;
    for (int u : chosen)
      if (!compatible(u, v)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(v);
  }
  std::sort(chosen.begin(), chosen.end());
  res.size = static_cast<int>(chosen.size());
  res.witness = std::move(chosen);
  res.exact = false;
  return res;
}

PackingReport assouad_estimate(const FiniteMetric& m,
                               const std::vector<std::pair<double, double>>& grid,
                               int exact_cap) {
  if (grid.size() < 4)
    throw std::invalid_argument("assouad_estimate: need at least 4 scale pairs");
  PackingReport rep;
  std::vector<double> xs, ys;
  for (auto [alpha, beta] : grid) {
    PackingResult p = packing_count(m, alpha, beta, exact_cap);
    rep.rows.push_back({alpha, beta, p.size, p.exact});
    xs.push_back(std::log(beta / alpha));
    ys.push_back(std::log(static_cast<double>(std::max(1, p.size))));
  }
  double min_x = *std::min_element(xs.begin(), xs.end());
  double max_x = *std::max_element(xs.begin(), xs.end());
  if (max_x - min_x < 1e-9)
    throw std::invalid_argument("assouad_estimate: need at least two distinct ratios");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto k = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  double intercept = (sy - slope * sx) / k;
  rep.fitted_exponent = slope;
  rep.fit_constant = std::exp(intercept);
  for (std::size_t i = 0; i < xs.size(); ++i)
    rep.residuals.push_back(ys[i] - (slope * xs[i] + intercept));
  return rep;
}

namespace {

struct CoverOutcome {
  int size = 0;
  std::vector<int> centers;  // candidate indices
  bool exact = true;
};

// exact minimum set cover via fail-first branch and bound; candidates are
// bitmasks over the ball being covered
CoverOutcome min_cover(const std::vector<Bits>& cand, const std::vector<int>& cand_center,
                       int universe, int exact_cap) {
  CoverOutcome out;
  if (universe == 0) return out;

  // greedy first: it seeds the bound and is the fallback
  {
    Bits covered(universe);
    std::vector<int> picks;
    while (covered.count() < universe) {
      int best = -1, gain = -1;
      for (std::size_t c = 0; c < cand.size(); ++c) {
        int g = static_cast<int>(cand[c].count()) - covered.count_and(cand[c]);
        if (g > gain) {
          gain = g;
          best = static_cast<int>(c);
        }
      }
      if (best < 0 || gain <= 0)
        throw std::logic_error("min_cover: candidates cannot cover the ball");
      covered |= cand[static_cast<std::size_t>(best)];
      picks.push_back(best);
    }
    out.size = static_cast<int>(picks.size());
    out.centers = picks;
  }

  if (static_cast<int>(cand.size()) > exact_cap) {
    out.exact = false;
    for (auto& c : out.centers) c = cand_center[static_cast<std::size_t>(c)];
    return out;
  }

  // which candidates cover each element
  std::vector<std::vector<int>> covers(static_cast<std::size_t>(universe));
  for (std::size_t c = 0; c < cand.size(); ++c)
    for (int e : cand[c].to_vector()) covers[static_cast<std::size_t>(e)].push_back(static_cast<int>(c));

  int best_size = out.size;
  std::vector<int> best_pick = out.centers;
  std::vector<int> stack;
  auto bnb = [&](auto&& self, const Bits& covered, int covered_count) -> void {
    if (covered_count == universe) {
      if (static_cast<int>(stack.size()) < best_size) {
        best_size = static_cast<int>(stack.size());
        best_pick = stack;
      }
      return;
    }
    if (static_cast<int>(stack.size()) + 1 >= best_size) return;
    // fail-first: the uncovered element with fewest remaining options
    int pick_e = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (int e = 0; e < universe; ++e) {
      if (covered.test(e)) continue;
      if (covers[static_cast<std::size_t>(e)].size() < fewest) {
        fewest = covers[static_cast<std::size_t>(e)].size();
        pick_e = e;
      }
    }
    for (int c : covers[static_cast<std::size_t>(pick_e)]) {
      Bits next = covered;
      next |= cand[static_cast<std::size_t>(c)];
      stack.push_back(c);
      self(self, next, next.count());
      stack.pop_back();
    }
  };
  Bits none(universe);
  bnb(bnb, none, 0);

  out.size = best_size;
  out.centers = best_pick;
  out.exact = true;
  for (auto& c : out.centers) c = cand_center[static_cast<std::size_t>(c)];
  std::sort(out.centers.begin(), out.centers.end());
  return out;
}

}  // namespace

DoublingReport doubling_kappa(const FiniteMetric& m, const std::vector<double>& radii,
                              int exact_cover_cap) {
  if (radii.empty()) throw std::invalid_argument("doubling_kappa: no radii");
  for (double r : radii)
    if (!(r > 0)) throw std::invalid_argument("doubling_kappa: radii must be positive");

  DoublingReport rep;
  int worst_overall = 1;
  for (double r : radii) {
    DoublingReport::ScaleRow row;
    row.r = r;
    row.worst_cover = 0;
    row.exact = true;
    for (int c = 0; c < m.n; ++c) {
      std::vector<int> ball;
      for (int x = 0; x < m.n; ++x)
        if (m(c, x) <= r + kMetricTol) ball.push_back(x);
      int u = static_cast<int>(ball.size());
      // candidate half-balls, one per space point, deduplicated
      std::vector<Bits> cand;
      std::vector<int> cand_center;
      for (int y = 0; y < m.n; ++y) {
        Bits b(u);
        bool nonempty = false;
        for (int i = 0; i < u; ++i)
          if (m(y, ball[static_cast<std::size_t>(i)]) <= r / 2 + kMetricTol) {
            b.set(i);
            nonempty = true;
          }
        if (!nonempty) continue;
        bool dup = false;
        for (const auto& other : cand)
          if (other == b) {
            dup = true;
            break;
          }
        if (!dup) {
          cand.push_back(std::move(b));
          cand_center.push_back(y);
        }
      }
      CoverOutcome cover = min_cover(cand, cand_center, u, exact_cover_cap);
      row.exact = row.exact && cover.exact;
      if (cover.size > row.worst_cover) row.worst_cover = cover.size;
      if (cover.size > worst_overall ||
          (cover.size == worst_overall && rep.worst.center < 0)) {
        worst_overall = cover.size;
        rep.worst.r = r;
        rep.worst.center = c;
        rep.worst.cover_size = cover.size;
        rep.worst.cover_centers = cover.centers;
        rep.worst.exact = cover.exact;
      }
    }
    rep.per_scale.push_back(row);
  }

  int kappa = 0;
  while ((1ll << kappa) < worst_overall) ++kappa;
  rep.kappa = kappa;
  rep.N = 1ull << kappa;
  return rep;
}

BallCover ls23_cover(const FiniteMetric& m, double r, int kappa,
                     const std::vector<int>& seed_set, const TieOrder& order) {
  if (!(r > 0)) throw std::invalid_argument("ls23_cover: radius must be positive");
  if (kappa < 0) throw std::invalid_argument("ls23_cover: negative kappa");

  auto within = [&](int a, int b, double rad) { return m(a, b) <= rad + kMetricTol; };

  std::vector<char> is_seed(static_cast<std::size_t>(m.n), 0);
  for (int y : seed_set) {
    if (y < 0 || y >= m.n) throw std::invalid_argument("ls23_cover: seed out of range");
    if (is_seed[static_cast<std::size_t>(y)])
      throw std::invalid_argument("ls23_cover: duplicate seed " + std::to_string(y));
    is_seed[static_cast<std::size_t>(y)] = 1;
  }
  for (std::size_t a = 0; a < seed_set.size(); ++a)
    for (std::size_t b = a + 1; b < seed_set.size(); ++b)
      if (within(seed_set[a], seed_set[b], r))
        throw std::invalid_argument("ls23_cover: seeds " + std::to_string(seed_set[a]) +
                                    " and " + std::to_string(seed_set[b]) +
                                    " are not separated by more than the radius");

  BallCover cover;
  cover.r = r;
  cover.kappa = kappa;
  cover.centers = seed_set;

  std::vector<int> scan(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) scan[static_cast<std::size_t>(i)] = i;
  order.sort_ids(scan);
  for (int p : scan) {
    if (is_seed[static_cast<std::size_t>(p)]) continue;
    bool separated = true;
    for (int c : cover.centers)
      if (within(p, c, r)) {
        separated = false;
        break;
      }
    if (separated) cover.centers.push_back(p);
  }

  // greedy colouring: same colour requires center distance > 3r
  int palette = 1 << std::min(kappa, 30);
  cover.color.assign(cover.centers.size(), -1);
  for (std::size_t i = 0; i < cover.centers.size(); ++i) {
    std::vector<char> used(static_cast<std::size_t>(palette), 0);
    int conflicts = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (within(cover.centers[i], cover.centers[j], 3 * r)) {
        used[static_cast<std::size_t>(cover.color[j])] = 1;
        ++conflicts;
      }
    int col = 0;
    while (col < palette && used[static_cast<std::size_t>(col)]) ++col;
    if (col >= palette)
      throw std::runtime_error(
          "ls23_cover: center " + std::to_string(cover.centers[i]) + " has " +
          std::to_string(conflicts) + " conflicts within 3r; more than 2^kappa = " +
          std::to_string(palette) + " colour families would be needed");
    cover.color[i] = col;
  }

  for (int c : cover.centers) {
    std::vector<int> members;
    for (int x = 0; x < m.n; ++x)
      if (within(c, x, r)) members.push_back(x);
    cover.balls.push_back(std::move(members));
  }

  // certificates, recomputed from the finished cover
  cover.cert.cover_ok = true;
  for (int x = 0; x < m.n; ++x) {
    bool covered = false;
    for (int c : cover.centers)
      if (within(c, x, r)) {
        covered = true;
        break;
      }
    if (!covered) cover.cert.cover_ok = false;
  }
  cover.cert.separation_ok = true;
  for (std::size_t i = 0; i < cover.centers.size(); ++i)
    for (std::size_t j = i + 1; j < cover.centers.size(); ++j)
      if (within(cover.centers[i], cover.centers[j], r)) cover.cert.separation_ok = false;
  cover.cert.seed_included = cover.centers.size() >= seed_set.size() &&
                             std::equal(seed_set.begin(), seed_set.end(), cover.centers.begin());

  int colours_used = 0;
  for (int c : cover.color) colours_used = std::max(colours_used, c + 1);
  cover.cert.per_color_multiplicity.assign(static_cast<std::size_t>(colours_used), 0);
  for (int col = 0; col < colours_used; ++col) {
    std::vector<std::vector<int>> family;
    for (std::size_t i = 0; i < cover.centers.size(); ++i)
      if (cover.color[i] == col) family.push_back(cover.balls[i]);
    cover.cert.per_color_multiplicity[static_cast<std::size_t>(col)] =
        r_multiplicity(m, family, r).value;
  }
  cover.cert.total_multiplicity = r_multiplicity(m, cover.balls, r).value;
  return cover;
}

RMultiplicityResult r_multiplicity(const FiniteMetric& m,
                                   const std::vector<std::vector<int>>& family, double r) {
  if (r < 0) throw std::invalid_argument("r_multiplicity: negative radius");
  RMultiplicityResult res;
  if (family.empty() || m.n == 0) return res;

  int n = m.n;
  std::vector<Bits> adj(static_cast<std::size_t>(n), Bits(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && m(i, j) <= r + kMetricTol) adj[static_cast<std::size_t>(i)].set(j);

  std::vector<Bits> member_mask;
  member_mask.reserve(family.size());
  for (const auto& set : family) {
    Bits b(n);
    for (int p : set) {
      if (p < 0 || p >= n)
        throw std::invalid_argument("r_multiplicity: member point out of range");
      b.set(p);
    }
    member_mask.push_back(std::move(b));
  }

  auto score = [&](const Bits& clique) {
    std::vector<int> hit;
    for (std::size_t i = 0; i < member_mask.size(); ++i)
      if (clique.count_and(member_mask[i]) > 0) hit.push_back(static_cast<int>(i));
    return hit;
  };

  std::uint64_t visited = 0;
  constexpr std::uint64_t kCliqueBudget = 1ull << 21;

  // Bron-Kerbosch with pivoting over the "distance <= r" graph
  auto bk = [&](auto&& self, Bits R, Bits P, Bits X) -> void {
    if (++visited > kCliqueBudget)
      throw std::runtime_error("r_multiplicity: clique enumeration budget exceeded");
    if (!P.any() && !X.any()) {
      std::vector<int> hit = score(R);
      if (static_cast<int>(hit.size()) > res.value) {
        res.value = static_cast<int>(hit.size());
        res.witness_points = R.to_vector();
        res.witness_members = std::move(hit);
      }
      return;
    }
    int pivot = -1, gain = -1;
    for (int v = 0; v < n; ++v) {
      if (!P.test(v) && !X.test(v)) continue;
      int g = P.count_and(adj[static_cast<std::size_t>(v)]);
      if (g > gain) {
        gain = g;
        pivot = v;
      }
    }
    Bits cand = P.and_not(adj[static_cast<std::size_t>(pivot)]);
    for (int v = cand.lowest(); v >= 0; v = cand.lowest()) {
      cand.reset(v);
      Bits R2 = R;
      R2.set(v);
      Bits P2 = P;
      P2 &= adj[static_cast<std::size_t>(v)];
      Bits X2 = X;
      X2 &= adj[static_cast<std::size_t>(v)];
      self(self, R2, P2, X2);
      P.reset(v);
      X.set(v);
    }
  };
  bk(bk, Bits(n), [&] {
    Bits all(n);
    for (int i = 0; i < n; ++i) all.set(i);
    return all;
  }(), Bits(n));
  return res;
}

int point_multiplicity(const FiniteMetric& m, const std::vector<std::vector<int>>& family,
                       double r, int point) {
  if (point < 0 || point >= m.n)
    throw std::invalid_argument("point_multiplicity: point out of range");
  int count = 0;
  for (const auto& set : family) {
    for (int p : set)
      if (m(point, p) <= r + kMetricTol) {
        ++count;
        break;
      }
  }
  return count;
}

}  // namespace hypertree
