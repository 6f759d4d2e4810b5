#include "hypertree/gromov.hpp"

#include "hypertree/util.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hypertree {

namespace {

// max over z of min(P[x][z], P[z][y]) minus P[x][y], maximised over (x,y) in
// [lo,hi) x [0,n). Returns the maximum slack and its (x,y) witness. P must be
// a contiguous n*n int16 matrix. This is the hot kernel of the module; the
// inner loop runs over a contiguous row so it vectorises.
int four_point_scan(const std::int16_t* P, int n, int lo, int hi, int& wx, int& wy,
                    std::vector<std::int16_t>& best) {
  int max_slack = std::numeric_limits<int>::min();
  wx = wy = -1;
  best.assign(static_cast<std::size_t>(n), std::numeric_limits<std::int16_t>::min());
  for (int x = lo; x < hi; ++x) {
    std::int16_t* b = best.data();
    const std::int16_t* px = P + static_cast<std::size_t>(x) * static_cast<std::size_t>(n);
    std::fill(b, b + n, std::numeric_limits<std::int16_t>::min());
    for (int z = 0; z < n; ++z) {
      const std::int16_t a = px[z];
      const std::int16_t* rz = P + static_cast<std::size_t>(z) * static_cast<std::size_t>(n);
      for (int y = 0; y < n; ++y) {
        std::int16_t m = rz[y] < a ? rz[y] : a;
        if (m > b[y]) b[y] = m;
      }
    }
    for (int y = 0; y < n; ++y) {
      int s = static_cast<int>(b[y]) - static_cast<int>(px[y]);
      if (s > max_slack) {
        max_slack = s;
        wx = x;
        wy = y;
      }
    }
  }
  return max_slack;
}

int recover_z(const std::int16_t* P, int n, int x, int y) {
  int best = std::numeric_limits<int>::min(), arg = -1;
  const std::int16_t* px = P + static_cast<std::size_t>(x) * static_cast<std::size_t>(n);
  const std::int16_t* py = P + static_cast<std::size_t>(y) * static_cast<std::size_t>(n);
  for (int z = 0; z < n; ++z) {
    int m = std::min<int>(px[z], py[z]);
    if (m > best) {
      best = m;
      arg = z;
    }
  }
  return arg;
}

std::vector<std::int16_t> submatrix(const GromovTable& t, const std::vector<int>& ids) {
  int m = static_cast<int>(ids.size());
  std::vector<std::int16_t> sub(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::int16_t* src = t.row(ids[static_cast<std::size_t>(i)]);
    std::int16_t* dst = sub.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
    for (int j = 0; j < m; ++j) dst[j] = src[ids[static_cast<std::size_t>(j)]];
  }
  return sub;
}

}  // namespace

std::vector<int> stratified_vertex_sample(const DistanceOracle& d, int base, int cap,
                                          std::uint64_t seed) {
  int n = d.size();
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) ids[static_cast<std::size_t>(v)] = v;
  if (n <= cap) return ids;
  const std::uint16_t* db = d.row(base);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (db[a] != db[b]) return db[a] < db[b];
    return a < b;
  });
  int stride = (n + cap - 1) / cap;
  int offset = static_cast<int>(mix64(seed) % static_cast<std::uint64_t>(stride));
  std::vector<int> sample;
  sample.reserve(static_cast<std::size_t>(cap));
  for (int i = offset; i < n; i += stride) sample.push_back(ids[static_cast<std::size_t>(i)]);
  std::sort(sample.begin(), sample.end());
  return sample;
}

GromovTable gromov_table(const DistanceOracle& d, int base, int exhaustive_cap,
                         std::uint64_t seed, int threads) {
  int n = d.size();
  if (base < 0 || base >= n) throw std::invalid_argument("gromov_table: base out of range");
  if (exhaustive_cap < 2) throw std::invalid_argument("gromov_table: cap too small");

  GromovTable t;
  t.base_ = base;
  t.n_ = n;
  t.p_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);

  const std::uint16_t* db = d.row(base);
  threads = effective_threads(threads);
  parallel_for(n, threads, [&](int lo, int hi) {
    for (int x = lo; x < hi; ++x) {
      const std::uint16_t* dx = d.row(x);
      std::int16_t* px = t.p_.data() + static_cast<std::size_t>(x) * static_cast<std::size_t>(n);
      int dbx = db[x];
      for (int y = 0; y < n; ++y) {
        int v = dbx + static_cast<int>(db[y]) - static_cast<int>(dx[y]);
        px[y] = static_cast<std::int16_t>(v);
      }
    }
  });

  std::vector<int> sample = stratified_vertex_sample(d, base, exhaustive_cap, seed);
  bool exhaustive = static_cast<int>(sample.size()) == n;
  t.scan_.exhaustive = exhaustive;
  t.scan_.sample_size = static_cast<int>(sample.size());
  t.scan_.seed = seed;
  t.scan_.description = exhaustive ? "all triples"
                                   : "triples over a stratified vertex sample";

  const std::int16_t* P = t.p_.data();
  std::vector<std::int16_t> sub;
  int m = n;
  if (!exhaustive) {
    sub = submatrix(t, sample);
    P = sub.data();
    m = static_cast<int>(sample.size());
  }

  std::vector<std::int16_t> scratch;
  int wx = -1, wy = -1;
  int slack = four_point_scan(P, m, 0, m, wx, wy, scratch);
  t.delta2x_ = std::max(0, slack);
  if (wx >= 0) {
    int wz = recover_z(P, m, wx, wy);
    TripleWitness w;
    w.x = exhaustive ? wx : sample[static_cast<std::size_t>(wx)];
    w.y = exhaustive ? wy : sample[static_cast<std::size_t>(wy)];
    w.z = exhaustive ? wz : sample[static_cast<std::size_t>(wz)];
    t.witnesses_.push_back(w);
  }
  return t;
}

BasepointReport basepoint_transfer_check(const DistanceOracle& d, int delta2x,
                                         int exhaustive_cap, std::uint64_t seed,
                                         int threads) {
  if (delta2x < 0) throw std::invalid_argument("basepoint_transfer_check: negative delta");
  int n = d.size();
  BasepointReport rep;
  rep.delta2x = delta2x;

  std::vector<int> sample = stratified_vertex_sample(d, 0, exhaustive_cap, seed);
  bool exhaustive = static_cast<int>(sample.size()) == n;
  rep.scan.exhaustive = exhaustive;
  rep.scan.sample_size = static_cast<int>(sample.size());
  rep.scan.seed = seed;
  rep.scan.description =
      exhaustive ? "all bases, all triples"
                 : "sampled bases and triples (stratified vertex sample)";

  int m = static_cast<int>(sample.size());
  rep.bases_scanned = static_cast<std::uint64_t>(m);

  struct PerBase {
    int slack = std::numeric_limits<int>::min();
    int x = -1, y = -1;
  };
  std::vector<PerBase> results(static_cast<std::size_t>(m));

  threads = effective_threads(threads);
  parallel_for(m, threads, [&](int lo, int hi) {
    std::vector<std::int16_t> Pw(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    std::vector<std::int16_t> scratch;
    for (int wi = lo; wi < hi; ++wi) {
      int w = sample[static_cast<std::size_t>(wi)];
      const std::uint16_t* dw = d.row(w);
      for (int i = 0; i < m; ++i) {
        int a = sample[static_cast<std::size_t>(i)];
        const std::uint16_t* da = d.row(a);
        int dwa = dw[a];
        std::int16_t* out = Pw.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
        for (int j = 0; j < m; ++j) {
          int b = sample[static_cast<std::size_t>(j)];
          out[j] = static_cast<std::int16_t>(dwa + static_cast<int>(dw[b]) -
                                             static_cast<int>(da[b]));
        }
      }
      PerBase& r = results[static_cast<std::size_t>(wi)];
      r.slack = four_point_scan(Pw.data(), m, 0, m, r.x, r.y, scratch);
    }
  });

  // deterministic merge in base order, independent of the thread split
  std::vector<std::int16_t> Pw, scratch;
  for (int wi = 0; wi < m; ++wi) {
    const PerBase& r = results[static_cast<std::size_t>(wi)];
    int w = sample[static_cast<std::size_t>(wi)];
    if (r.slack > rep.max_slack2x) {
      rep.max_slack2x = r.slack;
      rep.worst_base = w;
      rep.worst_triple.x = sample[static_cast<std::size_t>(r.x)];
      rep.worst_triple.y = sample[static_cast<std::size_t>(r.y)];
      rep.worst_triple.z = -1;  // filled below when needed
    }
    if (r.slack > 2 * delta2x && rep.violations.size() < 32) {
      BasepointViolation v;
      v.w = w;
      v.slack2x = r.slack;
      v.triple.x = sample[static_cast<std::size_t>(r.x)];
      v.triple.y = sample[static_cast<std::size_t>(r.y)];
      v.triple.z = -1;
      rep.violations.push_back(v);
    }
  }

  // recover z witnesses for the few entries that need them
  auto fill_z = [&](int w, TripleWitness& tr) {
    const std::uint16_t* dw = d.row(w);
    const std::uint16_t* dx = d.row(tr.x);
    const std::uint16_t* dy = d.row(tr.y);
    int best = std::numeric_limits<int>::min(), arg = -1;
    for (int zi = 0; zi < m; ++zi) {
      int z = sample[static_cast<std::size_t>(zi)];
      int pxz = dw[tr.x] + static_cast<int>(dw[z]) - static_cast<int>(dx[z]);
      int pyz = dw[tr.y] + static_cast<int>(dw[z]) - static_cast<int>(dy[z]);
      int mm = std::min(pxz, pyz);
      if (mm > best) {
        best = mm;
        arg = z;
      }
    }
    tr.z = arg;
  };
  if (rep.worst_base >= 0) fill_z(rep.worst_base, rep.worst_triple);
  for (auto& v : rep.violations) fill_z(v.w, v.triple);
  return rep;
}

ThinTriangleReport thin_triangle_delta(const TruncatedGraph& g, const DistanceOracle& d,
                                       int exhaustive_cutoff, std::uint64_t seed) {
  int n = d.size();
  ThinTriangleReport rep;
  std::vector<int> sample = stratified_vertex_sample(d, g.root, exhaustive_cutoff, seed);
  bool exhaustive = static_cast<int>(sample.size()) == n;
  rep.scan.exhaustive = exhaustive;
  rep.scan.sample_size = static_cast<int>(sample.size());
  rep.scan.seed = seed;
  rep.scan.description = exhaustive ? "all corner triples, fixed geodesics"
                                    : "sampled corner triples, fixed geodesics";

  int m = static_cast<int>(sample.size());
  // geodesics for unordered pairs, canonical direction least id -> greatest
  std::vector<std::vector<int>> side(
      static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      PathInGraph p = one_geodesic(g, d, std::min(sample[static_cast<std::size_t>(i)],
                                                  sample[static_cast<std::size_t>(j)]),
                                   std::max(sample[static_cast<std::size_t>(i)],
                                            sample[static_cast<std::size_t>(j)]));
      side[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(j)] = std::move(p.vertices);
    }
  auto side_of = [&](int i, int j) -> const std::vector<int>& {
    return side[static_cast<std::size_t>(std::min(i, j)) * static_cast<std::size_t>(m) +
                static_cast<std::size_t>(std::max(i, j))];
  };

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const std::vector<int>* sides[3] = {&side_of(i, j), &side_of(j, k), &side_of(i, k)};
        for (int s = 0; s < 3; ++s) {
          const std::vector<int>& a = *sides[s];
          const std::vector<int>& b = *sides[(s + 1) % 3];
          const std::vector<int>& c = *sides[(s + 2) % 3];
          for (int v : a) {
            const std::uint16_t* dv = d.row(v);
            int dmin = std::numeric_limits<int>::max();
            for (int w : b) dmin = std::min(dmin, static_cast<int>(dv[w]));
            for (int w : c) dmin = std::min(dmin, static_cast<int>(dv[w]));
            if (dmin > rep.delta_hops) {
              rep.delta_hops = dmin;
              rep.worst = TripleWitness{sample[static_cast<std::size_t>(i)],
                                        sample[static_cast<std::size_t>(j)],
                                        sample[static_cast<std::size_t>(k)]};
              rep.worst_vertex = v;
            }
          }
        }
      }
  return rep;
}

ProductGeodesicReport product_vs_geodesic_check(const TruncatedGraph& g,
                                                const DistanceOracle& d,
                                                const GromovTable& t, int exhaustive_cap,
                                                std::uint64_t seed) {
  int n = d.size();
  ProductGeodesicReport rep;
  rep.delta2x = t.delta2x();
  std::vector<int> sample = stratified_vertex_sample(d, t.base(), exhaustive_cap, seed);
  bool exhaustive = static_cast<int>(sample.size()) == n;
  rep.scan.exhaustive = exhaustive;
  rep.scan.sample_size = static_cast<int>(sample.size());
  rep.scan.seed = seed;
  rep.scan.description =
      exhaustive ? "all pairs, fixed geodesics" : "sampled pairs, fixed geodesics";

  const std::uint16_t* db = d.row(t.base());
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i; j < sample.size(); ++j) {
      int x = sample[i], y = sample[j];
      PathInGraph p = one_geodesic(g, d, x, y);
      int dmin = std::numeric_limits<int>::max();
      for (int v : p.vertices) dmin = std::min(dmin, static_cast<int>(db[v]));
      int slack2x = 2 * dmin - t.prod2x(x, y);
      ++rep.pairs_checked;
      ++rep.slack_histogram2x[slack2x];
      if (slack2x < 0 || slack2x > 2 * t.delta2x()) {
        ++rep.violations;
        if (rep.violation_pairs.size() < 32) rep.violation_pairs.emplace_back(x, y);
      }
    }
  return rep;
}

}  // namespace hypertree
