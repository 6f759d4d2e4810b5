#include "hypertree/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

namespace hypertree {

TieOrder::TieOrder(int n, std::uint64_t seed) : seed_(seed) {
  if (n < 0) throw std::invalid_argument("TieOrder: negative size");
  if (seed == 0) return;  // identity order, no table needed
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  rank_.assign(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r) rank_[static_cast<std::size_t>(perm[r])] = r;
}

void TieOrder::sort_ids(std::vector<int>& ids) const {
  std::stable_sort(ids.begin(), ids.end(),
                   [this](int a, int b) { return less(a, b); });
}

int TieOrder::least(const std::vector<int>& ids) const {
  int best = -1;
  for (int v : ids)
    if (best < 0 || less(v, best)) best = v;
  return best;
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYPERTREE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, int threads,
                  const std::function<void(int, int)>& block_body) {
  if (n <= 0) return;
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    block_body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&block_body, lo, hi] { block_body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace hypertree
