#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypertree {

/// Error thrown when an input file or stream cannot be parsed. The message
/// names the offending line or field.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Deterministic tie-break order over the dense vertex/cell id range [0, n).
///
/// Seed 0 is the identity permutation, i.e. plain least-id order. Any other
/// seed applies a reproducible shuffle so that runs with different seeds
/// explore different but replayable tie-break decisions.
class TieOrder {
 public:
  TieOrder() = default;
  TieOrder(int n, std::uint64_t seed);

  int rank(int id) const {
    return rank_.empty() ? id : rank_[static_cast<std::size_t>(id)];
  }
  bool less(int a, int b) const {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
  }
  /// Stable-sorts ids into tie order.
  void sort_ids(std::vector<int>& ids) const;
  /// Returns the id with least rank, -1 on empty input.
  int least(const std::vector<int>& ids) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::vector<int> rank_;
};

/// Resolves the worker-thread count: an explicit positive request wins,
/// otherwise the HYPERTREE_THREADS environment variable, otherwise the
/// hardware concurrency.
int effective_threads(int requested = 0);

/// Runs body(i) for i in [0, n). With more than one thread the index range is
/// split into contiguous blocks; the decomposition never changes results
/// because callers only write to disjoint slots.
void parallel_for(int n, int threads, const std::function<void(int, int)>& block_body);

/// FNV-1a over a byte string; used to fingerprint configurations.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// splitmix64 step, handy for deriving per-item seeds from a master seed.
std::uint64_t mix64(std::uint64_t x);

}  // namespace hypertree
