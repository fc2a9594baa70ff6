#pragma once

// Seeded search for smooth chambers lying in the interior of the effective cone.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galefan/classify.hpp"

namespace galefan {

/// SplitMix64 stream. The stream for (seed, index) starts from
/// state = seed ^ mix(index + 1); see the README for the exact algorithm.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static std::uint64_t mix(std::uint64_t z);

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t index) : state_(seed ^ mix(index + 1)) {}

  std::uint64_t next();
  /// Uniform value in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Q_s: the interior-nef example with its (1,1,1,1) column repeated s times.
WMatrix qs_family(long s);

/// r x (n+r) nonnegative matrix in echelon form: pivot entries 1 at
/// increasing columns (the first at column 0, the last at most n+r-2),
/// zeros left of each pivot, other entries uniform in [0, entry_bound].
IntMatrix random_echelon_candidate(SplitMix64& rng, std::size_t n, std::size_t r, long entry_bound);

/// First valid W-matrix among candidates index, index+1, ...; `index` is
/// advanced past it. Gives up after `attempts` candidates.
std::optional<WMatrix> random_w_matrix(std::uint64_t seed, std::uint64_t& index, std::size_t n, std::size_t r,
                                       long entry_bound, std::size_t attempts = 100000);

struct SearchParams {
  std::size_t n = 4;
  std::size_t r = 4;
  long entry_bound = 2;
  std::uint64_t max_candidates = 1000;
  std::uint64_t seed = 0;
  std::uint64_t start_candidate = 0;  // resume point
  unsigned threads = 1;
  std::vector<IntMatrix> injected;  // evaluated before the random stream
};

struct Finding {
  std::string source;  // "random" or "injected"
  std::uint64_t candidate = 0;
  WMatrix q;
  FMatrix v;
  Chamber chamber;
  ClassificationReport report;
};

struct HuntResult {
  std::vector<Finding> findings;
  std::uint64_t next_candidate = 0;
  std::uint64_t valid_candidates = 0;
  std::uint64_t smooth_chambers = 0;
};

/// Smooth chambers of q whose intersection with the boundary of <Q> is {0}.
/// Empty in rank one.
std::vector<Chamber> interior_smooth_chambers(const FMatrix& v, const WMatrix& q);

/// Deterministic in the parameters; the thread count does not change the result.
HuntResult hunt(const SearchParams& params);

/// Thread count from GALEFAN_THREADS, defaulting to 1.
unsigned threads_from_env();

}  // namespace galefan
