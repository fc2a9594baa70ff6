#include "galefan/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "galefan/golden.hpp"

namespace galefan {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

WMatrix qs_family(long s) { return require_w(golden::qs(s)); }

IntMatrix random_echelon_candidate(SplitMix64& rng, std::size_t n, std::size_t r, long entry_bound) {
  const std::size_t w = n + r;
  // Pivots 1..r-1 form a uniform (r-1)-subset of {1, ..., w-2}.
  std::vector<std::size_t> pool;
  for (std::size_t j = 1; j + 1 < w; ++j) pool.push_back(j);
  for (std::size_t i = 0; i + 1 < r && i < pool.size(); ++i) {
    std::size_t k = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[k]);
  }
  std::vector<std::size_t> pivots{0};
  pivots.insert(pivots.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(r - 1, pool.size())));
  std::sort(pivots.begin(), pivots.end());

  IntMatrix m(r, w);
  for (std::size_t i = 0; i < r; ++i) {
    m(i, pivots[i]) = 1;
    for (std::size_t j = pivots[i] + 1; j < w; ++j)
      m(i, j) = static_cast<long>(rng.below(static_cast<std::uint64_t>(entry_bound) + 1));
  }
  return m;
}

std::optional<WMatrix> random_w_matrix(std::uint64_t seed, std::uint64_t& index, std::size_t n, std::size_t r,
                                       long entry_bound, std::size_t attempts) {
  for (std::size_t a = 0; a < attempts; ++a) {
    SplitMix64 rng(seed, index++);
    IntMatrix m = random_echelon_candidate(rng, n, r, entry_bound);
    WValidation wv = validate_w(m);
    if (wv.ok()) return *wv.matrix;
  }
  return std::nullopt;
}

std::vector<Chamber> interior_smooth_chambers(const FMatrix& v, const WMatrix& q) {
  std::vector<Chamber> out;
  // In rank one every nonzero class is big; there is nothing to find.
  if (q.r < 2) return out;
  const Cone eff = eff_cone(q);
  for (auto& c : enumerate_chambers(q, Region::mov)) {
    if (!c.smooth.value_or(false)) continue;
    bool touches = std::any_of(eff.facets().begin(), eff.facets().end(),
                               [&](const IntVector& h) { return c.cone.slice(h).dim() > 0; });
    if (touches) continue;
    // Independent re-checks: smoothness from fan-matrix minors, and no
    // generator of the chamber on the boundary of <Q>.
    if (!is_smooth_chamber(v, q, c)) throw ConsistencyError("smoothness flags disagree on " + c.id);
    for (const auto& x : c.cone.rays())
      if (!eff.in_relint(x)) throw ConsistencyError("interior chamber " + c.id + " has a boundary generator");
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Evaluation {
  bool valid = false;
  std::uint64_t smooth = 0;
  std::vector<Finding> findings;
};

Evaluation evaluate(const IntMatrix& m, const std::string& source, std::uint64_t index) {
  Evaluation ev;
  WValidation wv = validate_w(m);
  if (!wv.ok()) return ev;
  ev.valid = true;
  const WMatrix& q = *wv.matrix;
  FMatrix v = gale_dual_of_w(q);
  std::vector<Chamber> chambers = enumerate_chambers(q, Region::mov);
  for (const auto& c : chambers)
    if (c.smooth.value_or(false)) ++ev.smooth;
  for (auto& c : interior_smooth_chambers(v, q)) {
    Finding f;
    f.source = source;
    f.candidate = index;
    f.q = q;
    f.v = v;
    f.report = classification_report(v, q, c);
    f.chamber = std::move(c);
    ev.findings.push_back(std::move(f));
  }
  return ev;
}

}  // namespace

HuntResult hunt(const SearchParams& params) {
  if (params.n < 1 || params.r < 1 || params.entry_bound < 1) throw std::invalid_argument("invalid search parameters");
  HuntResult res;
  auto absorb = [&](Evaluation& ev) {
    res.valid_candidates += ev.valid ? 1 : 0;
    res.smooth_chambers += ev.smooth;
    for (auto& f : ev.findings) res.findings.push_back(std::move(f));
  };
  for (std::size_t i = 0; i < params.injected.size(); ++i) {
    Evaluation ev = evaluate(params.injected[i], "injected", i);
    absorb(ev);
  }

  const std::uint64_t begin = params.start_candidate;
  const std::uint64_t end = std::max(begin, params.max_candidates);
  const std::size_t count = static_cast<std::size_t>(end - begin);
  std::vector<Evaluation> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](unsigned t, unsigned stride) {
    for (std::size_t k = t; k < count; k += stride) {
      std::uint64_t idx = begin + k;
      SplitMix64 rng(params.seed, idx);
      try {
        slots[k] = evaluate(random_echelon_candidate(rng, params.n, params.r, params.entry_bound), "random", idx);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, params.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    absorb(slots[k]);
  }
  res.next_candidate = end;
  return res;
}

unsigned threads_from_env() {
  const char* s = std::getenv("GALEFAN_THREADS");
  if (!s) return 1;
  long v = std::strtol(s, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 1;
}

}  // namespace galefan
