#include "prodset/product_sets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "prodset/errors.hpp"
#include "prodset/parallel.hpp"

namespace prodset {

std::uint64_t ProductTally::tau(std::uint64_t x) const noexcept {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                   [](const ProductCount& e, std::uint64_t v) { return e.product < v; });
  return it != entries_.end() && it->product == x ? it->tau : 0;
}

std::uint64_t ProductTally::total_pairs() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.tau;
  return total;
}

std::uint64_t ProductTally::energy() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.tau * e.tau;
  return total;
}

void TauProfile::merge(const TauProfile& other) {
  for (const auto& [tau, count] : other.histogram_) histogram_[tau] += count;
}

std::uint64_t TauProfile::distinct_products() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [tau, count] : histogram_) total += count;
  return total;
}

std::uint64_t TauProfile::ordered_pairs() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [tau, count] : histogram_) total += tau * count;
  return total;
}

std::uint64_t TauProfile::energy() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [tau, count] : histogram_) total += tau * tau * count;
  return total;
}

std::uint64_t TauProfile::max_tau() const noexcept { return histogram_.empty() ? 0 : histogram_.rbegin()->first; }

void validate_int_set(std::span<const std::uint64_t> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) throw DomainError("integer set contains 0; elements must be >= 1");
    if (i > 0 && values[i] <= values[i - 1]) {
      throw DomainError("integer set must be strictly increasing (violated at " + std::to_string(values[i]) + ")");
    }
  }
}

namespace {

constexpr std::uint64_t kWordBits = 64;
// Smallest useful chunk for the range-partitioned kernels.
constexpr std::uint64_t kMinChunkPairs = 1024;
constexpr std::uint64_t kMaxChunkPairs = std::uint64_t{1} << 24;
constexpr std::uint64_t kMinChunkBits = std::uint64_t{1} << 16;
constexpr std::uint64_t kMaxChunkBits = std::uint64_t{1} << 33;

std::uint64_t per_worker_bytes(const ExecutionConfig& config) {
  return config.budget.bytes / resolve_workers(config.workers);
}

std::uint64_t popcount_words(const std::vector<std::uint64_t>& words) {
  std::uint64_t total = 0;
  for (const auto w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::uint64_t table_flat(std::uint64_t n) {
  const std::uint64_t top = n * n;
  std::vector<std::uint64_t> words(top / kWordBits + 1, 0);
  for (std::uint64_t a = 1; a <= n; ++a) {
    for (std::uint64_t v = a * a; v <= a * n; v += a) words[v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
  }
  return popcount_words(words);
}

// Distinct products of [N][N] within [lo, hi].
std::uint64_t table_chunk(std::uint64_t n, std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& words) {
  const std::uint64_t span = hi - lo + 1;
  words.assign((span + kWordBits - 1) / kWordBits, 0);
  for (std::uint64_t a = 1; a <= n && a * a <= hi; ++a) {
    const std::uint64_t b_min = std::max(a, (lo + a - 1) / a);
    const std::uint64_t b_max = std::min(n, hi / a);
    if (b_min > b_max) continue;
    for (std::uint64_t v = a * b_min - lo, end = a * b_max - lo; v <= end; v += a) {
      words[v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
    }
  }
  return popcount_words(words);
}

std::uint64_t table_chunked(std::uint64_t n, const ExecutionConfig& config) {
  const std::uint64_t chunk_bits =
      std::min(kMaxChunkBits, (per_worker_bytes(config) * 8) / kWordBits * kWordBits);
  if (chunk_bits < kMinChunkBits) {
    throw CapacityError("multiplication_table_size: budget too small for a chunked bitset",
                        kMinChunkBits / 8 * resolve_workers(config.workers), config.budget.bytes);
  }
  const std::uint64_t top = n * n;
  const std::uint64_t chunks = (top + chunk_bits - 1) / chunk_bits;
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_for(chunks, config.workers, [&](std::size_t c) {
    thread_local std::vector<std::uint64_t> words;
    const std::uint64_t lo = 1 + c * chunk_bits;
    const std::uint64_t hi = std::min(top, lo + chunk_bits - 1);
    counts[c] = table_chunk(n, lo, hi, words);
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace

std::uint64_t multiplication_table_size(std::uint64_t n, const ExecutionConfig& config, TableStrategy strategy) {
  if (n < 1) throw DomainError("multiplication_table_size: N must be >= 1");
  if (n > kMaxTableN) throw DomainError("multiplication_table_size: N must be < 2^32");

  const std::uint64_t flat_bytes = (n * n / kWordBits + 1) * 8;
  if (strategy == TableStrategy::kAuto) {
    strategy = n <= kFlatBitsetMaxN && config.budget.fits(flat_bytes) ? TableStrategy::kFlatBitset
                                                                        : TableStrategy::kChunkedBitset;
  }
  if (strategy == TableStrategy::kFlatBitset) {
    if (!config.budget.fits(flat_bytes)) {
      throw CapacityError("multiplication_table_size: flat bitset exceeds the budget", flat_bytes,
                          config.budget.bytes);
    }
    return table_flat(n);
  }
  return table_chunked(n, config);
}

namespace {

// Pairs (a_i, b_j) of two sorted sets, or pairs i <= j of one set when
// `symmetric`. Products are partitioned into contiguous value ranges
// holding a bounded number of pairs each.
struct PairSpace {
  std::span<const std::uint64_t> a;
  std::span<const std::uint64_t> b;
  bool symmetric = false;
};

struct Chunk {
  std::uint64_t lo;
  std::uint64_t hi;
};

// Number of pairs with product <= x (i <= j in the symmetric case).
std::uint64_t count_pairs_le(const PairSpace& space, std::uint64_t x) {
  std::uint64_t total = 0;
  std::size_t j = space.b.size();
  for (std::size_t i = 0; i < space.a.size(); ++i) {
    const std::uint64_t ai = space.a[i];
    const std::uint64_t limit = x / ai;
    while (j > 0 && space.b[j - 1] > limit) --j;
    if (space.symmetric) {
      if (j <= i) break;
      total += j - i;
    } else {
      if (j == 0) break;
      total += j;
    }
  }
  return total;
}

std::uint64_t max_product(const PairSpace& space) { return space.a.back() * space.b.back(); }

std::vector<Chunk> partition_products(const PairSpace& space, std::uint64_t target_pairs) {
  std::vector<Chunk> chunks;
  const std::uint64_t top = max_product(space);
  std::uint64_t start = space.a.front() * space.b.front();
  std::uint64_t below = 0;  // pairs with product < start
  while (start <= top) {
    std::uint64_t lo = start;
    std::uint64_t hi = top;
    if (count_pairs_le(space, top) - below <= target_pairs) {
      chunks.push_back({start, top});
      break;
    }
    // Largest end with at most target_pairs pairs in [start, end]; at least start.
    std::uint64_t best = start;
    while (lo <= hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (count_pairs_le(space, mid) - below <= target_pairs) {
        best = mid;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    chunks.push_back({start, best});
    below = count_pairs_le(space, best);
    start = best + 1;
  }
  return chunks;
}

std::uint64_t chunk_target(const ExecutionConfig& config, const char* what) {
  // Product buffer plus sort scratch.
  const std::uint64_t pairs = per_worker_bytes(config) / 16;
  if (pairs < kMinChunkPairs) {
    throw CapacityError(std::string(what) + ": budget too small for range-partitioned enumeration",
                        kMinChunkPairs * 16 * resolve_workers(config.workers), config.budget.bytes);
  }
  return std::min(pairs, kMaxChunkPairs);
}

void check_product_range(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.empty() || b.empty()) return;
  if (a.back() > ~std::uint64_t{0} / b.back()) throw DomainError("max(A) * max(B) does not fit in 64 bits");
}

// Enumerates the products of one chunk and calls sink(product, tau) in
// increasing product order with ordered-pair multiplicities.
template <class Sink>
void visit_chunk(const PairSpace& space, const Chunk& chunk, std::vector<std::uint64_t>& buffer, Sink&& sink) {
  buffer.clear();
  const auto& a = space.a;
  const auto& b = space.b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a[i];
    if (space.symmetric && ai > chunk.hi / ai) break;
    if (!space.symmetric && ai * b.front() > chunk.hi) break;
    const std::uint64_t need = (chunk.lo + ai - 1) / ai;
    const std::uint64_t cap = chunk.hi / ai;
    auto first = std::lower_bound(b.begin(), b.end(), need);
    if (space.symmetric) first = std::max(first, b.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    const auto last = std::upper_bound(b.begin(), b.end(), cap);
    for (auto it = first; it < last; ++it) buffer.push_back(ai * *it);
  }
  std::sort(buffer.begin(), buffer.end());

  // Squares b_i^2 inside the chunk, already increasing; merged with the
  // off-diagonal runs, which count twice as ordered pairs.
  std::size_t sq = 0;
  std::size_t sq_end = 0;
  if (space.symmetric) {
    while (sq < b.size() && b[sq] <= chunk.hi / b[sq] && b[sq] * b[sq] < chunk.lo) ++sq;
    sq_end = sq;
    while (sq_end < b.size() && b[sq_end] <= chunk.hi / b[sq_end]) ++sq_end;
  }
  const std::uint64_t weight = space.symmetric ? 2 : 1;

  std::size_t pos = 0;
  while (pos < buffer.size() || sq < sq_end) {
    const std::uint64_t next_run = pos < buffer.size() ? buffer[pos] : ~std::uint64_t{0};
    const std::uint64_t next_sq = sq < sq_end ? b[sq] * b[sq] : ~std::uint64_t{0};
    const std::uint64_t x = std::min(next_run, next_sq);
    std::uint64_t tau = 0;
    while (pos < buffer.size() && buffer[pos] == x) {
      tau += weight;
      ++pos;
    }
    if (x == next_sq) {
      tau += 1;
      ++sq;
    }
    sink(x, tau);
  }
}

// Runs fold(chunk, buffer) -> Partial over every chunk on the worker pool
// and returns the partials in chunk order.
template <class Partial, class Fold>
std::vector<Partial> map_chunks(const PairSpace& space, const ExecutionConfig& config, const char* what, Fold&& fold) {
  const auto chunks = partition_products(space, chunk_target(config, what));
  std::vector<Partial> partials(chunks.size());
  parallel_for(chunks.size(), config.workers, [&](std::size_t c) {
    thread_local std::vector<std::uint64_t> buffer;
    partials[c] = fold(chunks[c], buffer);
  });
  return partials;
}

bool same_set(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return a.size() == b.size() && (a.data() == b.data() || std::equal(a.begin(), a.end(), b.begin()));
}

}  // namespace

ProductSetSummary product_set(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                              const ExecutionConfig& config) {
  validate_int_set(a);
  validate_int_set(b);
  check_product_range(a, b);
  ProductSetSummary summary;
  summary.pair_count = static_cast<std::uint64_t>(a.size()) * b.size();
  if (a.empty() || b.empty()) return summary;

  const PairSpace space{a, b, same_set(a, b)};
  struct Partial {
    std::uint64_t distinct = 0;
    std::uint64_t max_tau = 0;
  };
  const auto partials = map_chunks<Partial>(space, config, "product_set", [&](const Chunk& chunk, auto& buffer) {
    Partial p;
    visit_chunk(space, chunk, buffer, [&](std::uint64_t, std::uint64_t tau) {
      ++p.distinct;
      p.max_tau = std::max(p.max_tau, tau);
    });
    return p;
  });
  for (const auto& p : partials) {
    summary.size += p.distinct;
    summary.max_tau = std::max(summary.max_tau, p.max_tau);
  }
  return summary;
}

namespace {

// Pairs above which kAuto switches from the hash map to sorted runs.
constexpr std::uint64_t kHashTallyMaxPairs = std::uint64_t{1} << 16;

ProductTally tally_hash(std::span<const std::uint64_t> b) {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  counts.reserve(b.size() * b.size() / 2 + 1);
  for (const auto x : b) {
    for (const auto y : b) ++counts[x * y];
  }
  std::vector<ProductCount> entries;
  entries.reserve(counts.size());
  for (const auto& [product, tau] : counts) entries.push_back({product, tau});
  std::sort(entries.begin(), entries.end(),
            [](const ProductCount& l, const ProductCount& r) { return l.product < r.product; });
  return ProductTally(std::move(entries));
}

}  // namespace

ProductTally tau_counts(std::span<const std::uint64_t> b, const ExecutionConfig& config, TallyStrategy strategy) {
  validate_int_set(b);
  check_product_range(b, b);
  if (b.empty()) return {};
  const std::uint64_t pairs = static_cast<std::uint64_t>(b.size()) * b.size();
  if (strategy == TallyStrategy::kAuto) {
    strategy = pairs <= kHashTallyMaxPairs ? TallyStrategy::kHashMap : TallyStrategy::kSortRuns;
  }
  if (strategy == TallyStrategy::kHashMap) {
    const std::uint64_t bytes = pairs * 32;
    if (!config.budget.fits(bytes)) throw CapacityError("tau_counts: hash map exceeds the budget", bytes, config.budget.bytes);
    return tally_hash(b);
  }

  const PairSpace space{b, b, true};
  auto parts = map_chunks<std::vector<ProductCount>>(space, config, "tau_counts", [&](const Chunk& chunk, auto& buffer) {
    std::vector<ProductCount> out;
    visit_chunk(space, chunk, buffer, [&](std::uint64_t x, std::uint64_t tau) { out.push_back({x, tau}); });
    return out;
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  const std::uint64_t bytes = total * sizeof(ProductCount);
  if (!config.budget.fits(bytes)) throw CapacityError("tau_counts: tally exceeds the budget", bytes, config.budget.bytes);
  std::vector<ProductCount> entries;
  entries.reserve(total);
  for (auto& p : parts) entries.insert(entries.end(), p.begin(), p.end());
  return ProductTally(std::move(entries));
}

TauProfile tau_profile(std::span<const std::uint64_t> b, const ExecutionConfig& config) {
  validate_int_set(b);
  check_product_range(b, b);
  TauProfile profile;
  if (b.empty()) return profile;
  const PairSpace space{b, b, true};
  const auto parts = map_chunks<TauProfile>(space, config, "tau_profile", [&](const Chunk& chunk, auto& buffer) {
    // Most products have tau <= 2 for the sets studied here; keep a
    // dense prefix and spill the rest into the map.
    std::array<std::uint64_t, 64> dense{};
    TauProfile local;
    visit_chunk(space, chunk, buffer, [&](std::uint64_t, std::uint64_t tau) {
      if (tau < dense.size()) {
        ++dense[tau];
      } else {
        local.add(tau, 1);
      }
    });
    for (std::size_t t = 0; t < dense.size(); ++t) {
      if (dense[t] != 0) local.add(t, dense[t]);
    }
    return local;
  });
  for (const auto& p : parts) profile.merge(p);
  return profile;
}

std::uint64_t multiplicative_energy(std::span<const std::uint64_t> b, const ExecutionConfig& config) {
  return tau_profile(b, config).energy();
}

EnergyDiagnostics energy_diagnostics(const TauProfile& profile, std::uint64_t set_size, std::uint64_t n) {
  if (n < 3) throw DomainError("energy_diagnostics: N must be >= 3");
  const double log2_n = std::log(std::log(static_cast<double>(n)));
  EnergyDiagnostics d;
  d.energy = profile.energy();
  d.size = set_size;
  d.size_squared = static_cast<double>(set_size) * static_cast<double>(set_size);
  d.log2_n_pow4 = std::pow(log2_n, 4);
  d.ratio = set_size == 0 ? 0.0 : static_cast<double>(d.energy) / (d.size_squared * d.log2_n_pow4);
  d.trivial_floor = set_size == 0 ? 0 : 2 * set_size * set_size - set_size;
  return d;
}

EnergyDiagnostics energy_diagnostics(std::span<const std::uint64_t> b, std::uint64_t n, const ExecutionConfig& config) {
  if (!b.empty() && b.back() > n) throw DomainError("energy_diagnostics: B must be a subset of [N]");
  return energy_diagnostics(tau_profile(b, config), b.size(), n);
}

}  // namespace prodset
