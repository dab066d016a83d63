#include "compresslab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <utility>

#include "compresslab/errors.hpp"
#include "compresslab/parallel.hpp"
#include "compresslab/poly.hpp"
#include "compresslab/schroeder.hpp"
#include "compresslab/version.hpp"

namespace compresslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// P(next() < threshold) = prob for prob in [0, 1).
std::uint64_t bernoulli_threshold(double prob) {
  return static_cast<std::uint64_t>(std::ldexp(prob, 64));
}

void check_probability(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("merge probability r must lie in (0, 1)");
}

template <typename W>
void fill_initial(std::vector<W>& cells, double p, Stream& rng) {
  if (p >= 1.0) {
    std::fill(cells.begin(), cells.end(), W{1});
    return;
  }
  if (p == 0.5) {
    // One random bit per cell.
    std::size_t k = 0;
    while (k < cells.size()) {
      std::uint64_t word = rng.next();
      for (unsigned b = 0; b < 64 && k < cells.size(); ++b, ++k, word >>= 1) cells[k] = static_cast<W>(word & 1U);
    }
    return;
  }
  const std::uint64_t threshold = bernoulli_threshold(p);
  for (auto& c : cells) c = rng.next() < threshold ? W{1} : W{0};
}

// One bit per donor, 1 = donate to the right neighbour.
void draw_directions(std::vector<std::uint64_t>& bits, std::size_t donors, Stream& rng, double r) {
  bits.assign((donors + 63) / 64 + 1, 0);
  if (r == 0.5) {
    for (std::size_t k = 0; k + 1 < bits.size(); ++k) bits[k] = rng.next();
  } else {
    const std::uint64_t threshold = bernoulli_threshold(r);
    for (std::size_t j = 0; j < donors; ++j) {
      if (rng.next() < threshold) bits[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }
  // Clear the padding, then copy bit 0 to position `donors` so that donor
  // j + 1 can be read without wrapping.
  const std::size_t tail = donors & 63;
  if (tail != 0) bits[donors >> 6] &= (std::uint64_t{1} << tail) - 1;
  bits[donors >> 6] |= (bits[0] & 1U) << tail;
}

// Calls sink(j, w) for every survivor j in increasing order, where w is
// in[2j+1] plus donor 2j if it went right plus donor 2j+2 if it went left.
// The sum is formed in Out, which may be wider than W.
template <typename Out, typename W, typename Sink>
inline void for_each_survivor(const W* in, std::size_t length, const std::uint64_t* bits, Sink&& sink) {
  const std::size_t half = length / 2;
  for (std::size_t base = 0; base < half; base += 64) {
    std::uint64_t own = bits[base >> 6];
    std::uint64_t left = ~((own >> 1) | (bits[(base >> 6) + 1] << 63));
    const std::size_t end = std::min(half - 1, base + 64);
    std::size_t j = base;
    for (; j < end; ++j, own >>= 1, left >>= 1) {
      const W* cell = in + 2 * j;
      sink(j, static_cast<Out>(Out(cell[1]) + (Out(cell[0]) & -static_cast<Out>(own & 1U)) +
                               (Out(cell[2]) & -static_cast<Out>(left & 1U))));
    }
    if (j == half - 1 && j < base + 64) {
      const W* cell = in + 2 * j;
      sink(j, static_cast<Out>(Out(cell[1]) + (Out(cell[0]) & -static_cast<Out>(own & 1U)) +
                               (Out(in[0]) & -static_cast<Out>(left & 1U))));
    }
  }
}

template <typename W, typename Out>
void pull_survivors(const W* in, std::size_t length, const std::uint64_t* bits, Out* out) {
  for_each_survivor<Out>(in, length, bits, [out](std::size_t j, Out w) { out[j] = w; });
}

// Fisher-Yates with 32-bit Lemire draws, two per generator output.
template <typename W>
void shuffle(W* cells, std::size_t n, Stream& rng) {
  if (n > 0xffffffffULL) {
    for (std::size_t i = n; i > 1; --i) std::swap(cells[i - 1], cells[rng.bounded(i)]);
    return;
  }
  std::uint64_t pool = 0;
  unsigned left = 0;
  auto next32 = [&]() -> std::uint32_t {
    if (left == 0) {
      pool = rng.next();
      left = 2;
    }
    --left;
    const auto v = static_cast<std::uint32_t>(pool);
    pool >>= 32;
    return v;
  };
  for (std::size_t i = n; i > 1; --i) {
    const auto bound = static_cast<std::uint32_t>(i);
    std::uint64_t m = static_cast<std::uint64_t>(next32()) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(next32()) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    std::swap(cells[i - 1], cells[m >> 32]);
  }
}

// Rao-Sandelius shuffle: every element goes to an independently chosen
// random bucket, then each bucket is shuffled in turn. The result is uniform.
// Sixteen buckets keep the scatter write streams few; buckets recurse until
// they fit in cache.
constexpr std::size_t kBuckets = 16;
constexpr std::size_t kCacheBytes = std::size_t{1} << 20;

struct Buckets {
  std::size_t offset[kBuckets];
  std::size_t size[kBuckets];
};

// Four random bits per element.
Buckets draw_buckets(std::size_t n, Stream& rng, std::vector<std::uint8_t>& ids) {
  ids.resize(n);
  Buckets b{};
  for (std::size_t j = 0; j < n; j += 16) {
    std::uint64_t word = rng.next();
    const std::size_t end = std::min(n, j + 16);
    for (std::size_t k = j; k < end; ++k, word >>= 4) {
      ids[k] = static_cast<std::uint8_t>(word & (kBuckets - 1));
      ++b.size[ids[k]];
    }
  }
  std::size_t start = 0;
  for (std::size_t k = 0; k < kBuckets; ++k) {
    b.offset[k] = start;
    start += b.size[k];
  }
  return b;
}

template <typename W>
void shuffle_large(W* cells, std::size_t n, Stream& rng, std::vector<W>& scratch, std::vector<std::uint8_t>& ids) {
  if (n * sizeof(W) <= kCacheBytes) {
    shuffle(cells, n, rng);
    return;
  }
  const Buckets b = draw_buckets(n, rng, ids);
  scratch.resize(std::max(scratch.size(), n));
  std::size_t cursor[kBuckets];
  std::copy(b.offset, b.offset + kBuckets, cursor);
  for (std::size_t j = 0; j < n; ++j) scratch[cursor[ids[j]]++] = cells[j];
  std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n), cells);
  for (std::size_t k = 0; k < kBuckets; ++k) shuffle_large(cells + b.offset[k], b.size[k], rng, scratch, ids);
}

// Donation pass fused with the first scatter level of the shuffle.
template <typename W, typename Out>
void pull_and_shuffle(const W* in, std::size_t length, const std::uint64_t* bits, Out* out, Stream& rng,
                      std::vector<Out>& scratch, std::vector<std::uint8_t>& ids) {
  const std::size_t half = length / 2;
  if (half * sizeof(Out) <= kCacheBytes) {
    pull_survivors(in, length, bits, out);
    shuffle(out, half, rng);
    return;
  }
  const Buckets b = draw_buckets(half, rng, ids);
  std::size_t cursor[kBuckets];
  std::copy(b.offset, b.offset + kBuckets, cursor);
  const std::uint8_t* id = ids.data();
  for_each_survivor<Out>(in, length, bits, [&](std::size_t j, Out w) { out[cursor[id[j]]++] = w; });
  for (std::size_t k = 0; k < kBuckets; ++k) shuffle_large(out + b.offset[k], b.size[k], rng, scratch, ids);
}

template <typename W>
void count_weights(const W* cells, std::size_t n, WeightHistogram& h) {
  if (n == 0) return;
  const std::size_t top = *std::max_element(cells, cells + n);
  if (top >= h.counts.size()) h.counts.resize(top + 1, 0);
  if (top <= 1) {
    // 0/1 cells: a plain sum is enough.
    std::uint64_t ones = 0;
    for (std::size_t k = 0; k < n; ++k) ones += cells[k];
    h.counts[0] += n - ones;
    if (top == 1) h.counts[1] += ones;
  } else {
    // Four interleaved tables avoid back-to-back increments of one counter.
    std::vector<std::uint32_t> lanes(4 * (top + 1), 0);
    std::uint32_t* lane[4] = {lanes.data(), lanes.data() + (top + 1), lanes.data() + 2 * (top + 1),
                              lanes.data() + 3 * (top + 1)};
    std::size_t k = 0;
    while (k < n) {
      // Flush before a 32-bit counter could overflow.
      const std::size_t stop = std::min(n, k + (std::size_t{1} << 30));
      for (; k + 4 <= stop; k += 4) {
        ++lane[0][cells[k]];
        ++lane[1][cells[k + 1]];
        ++lane[2][cells[k + 2]];
        ++lane[3][cells[k + 3]];
      }
      for (; k < stop; ++k) ++lane[0][cells[k]];
      for (std::size_t i = 0; i <= top; ++i) {
        h.counts[i] += std::uint64_t{lane[0][i]} + lane[1][i] + lane[2][i] + lane[3][i];
      }
      std::fill(lanes.begin(), lanes.end(), 0);
    }
  }
  std::uint64_t mass = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) mass += h.counts[i] * i;
  h.mass = mass;
  h.total_cells += n;
}

// Per-thread buffers reused across replicas.
template <typename W>
struct Workspace {
  std::vector<W> current;
  std::vector<W> next;
  std::vector<W> scratch;
};

struct StepContext {
  const SimConfig& config;
  Stream& rng;
  std::vector<std::uint64_t>& bits;
  std::vector<std::uint8_t>& ids;
};

template <typename W, typename Out>
void advance(StepContext& ctx, const W* in, std::size_t length, Out* out, std::vector<Out>& scratch, unsigned s) {
  draw_directions(ctx.bits, length / 2, ctx.rng, ctx.config.r);
  // Histograms ignore order, so the final shuffle is skipped.
  if (ctx.config.mode == CompressionMode::disordered && s < ctx.config.steps) {
    pull_and_shuffle(in, length, ctx.bits.data(), out, ctx.rng, scratch, ctx.ids);
  } else {
    pull_survivors(in, length, ctx.bits.data(), out);
  }
}

// Largest weight reachable after `steps` steps from 0/1 cells: ordered
// survivors hold a contiguous run of 2^(s+1) - 1 cells, disordered ones can
// triple every step. Neither exceeds the total mass.
std::uint64_t max_weight(CompressionMode mode, unsigned steps, std::uint64_t length) {
  std::uint64_t top = 1;
  for (unsigned s = 0; s < steps && top < length; ++s) top = mode == CompressionMode::ordered ? 2 * top + 1 : 3 * top;
  return std::min(top, length);
}

template <typename W>
std::vector<WeightHistogram> run_replica(const SimConfig& config, std::uint64_t index) {
  thread_local Workspace<std::uint8_t> narrow;
  thread_local Workspace<W> wide;
  thread_local std::vector<std::uint64_t> bits;
  thread_local std::vector<std::uint8_t> ids;
  Stream rng(config.seed, index);
  StepContext ctx{config, rng, bits, ids};
  narrow.current.resize(config.length);
  narrow.next.resize(config.length / 2);
  fill_initial(narrow.current, config.p, rng);

  std::vector<WeightHistogram> out(config.steps + 1);
  std::size_t length = config.length;
  if (config.p >= 1.0) {
    out[0].counts = {0, length};
    out[0].total_cells = length;
    out[0].mass = length;
  } else {
    count_weights(narrow.current.data(), length, out[0]);
  }
  std::uint8_t* current = narrow.current.data();
  std::uint8_t* next = narrow.next.data();
  unsigned s = 1;
  for (; s <= config.steps && max_weight(config.mode, s, config.length) <= 0xff; ++s) {
    advance(ctx, current, length, next, narrow.scratch, s);
    length /= 2;
    // The old input becomes scratch for the next output; it is at least as long.
    std::swap(current, next);
    out[s].step = s;
    count_weights(current, length, out[s]);
  }
  if (s > config.steps) return out;

  wide.current.resize(length / 2);
  wide.next.resize(length / 4);
  W* wcurrent = wide.current.data();
  W* wnext = wide.next.data();
  advance(ctx, current, length, wcurrent, wide.scratch, s);
  length /= 2;
  out[s].step = s;
  count_weights(wcurrent, length, out[s]);
  for (++s; s <= config.steps; ++s) {
    advance(ctx, wcurrent, length, wnext, wide.scratch, s);
    length /= 2;
    std::swap(wcurrent, wnext);
    out[s].step = s;
    count_weights(wcurrent, length, out[s]);
  }
  return out;
}

template <typename W>
std::vector<WeightHistogram> run_all(const SimConfig& config) {
  std::vector<std::vector<WeightHistogram>> parts(config.replicas);
  parallel_for(config.replicas, [&](std::size_t k) { parts[k] = run_replica<W>(config, k); });
  std::vector<WeightHistogram> total(config.steps + 1);
  for (unsigned s = 0; s <= config.steps; ++s) total[s].step = s;
  for (const auto& part : parts) {
    for (unsigned s = 0; s <= config.steps; ++s) total[s].merge(part[s]);
  }
  return total;
}

// Truncated product of coefficient vectors.
std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b, std::size_t degree) {
  std::vector<double> c(std::min(degree + 1, a.size() + b.size() - 1), 0.0);
  for (std::size_t i = 0; i < a.size() && i < c.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<double> ratios_of(const std::vector<double>& dist, std::size_t imax) {
  std::vector<double> out(imax + 1, kNaN);
  if (dist.size() < 2 || dist[1] == 0.0) return out;
  for (std::size_t i = 0; i <= imax; ++i) out[i] = (i < dist.size() ? dist[i] : 0.0) / dist[1];
  return out;
}

}  // namespace

void SimConfig::validate(bool allow_large) const {
  if (steps < 1) throw ConfigError("steps must be at least 1");
  if (steps > 40) throw CapacityError("steps above 40 are not supported");
  if (length < 2 || length % 2 != 0) throw ConfigError("length must be even and positive");
  if (length % (std::uint64_t{1} << steps) != 0) {
    throw ConfigError("length " + std::to_string(length) + " is not divisible by 2^" + std::to_string(steps));
  }
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p must lie in (0, 1]");
  check_probability(r);
  if (mode == CompressionMode::ordered && r != 0.5) {
    throw ConfigError("ordered mode is only defined for r = 1/2");
  }
  if (replicas < 1) throw ConfigError("replicas must be at least 1");
  if (!allow_large && length > kMaxLength) {
    throw CapacityError("length " + std::to_string(length) + " exceeds the desk-scale limit 2^28");
  }
}

Chain init_chain(std::uint64_t length, double p, Stream& rng) {
  if (length == 0 || length % 2 != 0) throw ConfigError("init_chain: length must be even and positive");
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("init_chain: p must lie in (0, 1]");
  Chain chain;
  chain.weights.resize(length);
  fill_initial(chain.weights, p, rng);
  return chain;
}

Chain init_chain(std::uint64_t length, double p, std::uint64_t seed) {
  Stream rng(seed);
  return init_chain(length, p, rng);
}

Chain apply_donations(const Chain& chain, std::span<const std::uint8_t> right) {
  const std::size_t length = chain.length();
  if (length < 2 || length % 2 != 0) throw ConfigError("apply_donations: chain length must be even");
  if (right.size() != length / 2) throw ConfigError("apply_donations: one direction per donor required");
  const std::size_t donors = right.size();
  std::vector<std::uint64_t> bits((donors + 63) / 64 + 1, 0);
  for (std::size_t j = 0; j < donors; ++j) {
    if (right[j]) bits[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  if (right[0]) bits[donors >> 6] |= std::uint64_t{1} << (donors & 63);
  Chain out;
  out.weights.resize(length / 2);
  pull_survivors(chain.weights.data(), length, bits.data(), out.weights.data());
  return out;
}

Chain compress_step(const Chain& chain, CompressionMode mode, Stream& rng, double r) {
  const std::size_t length = chain.length();
  if (length < 2 || length % 2 != 0) throw ConfigError("compress_step: chain length must be even");
  check_probability(r);
  if (mode == CompressionMode::ordered && r != 0.5) throw ConfigError("ordered mode is only defined for r = 1/2");
  std::vector<std::uint64_t> bits;
  draw_directions(bits, length / 2, rng, r);
  Chain out;
  out.weights.resize(length / 2);
  pull_survivors(chain.weights.data(), length, bits.data(), out.weights.data());
  if (mode == CompressionMode::disordered) {
    std::vector<std::uint32_t> scratch;
    std::vector<std::uint8_t> ids;
    shuffle_large(out.weights.data(), out.weights.size(), rng, scratch, ids);
  }
  return out;
}

void WeightHistogram::merge(const WeightHistogram& other) {
  if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
  total_cells += other.total_cells;
  mass += other.mass;
}

WeightHistogram histogram(const Chain& chain, unsigned step) {
  WeightHistogram h;
  h.step = step;
  count_weights(chain.weights.data(), chain.length(), h);
  return h;
}

double ordered_density(unsigned steps, std::size_t i) {
  const double top = std::ldexp(1.0, static_cast<int>(steps));
  const double x = static_cast<double>(i);
  const double scale = std::ldexp(1.0, -2 * static_cast<int>(steps));
  if (i == 0 || x >= 2.0 * top) return 0.0;
  return (x <= top ? x : 2.0 * top - x) * scale;
}

std::vector<double> exact_weight_distribution(CompressionMode mode, unsigned steps, double p, double r,
                                              std::size_t degree) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("exact_weight_distribution: p must lie in (0, 1]");
  const std::vector<double> cell{1.0 - p, p};
  if (mode == CompressionMode::disordered) {
    const MergePolynomial poly(r);
    std::vector<double> q = cell;
    for (unsigned s = 0; s < steps; ++s) {
      const auto q2 = multiply(q, q, degree);
      const auto q3 = multiply(q2, q, degree);
      std::vector<double> next(std::max({q.size(), q2.size(), q3.size()}), 0.0);
      for (std::size_t i = 0; i < q.size(); ++i) next[i] += poly.a1() * q[i];
      for (std::size_t i = 0; i < q2.size(); ++i) next[i] += poly.a2() * q2[i];
      for (std::size_t i = 0; i < q3.size(); ++i) next[i] += poly.a3() * q3[i];
      q = std::move(next);
    }
    q.resize(degree + 1, 0.0);
    return q;
  }
  if (r != 0.5) throw ConfigError("ordered mode is only defined for r = 1/2");
  if (steps > 20) throw CapacityError("exact ordered distribution limited to 20 steps");
  const std::size_t support = (std::size_t{2} << steps) - 1;
  std::vector<double> out(degree + 1, 0.0);
  if (p == 1.0) {
    for (std::size_t i = 1; i <= std::min(support, degree); ++i) out[i] = ordered_density(steps, i);
    return out;
  }
  // sum_m rho_m s^m with s = (1 - p) + p z; terms with tiny weight are dropped.
  std::vector<double> power{1.0};
  for (std::size_t m = 1; m <= support; ++m) {
    power = multiply(power, cell, degree);
    const double rho = ordered_density(steps, m);
    for (std::size_t i = 0; i < power.size(); ++i) out[i] += rho * power[i];
  }
  return out;
}

std::vector<double> theory_ratios(const SimConfig& config, std::size_t imax) {
  if (config.mode == CompressionMode::disordered && config.p < 1.0 && config.r == 0.5) {
    std::vector<double> out(imax + 1);
    const PowerSeries phi = phi_taylor(400);
    for (std::size_t i = 0; i <= imax; ++i) {
      try {
        out[i] = inhom_ratio(i, config.p, phi);
      } catch (const AccuracyError&) {
        out[i] = kNaN;  // series truncation too short for this order
      }
    }
    return out;
  }
  if (config.mode == CompressionMode::ordered && config.p < 1.0) {
    // Large-N limit (i + 1 - p) / (2 - p).
    std::vector<double> out(imax + 1);
    for (std::size_t i = 0; i <= imax; ++i) out[i] = (static_cast<double>(i) + 1.0 - config.p) / (2.0 - config.p);
    return out;
  }
  return ratios_of(exact_weight_distribution(config.mode, config.steps, config.p, config.r, imax), imax);
}

RunReport run_experiment(const SimConfig& config, bool allow_large) {
  config.validate(allow_large);
  RunReport report;
  report.config = config;
  report.version = kVersion;

  const std::uint64_t top = max_weight(config.mode, config.steps, config.length);
  if (top <= 0xff) {
    report.histograms = run_all<std::uint8_t>(config);
  } else if (top <= 0xffff) {
    report.histograms = run_all<std::uint16_t>(config);
  } else if (top <= 0xffffffffULL) {
    report.histograms = run_all<std::uint32_t>(config);
  } else {
    report.histograms = run_all<std::uint64_t>(config);
  }

  const std::size_t first = config.p < 1.0 ? 0 : 1;
  for (unsigned s = 1; s <= config.steps; ++s) {
    const WeightHistogram& h = report.histograms[s];
    const std::size_t imax = std::max(report.compared_max, h.counts.empty() ? 0 : h.counts.size() - 1);
    SimConfig at_step = config;
    at_step.steps = s;
    const auto theory = theory_ratios(at_step, imax);
    std::vector<double> exact(imax + 1, kNaN);
    if (config.mode == CompressionMode::disordered || config.p == 1.0 || s <= 12) {
      exact = ratios_of(exact_weight_distribution(config.mode, s, config.p, config.r, imax), imax);
    }
    const std::uint64_t n1 = h.count(1);
    for (std::size_t i = first; i <= imax; ++i) {
      RatioRow row;
      row.step = s;
      row.i = i;
      row.count = h.count(i);
      row.density = static_cast<double>(row.count) / static_cast<double>(h.total_cells);
      row.ratio = n1 > 0 ? static_cast<double>(row.count) / static_cast<double>(n1) : kNaN;
      row.theory_ratio = theory[i];
      row.exact_ratio = exact[i];
      report.rows.push_back(row);
    }
    if (s == config.steps) {
      report.ratio_defined = n1 > 0;
      double worst = n1 > 0 ? 0.0 : kNaN;
      for (std::size_t i = first; i <= report.compared_max && n1 > 0; ++i) {
        if (!std::isfinite(theory[i]) || theory[i] == 0.0) continue;
        const double ratio = static_cast<double>(h.count(i)) / static_cast<double>(n1);
        worst = std::max(worst, std::abs(ratio / theory[i] - 1.0));
      }
      report.max_rel_deviation = worst;
    }
  }
  return report;
}

ExactDensities exact_enumeration_oracle(std::uint64_t cycle_length, unsigned steps, CompressionMode mode) {
  if (steps < 1) throw ConfigError("oracle: steps must be at least 1");
  if (mode == CompressionMode::disordered && steps != 1) {
    throw ConfigError("oracle: disordered enumeration covers a single step only");
  }
  if (steps >= 63 || cycle_length % (std::uint64_t{1} << steps) != 0 || cycle_length < 2) {
    throw ConfigError("oracle: cycle length must be divisible by 2^steps");
  }
  std::uint64_t donors = 0;
  for (unsigned s = 0; s < steps; ++s) donors += (cycle_length >> s) / 2;
  if (donors > 24) throw CapacityError("oracle: 2^" + std::to_string(donors) + " outcomes exceed 2^24");

  ExactDensities result;
  const std::uint64_t final_cells = cycle_length >> steps;
  result.denominator = (std::uint64_t{1} << donors) * final_cells;
  result.numerators.assign(cycle_length + 1, 0);

  // Depth-first over steps; each level tries every direction mask of its donors.
  auto recurse = [&](auto&& self, const std::vector<std::uint64_t>& cells, unsigned step) -> void {
    if (step == steps) {
      for (auto w : cells) ++result.numerators[w];
      return;
    }
    const std::size_t half = cells.size() / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << half); ++mask) {
      std::vector<std::uint64_t> next(half);
      for (std::size_t j = 0; j < half; ++j) next[j] += cells[2 * j + 1];
      for (std::size_t j = 0; j < half; ++j) {
        const bool to_right = (mask >> j) & 1U;
        const std::size_t target = to_right ? j : (j + half - 1) % half;
        next[target] += cells[2 * j];
      }
      self(self, next, step + 1);
    }
  };
  recurse(recurse, std::vector<std::uint64_t>(cycle_length, 1), 0);
  while (result.numerators.size() > 1 && result.numerators.back() == 0) result.numerators.pop_back();
  return result;
}

void write_snapshot(const std::filesystem::path& path, const Chain& chain, unsigned width) {
  if (width != 1 && width != 2 && width != 4 && width != 8) throw ConfigError("snapshot width must be 1, 2, 4 or 8");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open snapshot " + path.string());
  auto put = [&](std::uint64_t v, unsigned bytes) {
    char buf[8];
    for (unsigned b = 0; b < bytes; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xff);
    out.write(buf, bytes);
  };
  put(chain.length(), 8);
  const std::uint64_t limit = width == 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * width)) - 1;
  for (auto w : chain.weights) {
    if (w > limit) throw CapacityError("snapshot width too small for weight " + std::to_string(w));
    put(w, width);
  }
  if (!out) throw ConfigError("failed writing snapshot " + path.string());
}

Chain read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 8) throw ConfigError("snapshot shorter than its header");
  auto get = [&](std::size_t offset, unsigned n) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < n; ++b) v |= static_cast<std::uint64_t>(bytes[offset + b]) << (8 * b);
    return v;
  };
  const std::uint64_t length = get(0, 8);
  const std::size_t payload = bytes.size() - 8;
  if (length == 0 || payload % length != 0) throw ConfigError("snapshot size does not match its header");
  const auto width = static_cast<unsigned>(payload / length);
  if (width != 1 && width != 2 && width != 4 && width != 8) throw ConfigError("snapshot has unsupported width");
  Chain chain;
  chain.weights.resize(length);
  for (std::uint64_t k = 0; k < length; ++k) {
    const std::uint64_t v = get(8 + k * width, width);
    if (v > std::numeric_limits<std::uint32_t>::max()) throw CapacityError("snapshot weight exceeds 32 bits");
    chain.weights[k] = static_cast<std::uint32_t>(v);
  }
  return chain;
}

}  // namespace compresslab
