#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "compresslab/mode.hpp"
#include "compresslab/rng.hpp"

namespace compresslab {

// Cyclic chain of cell weights. Cell 0 is even, so even cells donate and odd
// cells survive a compression step.
template <typename W>
struct BasicChain {
  std::vector<W> weights;

  std::size_t length() const noexcept { return weights.size(); }
  std::uint64_t mass() const noexcept {
    std::uint64_t m = 0;
    for (W w : weights) m += w;
    return m;
  }
};

using Chain = BasicChain<std::uint32_t>;

struct SimConfig {
  std::uint64_t length = std::uint64_t{1} << 22;
  unsigned steps = 2;
  CompressionMode mode = CompressionMode::ordered;
  double p = 1.0;
  double r = 0.5;
  std::uint64_t seed = 1;
  unsigned replicas = 1;

  // ConfigError on broken invariants; CapacityError above kMaxLength cells
  // unless allow_large is set.
  void validate(bool allow_large = false) const;
};

inline constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 28;

// p = 1 gives all ones, otherwise independent Bernoulli(p) weights.
Chain init_chain(std::uint64_t length, double p, std::uint64_t seed);
Chain init_chain(std::uint64_t length, double p, Stream& rng);

// Applies given donation directions: right[j] != 0 sends cell 2j to cell 2j+1,
// otherwise to cell 2j-1 (cyclically). Survivors are returned in order.
Chain apply_donations(const Chain& chain, std::span<const std::uint8_t> right);

// Random donations (right with probability r), then a uniform shuffle of the
// survivors in disordered mode.
Chain compress_step(const Chain& chain, CompressionMode mode, Stream& rng, double r = 0.5);

struct WeightHistogram {
  std::vector<std::uint64_t> counts;  // counts[i] = number of cells of weight i
  std::uint64_t total_cells = 0;
  std::uint64_t mass = 0;
  unsigned step = 0;

  std::uint64_t count(std::size_t i) const noexcept { return i < counts.size() ? counts[i] : 0; }
  void merge(const WeightHistogram& other);
};

WeightHistogram histogram(const Chain& chain, unsigned step = 0);

struct RatioRow {
  unsigned step = 0;
  std::size_t i = 0;
  std::uint64_t count = 0;
  double density = 0.0;
  double ratio = 0.0;         // N_i / N_1, NaN when N_1 = 0
  double theory_ratio = 0.0;  // NaN when no theory applies
  double exact_ratio = 0.0;   // finite-step value, NaN when not computed
};

struct RunReport {
  SimConfig config;
  std::vector<WeightHistogram> histograms;  // steps 0..N, summed over replicas
  std::vector<RatioRow> rows;
  bool ratio_defined = true;                // N_1 > 0 at the final step
  double max_rel_deviation = 0.0;           // final step, i <= compared_max
  std::size_t compared_max = 8;
  std::string version;
};

RunReport run_experiment(const SimConfig& config, bool allow_large = false);

// Densities rho_i after `steps` steps of an ordered chain started from ones:
// i / 4^N for i <= 2^N and (2^{N+1} - i) / 4^N above.
double ordered_density(unsigned steps, std::size_t i);

// Coefficients 0..degree of the cell-weight generating function after
// `steps` steps, started from Bernoulli(p) cells:
//   disordered: P_r^{N}(1 - p + p z)
//   ordered:    sum_m rho_m (1 - p + p z)^m
std::vector<double> exact_weight_distribution(CompressionMode mode, unsigned steps, double p, double r,
                                              std::size_t degree);

// Theory column for i = 0..imax after config.steps steps; NaN where none
// applies. p = 1 uses the exact finite-step formulas; p < 1 uses the large-N
// limits (i + 1 - p)/(2 - p) (ordered) and inhom_ratio (disordered, r = 1/2);
// disordered p < 1 with r != 1/2 falls back to the exact distribution.
std::vector<double> theory_ratios(const SimConfig& config, std::size_t imax);

struct ExactDensities {
  std::vector<std::uint64_t> numerators;  // by weight
  std::uint64_t denominator = 0;          // outcomes * surviving cells
  double density(std::size_t i) const {
    return i < numerators.size() ? static_cast<double>(numerators[i]) / static_cast<double>(denominator) : 0.0;
  }
};

// Enumerates every donation outcome of a homogeneous cycle. Ordered mode
// needs 2^donors <= 2^24; disordered mode supports one step only.
ExactDensities exact_enumeration_oracle(std::uint64_t cycle_length, unsigned steps, CompressionMode mode);

// 8-byte little-endian length, then little-endian weights of `width` bytes.
void write_snapshot(const std::filesystem::path& path, const Chain& chain, unsigned width = 4);
Chain read_snapshot(const std::filesystem::path& path);

}  // namespace compresslab
