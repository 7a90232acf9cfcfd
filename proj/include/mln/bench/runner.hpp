#pragma once

// Experiment harness: single approximations, (method, rank, seed) grids and
// bound evaluations, with CSV output.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mln/diagnostics.hpp"
#include "mln/mln.hpp"

namespace mln::bench {

enum class Method { mln, smln, mln1, hosvd, rhosvd, rsthosvd };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct RunSpec {
  Method method = Method::mln;
  std::vector<std::size_t> ranks;
  // Same value on every mode; nullopt means ceil(r_k / 2).
  std::optional<std::size_t> oversample;
  EpsilonSetting eps;
  std::uint64_t seed = 0;
  bool fallback = true;
};

struct ApproxReport {
  std::string method;
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> oversample;  // resolved per mode; empty for methods without oversampling
  std::string oversample_spec;          // "r/2", an integer, or "-"
  std::uint64_t seed = 0;
  double rel_error = 0.0;
  std::optional<double> time_s;
  std::vector<std::string> warnings;
};

MlnParams mln_params(const RunSpec& spec, std::size_t order);

// Runs one method; warnings (if non-null) receives fallback notices.
TuckerTensor approximate(const DenseTensor& a, const RunSpec& spec, std::vector<std::string>* warnings = nullptr);

// Relative Frobenius error of one run. Wall time covers the approximation call
// only and is recorded when `timing` is set.
ApproxReport run_method(const DenseTensor& a, const RunSpec& spec, bool timing = false);

struct CompareConfig {
  std::vector<Method> methods;
  std::vector<std::size_t> ranks;  // each applied uniformly to all modes
  std::optional<std::size_t> oversample;
  EpsilonSetting eps;
  bool fallback = true;
  std::size_t seeds = 10;          // seeds 0 .. seeds-1
  bool timing = false;
  std::size_t threads = 0;         // 0: hardware concurrency
};

// One report per (method, rank, seed), sorted by method, rank, seed.
std::vector<ApproxReport> run_compare(const DenseTensor& a, const CompareConfig& cfg);

// method,rank_spec,oversample_spec,seed,rel_error,time_s,warnings
void write_compare_csv(std::ostream& out, const std::vector<ApproxReport>& reports);

// Writes through a temporary file and renames; errors carry the path.
void write_text_file(const std::string& path, const std::string& contents);

enum class BoundSketch { gaussian, srht_shared };

struct BoundsConfig {
  std::vector<std::size_t> ranks;
  std::optional<std::size_t> oversample;
  std::uint64_t seed = 0;
  BoundSketch sketch = BoundSketch::gaussian;
};

struct BoundsResult {
  MlnRun run;
  BoundReport report;
};

// Plain MLN with independent Gaussian sketches, or one shared SRHT pair (X, Y)
// for all modes (all dims equal), followed by evaluate_bound.
BoundsResult run_bounds(const DenseTensor& a, const BoundsConfig& cfg);

// One row per mode plus a summary row.
void write_bounds_csv(std::ostream& out, const BoundReport& report);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);
std::string format_ranks(const std::vector<std::size_t>& ranks);

}  // namespace mln::bench
