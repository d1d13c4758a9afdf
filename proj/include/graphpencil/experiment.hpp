#pragma once

#include "graphpencil/glyph.hpp"
#include "graphpencil/sbm.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace graphpencil {

enum class Method { Bistar, TwoHop };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& text);

/// pi^T (B_inferred - B_true)^2 pi with the square taken entrywise.
double squared_error(const Eigen::MatrixXd& b_true, const Eigen::MatrixXd& b_inferred,
                     const Eigen::VectorXd& pi_true);

/// Expected squared error of the per-block-pair edge frequencies when the
/// block labels are known: Var(B_ij) = B_ij (1 - B_ij) / (n pi_i n pi_j) off
/// the diagonal and B_ii (1 - B_ii) / ((n pi_i)^2 / 2) on it, contracted
/// with pi on both sides.
double known_blocks_baseline(const SbmParams& params, Index n);

struct ExperimentSpec {
  SbmParams sbm;
  std::vector<Index> sizes{256, 512, 1024, 2048};
  std::vector<int> replicates{64, 32, 16, 8};
  std::vector<Method> methods{Method::Bistar, Method::TwoHop};
  std::uint64_t seed = 1;
  /// Scale B by n_ref / n so the expected degree stays fixed.
  bool sparse_mode = false;
  Index n_ref = 256;
};

/// Throws ValidationError naming the broken invariant.
void validate(const ExperimentSpec& spec);

ExperimentSpec experiment_spec_from_json(const nlohmann::json& doc);

/// SBM actually sampled at size n (B scaled in sparse mode).
SbmParams params_at_size(const ExperimentSpec& spec, Index n);

struct ReplicateRecord {
  Index size = 0;
  int replicate = 0;
  Method method = Method::Bistar;
  std::uint64_t seed = 0;
  bool ok = false;
  double squared_error = 0.0;
  double pi_sq_error = 0.0;
  double d_sq_error = 0.0;
  std::string failure;
};

struct SizeSummary {
  Index size = 0;
  Method method = Method::Bistar;
  int replicates = 0;
  int successes = 0;
  double mean_sq_error = 0.0;
  double stdev = 0.0;
  double baseline = 0.0;
  double failure_rate = 0.0;
  /// Shading for a log plot: log(mean) +- stdev / mean.
  double log_mean = 0.0;
  double log_band_low = 0.0;
  double log_band_high = 0.0;
};

struct ExperimentResult {
  std::vector<ReplicateRecord> records;
  std::vector<SizeSummary> summaries;
};

using ProgressCallback = std::function<void(Index size, int replicate)>;

/// Samples every (size, replicate) graph with seed derive_seed(seed, {size,
/// replicate}), counts the bistar densities once and runs every method on
/// them. Inference failures are recorded, not thrown.
ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressCallback& progress = {});

/// Columns: size, method, mean_sq_error, stdev, baseline, failure_rate,
/// log_mean, log_band_low, log_band_high.
void write_summary_csv(std::ostream& out, const ExperimentResult& result);

/// Columns: size, replicate, method, seed, status, squared_error,
/// pi_sq_error, d_sq_error, failure.
void write_raw_csv(std::ostream& out, const ExperimentResult& result);

/// Least-squares slope of log(mean_sq_error) against log(size) for one method.
double log_log_slope(const ExperimentResult& result, Method method);

struct VarianceCheckRow {
  BistarGlyph glyph;
  double mean_density = 0.0;
  double empirical_variance = 0.0;
  double median_jackknife = 0.0;
  /// median_jackknife / empirical_variance.
  double ratio = 0.0;
};

/// Samples `graphs` graphs of size n and compares the spread of each
/// glyph's density across samples with the per-graph jackknife estimate.
std::vector<VarianceCheckRow> run_variance_check(const SbmParams& params, Index n, int graphs,
                                                 const std::vector<BistarGlyph>& glyphs,
                                                 std::uint64_t seed);

void write_variance_csv(std::ostream& out, const std::vector<VarianceCheckRow>& rows);

}  // namespace graphpencil
