#include "graphpencil/experiment.hpp"

#include "graphpencil/counting.hpp"
#include "graphpencil/error.hpp"
#include "graphpencil/estimation.hpp"
#include "graphpencil/io.hpp"
#include "graphpencil/pencil.hpp"
#include "graphpencil/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

namespace graphpencil {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

const char* to_string(Method m) noexcept {
  return m == Method::Bistar ? "bistar" : "two_hop";
}

Method parse_method(const std::string& text) {
  if (text == "bistar") return Method::Bistar;
  if (text == "two_hop" || text == "two-hop") return Method::TwoHop;
  throw ValidationError("unknown method '" + text + "' (expected bistar or two_hop)");
}

double squared_error(const Eigen::MatrixXd& b_true, const Eigen::MatrixXd& b_inferred,
                     const Eigen::VectorXd& pi_true) {
  if (b_true.rows() != b_inferred.rows() || b_true.cols() != b_inferred.cols() ||
      b_true.rows() != b_true.cols() || pi_true.size() != b_true.rows()) {
    throw ValidationError("squared_error: shapes of B_true, B_inferred and pi do not match");
  }
  const Eigen::MatrixXd diff2 = (b_inferred - b_true).cwiseAbs2();
  return pi_true.dot(diff2 * pi_true);
}

double known_blocks_baseline(const SbmParams& params, Index n) {
  if (n < 1) throw ValidationError("known_blocks_baseline needs n >= 1");
  validate(params);
  const Index k = params.k();
  const double nn = static_cast<double>(n);
  double total = 0.0;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const double weight = params.pi(i) * params.pi(j);
      if (weight == 0.0) continue;
      const double b = params.b(i, j);
      const double pairs = i == j ? (nn * params.pi(i)) * (nn * params.pi(i)) / 2.0
                                  : (nn * params.pi(i)) * (nn * params.pi(j));
      total += weight * b * (1.0 - b) / pairs;
    }
  }
  return total;
}

void validate(const ExperimentSpec& spec) {
  validate(spec.sbm);
  if (spec.sizes.empty()) throw ValidationError("experiment needs at least one size");
  if (spec.replicates.size() != spec.sizes.size()) {
    throw ValidationError("replicates must list one count per size");
  }
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i] < 1) throw ValidationError("sizes must be positive");
    if (i > 0 && spec.sizes[i] <= spec.sizes[i - 1]) {
      throw ValidationError("sizes must be strictly ascending");
    }
    if (spec.replicates[i] < 1) throw ValidationError("replicates must be at least 1");
  }
  if (spec.methods.empty()) throw ValidationError("experiment needs at least one method");
  if (spec.sparse_mode) {
    if (spec.n_ref < 1) throw ValidationError("sparse mode needs n_ref >= 1");
    for (Index n : spec.sizes) params_at_size(spec, n);
  }
}

SbmParams params_at_size(const ExperimentSpec& spec, Index n) {
  if (!spec.sparse_mode) return spec.sbm;
  SbmParams p = spec.sbm;
  p.b *= static_cast<double>(spec.n_ref) / static_cast<double>(n);
  if (p.b.maxCoeff() > 1.0) {
    throw ValidationError("sparse mode: B scaled to n=" + std::to_string(n) +
                          " has entries above 1 (n_ref=" + std::to_string(spec.n_ref) + ")");
  }
  return p;
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& doc) {
  ExperimentSpec spec;
  try {
    if (doc.contains("sbm")) {
      spec.sbm = params_from_json(doc.at("sbm"));
    } else {
      throw ParseError("experiment spec needs an \"sbm\" field", 0);
    }
    if (doc.contains("sizes")) spec.sizes = doc.at("sizes").get<std::vector<Index>>();
    if (doc.contains("replicates")) {
      const auto& r = doc.at("replicates");
      if (r.is_number_integer()) {
        spec.replicates.assign(spec.sizes.size(), r.get<int>());
      } else {
        spec.replicates = r.get<std::vector<int>>();
      }
    } else if (doc.contains("sizes")) {
      throw ParseError("experiment spec with custom sizes needs \"replicates\"", 0);
    }
    if (doc.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : doc.at("methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("sparse_mode")) spec.sparse_mode = doc.at("sparse_mode").get<bool>();
    if (doc.contains("n_ref")) spec.n_ref = doc.at("n_ref").get<Index>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed experiment spec: ") + e.what(), 0);
  }
  validate(spec);
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressCallback& progress) {
  validate(spec);
  const int k = static_cast<int>(spec.sbm.k());
  const bool any_two_hop =
      std::find(spec.methods.begin(), spec.methods.end(), Method::TwoHop) != spec.methods.end();
  const std::vector<BistarGlyph> glyphs = required_glyphs(k, any_two_hop);

  ExperimentResult result;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const Index n = spec.sizes[s];
    const SbmParams truth = sorted_by_degree(params_at_size(spec, n));
    const Eigen::VectorXd d_true = block_degrees(truth);
    for (int rep = 0; rep < spec.replicates[s]; ++rep) {
      if (progress) progress(n, rep);
      const std::uint64_t seed =
          derive_seed(spec.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep)});
      std::optional<CountingDensitySource> source;
      std::string count_failure;
      try {
        const SampledGraph sample = sample_graph(truth, {n, seed});
        source.emplace(sample.graph, glyphs);
      } catch (const Error& e) {
        count_failure = e.what();
      }
      for (Method method : spec.methods) {
        ReplicateRecord rec;
        rec.size = n;
        rec.replicate = rep;
        rec.method = method;
        rec.seed = seed;
        if (!source) {
          rec.failure = count_failure;
          result.records.push_back(rec);
          continue;
        }
        PencilOptions options;
        options.two_hop = method == Method::TwoHop;
        try {
          const PencilSolution<double> sol = infer_sbm(*source, k, options);
          rec.ok = true;
          rec.squared_error = squared_error(truth.b, sol.b, truth.pi);
          rec.pi_sq_error = (sol.pi - truth.pi).squaredNorm();
          rec.d_sq_error = (sol.d - d_true).squaredNorm();
        } catch (const Error& e) {
          rec.failure = e.what();
        }
        result.records.push_back(rec);
      }
    }

    for (Method method : spec.methods) {
      SizeSummary sum;
      sum.size = n;
      sum.method = method;
      sum.baseline = known_blocks_baseline(truth, n);
      std::vector<double> errors;
      for (const auto& r : result.records) {
        if (r.size != n || r.method != method) continue;
        ++sum.replicates;
        if (r.ok) errors.push_back(r.squared_error);
      }
      sum.successes = static_cast<int>(errors.size());
      sum.failure_rate = 1.0 - static_cast<double>(sum.successes) / sum.replicates;
      if (errors.empty()) {
        sum.mean_sq_error = sum.stdev = sum.log_mean = sum.log_band_low = sum.log_band_high =
            std::nan("");
      } else {
        double mean = 0.0;
        for (double e : errors) mean += e;
        mean /= static_cast<double>(errors.size());
        double ss = 0.0;
        for (double e : errors) ss += (e - mean) * (e - mean);
        sum.mean_sq_error = mean;
        sum.stdev = errors.size() > 1 ? std::sqrt(ss / static_cast<double>(errors.size() - 1)) : 0.0;
        sum.log_mean = std::log(mean);
        sum.log_band_low = sum.log_mean - sum.stdev / mean;
        sum.log_band_high = sum.log_mean + sum.stdev / mean;
      }
      result.summaries.push_back(sum);
    }
  }
  return result;
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
  out << "size,method,mean_sq_error,stdev,baseline,failure_rate,log_mean,log_band_low,log_band_high\n";
  for (const auto& s : result.summaries) {
    out << s.size << ',' << to_string(s.method) << ',' << num(s.mean_sq_error) << ','
        << num(s.stdev) << ',' << num(s.baseline) << ',' << num(s.failure_rate) << ','
        << num(s.log_mean) << ',' << num(s.log_band_low) << ',' << num(s.log_band_high) << '\n';
  }
}

void write_raw_csv(std::ostream& out, const ExperimentResult& result) {
  out << "size,replicate,method,seed,status,squared_error,pi_sq_error,d_sq_error,failure\n";
  for (const auto& r : result.records) {
    out << r.size << ',' << r.replicate << ',' << to_string(r.method) << ',' << r.seed << ','
        << (r.ok ? "ok" : "failed") << ',' << (r.ok ? num(r.squared_error) : "") << ','
        << (r.ok ? num(r.pi_sq_error) : "") << ',' << (r.ok ? num(r.d_sq_error) : "") << ','
        << csv_field(r.failure) << '\n';
  }
}

double log_log_slope(const ExperimentResult& result, Method method) {
  std::vector<double> xs, ys;
  for (const auto& s : result.summaries) {
    if (s.method != method || !(s.mean_sq_error > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(s.size)));
    ys.push_back(std::log(s.mean_sq_error));
  }
  if (xs.size() < 2) return std::nan("");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::vector<VarianceCheckRow> run_variance_check(const SbmParams& params, Index n, int graphs,
                                                 const std::vector<BistarGlyph>& glyphs,
                                                 std::uint64_t seed) {
  validate(params);
  if (graphs < 2) throw ValidationError("variance check needs at least 2 graphs");
  if (glyphs.empty()) throw ValidationError("variance check needs at least one glyph");
  std::vector<std::vector<double>> densities(glyphs.size()), estimates(glyphs.size());
  for (int g = 0; g < graphs; ++g) {
    const SampledGraph sample =
        sample_graph(params, {n, derive_seed(seed, {static_cast<std::uint64_t>(g)})});
    const std::vector<CountTotal> totals = count_totals(sample.graph, glyphs);
    const std::vector<double> jack = jackknife_variances(sample.graph, glyphs);
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      densities[i].push_back(
          static_cast<double>(totals[i].value / falling_factorial(n, glyphs[i].vertex_count())));
      estimates[i].push_back(jack[i]);
    }
  }
  std::vector<VarianceCheckRow> rows;
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    VarianceCheckRow row;
    row.glyph = glyphs[i];
    double mean = 0.0;
    for (double x : densities[i]) mean += x;
    mean /= graphs;
    double ss = 0.0;
    for (double x : densities[i]) ss += (x - mean) * (x - mean);
    row.mean_density = mean;
    row.empirical_variance = ss / (graphs - 1);
    row.median_jackknife = median(estimates[i]);
    row.ratio = row.median_jackknife / row.empirical_variance;
    rows.push_back(row);
  }
  return rows;
}

void write_variance_csv(std::ostream& out, const std::vector<VarianceCheckRow>& rows) {
  out << "glyph,mean_density,empirical_variance,median_jackknife,ratio\n";
  for (const auto& r : rows) {
    out << format_glyph(r.glyph) << ',' << num(r.mean_density) << ',' << num(r.empirical_variance)
        << ',' << num(r.median_jackknife) << ',' << num(r.ratio) << '\n';
  }
}

}  // namespace graphpencil
