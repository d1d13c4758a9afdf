// graphpencil: sampling, counting and SBM inference from subgraph densities.
#include "graphpencil/counting.hpp"
#include "graphpencil/error.hpp"
#include "graphpencil/estimation.hpp"
#include "graphpencil/experiment.hpp"
#include "graphpencil/forward.hpp"
#include "graphpencil/io.hpp"
#include "graphpencil/quad.hpp"
#include "graphpencil/roundtrip.hpp"
#include "graphpencil/sampling.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace gp = graphpencil;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Common {
  std::uint64_t seed = 1;
  std::string output;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--output,-o", c.output, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or structured (JSON)")
      ->check(CLI::IsMember({"csv", "structured"}))
      ->capture_default_str();
}

// Writes to --output, or stdout when unset.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw gp::IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw gp::IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

gp::Rooting parse_rooting(const std::string& s) {
  if (s == "unrooted") return gp::Rooting::Unrooted;
  if (s == "left") return gp::Rooting::LeftRooted;
  return gp::Rooting::BiRooted;
}

// ---- forward

struct ForwardArgs {
  Common common;
  std::string params;
  std::vector<std::string> glyphs;
  std::string rooting = "unrooted";
};

int run_forward(const ForwardArgs& a) {
  const gp::SbmParams p = gp::load_params(a.params);
  Sink sink(a.common.output);
  auto& out = sink.stream();
  nlohmann::json doc = nlohmann::json::array();
  if (a.common.format == "csv") out << "glyph,rooting,row,col,density\n";
  for (const auto& text : a.glyphs) {
    const gp::BistarGlyph g = gp::parse_glyph(text).with_rooting(parse_rooting(a.rooting));
    Eigen::MatrixXd m;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            m = Eigen::MatrixXd::Constant(1, 1, v);
          } else {
            m = v;
          }
        },
        gp::eval_density(p, g));
    if (a.common.format == "csv") {
      for (gp::Index i = 0; i < m.rows(); ++i) {
        for (gp::Index j = 0; j < m.cols(); ++j) {
          out << gp::format_glyph(g) << ',' << gp::to_string(g.rooting) << ',' << i << ',' << j
              << ',' << num(m(i, j)) << '\n';
        }
      }
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (gp::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row;
        for (gp::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
      }
      nlohmann::json value;
      if (g.rooting == gp::Rooting::Unrooted) {
        value = m(0, 0);
      } else if (g.rooting == gp::Rooting::LeftRooted) {
        value = gp::to_double_vector<double>(m.col(0));
      } else {
        value = rows;
      }
      doc.push_back({{"glyph", gp::format_glyph(g)},
                     {"rooting", gp::to_string(g.rooting)},
                     {"density", value}});
    }
  }
  if (a.common.format == "structured") out << doc.dump(2) << '\n';
  sink.finish();
  return 0;
}

// ---- sample

struct SampleArgs {
  Common common;
  std::string params;
  gp::Index n = 0;
  std::string labels;
};

int run_sample(const SampleArgs& a) {
  const gp::SbmParams p = gp::load_params(a.params);
  const gp::SampledGraph s = gp::sample_graph(p, {a.n, a.common.seed});
  Sink sink(a.common.output);
  gp::write_edge_list(sink.stream(), s.graph);
  sink.finish();
  if (!a.labels.empty()) {
    std::ofstream lab(a.labels);
    if (!lab) throw gp::IoError("cannot open '" + a.labels + "' for writing");
    gp::write_labels(lab, s.blocks);
    if (!lab) throw gp::IoError("write to '" + a.labels + "' failed");
  }
  return 0;
}

// ---- count

struct CountArgs {
  Common common;
  std::string graph;
  std::vector<std::string> glyphs;
  int max_lcr = -1;
  bool jackknife = true;
};

int run_count(const CountArgs& a) {
  const gp::UndirectedGraph g = gp::load_edge_list(a.graph);
  std::vector<gp::BistarGlyph> glyphs;
  for (const auto& t : a.glyphs) glyphs.push_back(gp::parse_glyph(t));
  if (a.max_lcr >= 0) {
    for (int total = 0; total <= a.max_lcr; ++total) {
      for (int l = total; l >= 0; --l) {
        for (int c = total - l; c >= 0; --c) {
          const int r = total - l - c;
          if (r > l) continue;
          for (bool e : {false, true}) glyphs.push_back({l, c, r, e});
        }
      }
    }
  }
  if (glyphs.empty()) throw gp::ValidationError("no glyphs given (use --glyph or --max-lcr)");
  const std::vector<gp::CountTotal> totals = gp::count_totals(g, glyphs);
  std::vector<double> jack(glyphs.size(), std::nan(""));
  if (a.jackknife) jack = gp::jackknife_variances(g, glyphs);

  Sink sink(a.common.output);
  auto& out = sink.stream();
  nlohmann::json doc = nlohmann::json::array();
  if (a.common.format == "csv") out << "glyph,count,density,jackknife_variance\n";
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    const auto& t = totals[i];
    const std::string count =
        t.is_exact ? gp::to_string(t.exact) : num(static_cast<double>(t.value));
    const double density =
        static_cast<double>(t.value / gp::falling_factorial(g.n(), glyphs[i].vertex_count()));
    if (a.common.format == "csv") {
      out << gp::format_glyph(glyphs[i]) << ',' << count << ',' << num(density) << ','
          << (a.jackknife ? num(jack[i]) : "") << '\n';
    } else {
      nlohmann::json row{{"glyph", gp::format_glyph(glyphs[i])},
                         {"count", count},
                         {"exact", t.is_exact},
                         {"density", density}};
      if (a.jackknife) row["jackknife_variance"] = jack[i];
      doc.push_back(row);
    }
  }
  if (a.common.format == "structured") out << doc.dump(2) << '\n';
  sink.finish();
  return 0;
}

// ---- infer

struct InferArgs {
  Common common;
  std::string graph;
  int k = 0;
  bool two_hop = false;
  bool clamp = false;
};

int run_infer(const InferArgs& a) {
  const gp::UndirectedGraph g = gp::load_edge_list(a.graph);
  gp::PencilOptions options;
  options.two_hop = a.two_hop;
  options.clamp = a.clamp;
  const gp::PencilSolution<double> sol = gp::infer_from_graph(g, a.k, options);
  Sink sink(a.common.output);
  auto& out = sink.stream();
  if (a.common.format == "structured") {
    out << gp::solution_to_json(sol).dump(2) << '\n';
  } else {
    out << "param,row,col,value\n";
    for (gp::Index i = 0; i < sol.pi.size(); ++i) out << "pi," << i << ",," << num(sol.pi(i)) << '\n';
    for (gp::Index i = 0; i < sol.d.size(); ++i) out << "d," << i << ",," << num(sol.d(i)) << '\n';
    for (gp::Index i = 0; i < sol.b.rows(); ++i) {
      for (gp::Index j = 0; j < sol.b.cols(); ++j) {
        out << "B," << i << ',' << j << ',' << num(sol.b(i, j)) << '\n';
      }
    }
  }
  for (const auto& w : sol.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
  sink.finish();
  return 0;
}

// ---- roundtrip

struct RoundtripArgs {
  Common common;
  int k = 2;
  int trials = 20;
  std::string precision = "quad";
  bool two_hop = false;
  double tolerance = 1e-6;
};

int run_roundtrip(const RoundtripArgs& a) {
  gp::PencilOptions options;
  options.two_hop = a.two_hop;
  std::vector<double> errors;
  for (int t = 0; t < a.trials; ++t) {
    const gp::SbmParams p =
        gp::random_degree_separated_sbm(a.k, gp::derive_seed(a.common.seed, {static_cast<std::uint64_t>(t)}));
    errors.push_back(a.precision == "quad" ? gp::roundtrip_error<gp::quad>(p, options)
                                           : gp::roundtrip_error<double>(p, options));
  }
  const double worst = *std::max_element(errors.begin(), errors.end());
  const bool pass = worst < a.tolerance;
  Sink sink(a.common.output);
  auto& out = sink.stream();
  if (a.common.format == "csv") {
    out << "trial,max_abs_error\n";
    for (std::size_t t = 0; t < errors.size(); ++t) out << t << ',' << num(errors[t]) << '\n';
  } else {
    out << nlohmann::json{{"k", a.k},
                          {"trials", a.trials},
                          {"precision", a.precision},
                          {"two_hop", a.two_hop},
                          {"max_abs_error", worst},
                          {"tolerance", a.tolerance},
                          {"pass", pass},
                          {"errors", errors}}
               .dump(2)
        << '\n';
  }
  sink.finish();
  std::cerr << "roundtrip K=" << a.k << ": max abs error " << worst << " over " << a.trials
            << " trials (" << (pass ? "below" : "ABOVE") << " " << a.tolerance << ")\n";
  return pass ? 0 : kExitNumerical;
}

// ---- experiment

struct ExperimentArgs {
  Common common;
  std::string spec;
  std::string params;
  std::vector<gp::Index> sizes;
  std::vector<int> replicates;
  std::vector<std::string> methods;
  bool sparse = false;
  gp::Index n_ref = 0;
  std::string raw;
  bool quiet = false;
};

int run_experiment_cmd(const ExperimentArgs& a, const CLI::App& sub) {
  gp::ExperimentSpec spec;
  if (!a.spec.empty()) {
    spec = gp::experiment_spec_from_json(gp::load_json(a.spec));
  } else if (!a.params.empty()) {
    spec.sbm = gp::load_params(a.params);
  } else {
    throw gp::ValidationError("experiment needs --spec or --params");
  }
  if (sub.count("--seed") || a.spec.empty()) spec.seed = a.common.seed;
  if (!a.sizes.empty()) spec.sizes = a.sizes;
  if (!a.replicates.empty()) {
    spec.replicates = a.replicates.size() == 1
                          ? std::vector<int>(spec.sizes.size(), a.replicates[0])
                          : a.replicates;
  }
  if (!a.methods.empty()) {
    spec.methods.clear();
    for (const auto& m : a.methods) spec.methods.push_back(gp::parse_method(m));
  }
  if (a.sparse) spec.sparse_mode = true;
  if (a.n_ref > 0) spec.n_ref = a.n_ref;
  gp::validate(spec);

  const gp::ExperimentResult result = gp::run_experiment(spec, [&](gp::Index n, int rep) {
    if (!a.quiet) std::cerr << "\rn=" << n << " replicate " << rep + 1 << "   " << std::flush;
  });
  if (!a.quiet) std::cerr << '\n';

  Sink sink(a.common.output);
  auto& out = sink.stream();
  if (a.common.format == "csv") {
    gp::write_summary_csv(out, result);
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : result.summaries) {
      rows.push_back({{"size", s.size},
                      {"method", gp::to_string(s.method)},
                      {"mean_sq_error", s.mean_sq_error},
                      {"stdev", s.stdev},
                      {"baseline", s.baseline},
                      {"failure_rate", s.failure_rate},
                      {"log_mean", s.log_mean},
                      {"log_band_low", s.log_band_low},
                      {"log_band_high", s.log_band_high}});
    }
    nlohmann::json slopes;
    for (auto m : spec.methods) slopes[gp::to_string(m)] = gp::log_log_slope(result, m);
    out << nlohmann::json{{"summary", rows}, {"log_log_slope", slopes}}.dump(2) << '\n';
  }
  sink.finish();
  if (!a.raw.empty()) {
    std::ofstream raw(a.raw);
    if (!raw) throw gp::IoError("cannot open '" + a.raw + "' for writing");
    gp::write_raw_csv(raw, result);
  }
  return 0;
}

// ---- variance-check

struct VarianceArgs {
  Common common;
  std::string params;
  gp::Index n = 512;
  int graphs = 200;
  std::vector<std::string> glyphs{"E", "L1 E"};
};

int run_variance(const VarianceArgs& a) {
  const gp::SbmParams p = gp::load_params(a.params);
  std::vector<gp::BistarGlyph> glyphs;
  for (const auto& t : a.glyphs) glyphs.push_back(gp::parse_glyph(t));
  const auto rows = gp::run_variance_check(p, a.n, a.graphs, glyphs, a.common.seed);
  Sink sink(a.common.output);
  auto& out = sink.stream();
  if (a.common.format == "csv") {
    gp::write_variance_csv(out, rows);
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"glyph", gp::format_glyph(r.glyph)},
                     {"mean_density", r.mean_density},
                     {"empirical_variance", r.empirical_variance},
                     {"median_jackknife", r.median_jackknife},
                     {"ratio", r.ratio}});
    }
    out << doc.dump(2) << '\n';
  }
  sink.finish();
  return 0;
}

void dump_error(const gp::Error& e) {
  std::cerr << "error (" << gp::to_string(e.kind()) << "): " << e.what() << '\n';
  if (const auto* c = dynamic_cast<const gp::ConditioningError*>(&e)) {
    std::cerr << "singular values:";
    for (double s : c->singular_values()) std::cerr << ' ' << s;
    std::cerr << '\n';
  }
}

int exit_code(gp::ErrorKind kind) {
  switch (kind) {
    case gp::ErrorKind::Io:
    case gp::ErrorKind::Parse: return kExitIo;
    case gp::ErrorKind::Validation:
    case gp::ErrorKind::Budget: return kExitUsage;
    default: return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic block model inference from subgraph densities"};
  app.require_subcommand(1);

  ForwardArgs fw;
  auto* forward = app.add_subcommand("forward", "exact glyph densities of an SBM");
  add_common(forward, fw.common, "csv");
  forward->add_option("--params", fw.params, "SBM parameter file (JSON)")->required();
  forward->add_option("--glyph", fw.glyphs, "glyph such as \"L1 E\" (repeatable)")->required();
  forward->add_option("--rooting", fw.rooting, "unrooted, left or birooted")
      ->check(CLI::IsMember({"unrooted", "left", "birooted"}))
      ->capture_default_str();

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample a graph from an SBM");
  add_common(sample, sa.common, "csv");
  sample->add_option("--params", sa.params, "SBM parameter file (JSON)")->required();
  sample->add_option("--n", sa.n, "node count")->required()->check(CLI::PositiveNumber);
  sample->add_option("--labels", sa.labels, "also write block labels here");

  CountArgs ca;
  auto* count = app.add_subcommand("count", "injective counts and densities of bistar glyphs");
  add_common(count, ca.common, "csv");
  count->add_option("--graph", ca.graph, "edge list")->required();
  count->add_option("--glyph", ca.glyphs, "glyph (repeatable)");
  count->add_option("--max-lcr", ca.max_lcr, "all glyphs with l + c + r <= this, with and without bridge");
  count->add_flag("!--no-jackknife", ca.jackknife, "skip the jackknife variance column");

  InferArgs ia;
  auto* infer = app.add_subcommand("infer", "infer (pi, d, B) from an observed graph");
  add_common(infer, ia.common, "structured");
  infer->add_option("--graph", ia.graph, "edge list")->required();
  infer->add_option("--k", ia.k, "block count")->required()->check(CLI::PositiveNumber);
  infer->add_flag("--two-hop", ia.two_hop, "add two-hop columns to the bistar pencil");
  infer->add_flag("--clamp", ia.clamp, "project pi to the simplex and clip B to [0, 1]");

  RoundtripArgs ra;
  auto* roundtrip = app.add_subcommand("roundtrip", "exact forward densities back through inference");
  add_common(roundtrip, ra.common, "structured");
  roundtrip->add_option("--k", ra.k, "block count")->check(CLI::Range(1, 6))->capture_default_str();
  roundtrip->add_option("--trials", ra.trials, "random SBMs")->check(CLI::PositiveNumber)->capture_default_str();
  roundtrip->add_option("--precision", ra.precision, "quad or double")
      ->check(CLI::IsMember({"quad", "double"}))
      ->capture_default_str();
  roundtrip->add_flag("--two-hop", ra.two_hop, "use the two-hop columns");
  roundtrip->add_option("--tolerance", ra.tolerance, "pass threshold")->capture_default_str();

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "convergence experiment on sampled graphs");
  add_common(experiment, ea.common, "csv");
  experiment->add_option("--spec", ea.spec, "experiment spec (JSON)");
  experiment->add_option("--params", ea.params, "SBM parameter file, with default schedule");
  experiment->add_option("--sizes", ea.sizes, "node counts");
  experiment->add_option("--replicates", ea.replicates, "replicates per size (one value or one per size)");
  experiment->add_option("--methods", ea.methods, "bistar and/or two_hop");
  experiment->add_flag("--sparse", ea.sparse, "scale B by n_ref / n");
  experiment->add_option("--n-ref", ea.n_ref, "reference size for --sparse");
  experiment->add_option("--raw", ea.raw, "per-replicate CSV");
  experiment->add_flag("--quiet", ea.quiet, "no progress on stderr");

  VarianceArgs va;
  auto* variance = app.add_subcommand("variance-check", "jackknife variance against sampled spread");
  add_common(variance, va.common, "csv");
  variance->add_option("--params", va.params, "SBM parameter file (JSON)")->required();
  variance->add_option("--n", va.n, "node count")->capture_default_str();
  variance->add_option("--graphs", va.graphs, "sampled graphs")->capture_default_str();
  variance->add_option("--glyph", va.glyphs, "glyph (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*forward) return run_forward(fw);
    if (*sample) return run_sample(sa);
    if (*count) return run_count(ca);
    if (*infer) return run_infer(ia);
    if (*roundtrip) return run_roundtrip(ra);
    if (*experiment) return run_experiment_cmd(ea, *experiment);
    if (*variance) return run_variance(va);
  } catch (const gp::Error& e) {
    dump_error(e);
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
