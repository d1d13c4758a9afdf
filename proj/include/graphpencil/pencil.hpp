#pragma once

#include "graphpencil/error.hpp"
#include "graphpencil/forward.hpp"
#include "graphpencil/glyph.hpp"
#include "graphpencil/linalg.hpp"
#include "graphpencil/sbm.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace graphpencil {

enum class MomentSource { Exact, Estimated };

/// Moments <x^0> .. <x^{2K-1}> of a latent K-point mixture.
template <typename Scalar>
struct MomentSequence {
  Vector<Scalar> values;
  MomentSource source = MomentSource::Exact;
};

struct PencilOptions {
  /// Relative imaginary part |Im|/|Re| of a pencil eigenvalue above which a
  /// warning is recorded, and above which solving fails.
  double imag_warn = 1e-6;
  double imag_fail = 0.5;
  /// Latent values closer than separation * max|value| are degenerate.
  double separation = 1e-6;
  /// Reciprocal condition number below which the moment Hankel matrix is
  /// treated as singular.
  double hankel_rcond_floor = 1e-12;
  /// Relative pseudoinverse cutoff; unset means default_pinv_cutoff<Scalar>().
  std::optional<double> pinv_cutoff;
  /// Relative Rayleigh residual ||Mv - bv|| / ||v|| above which a warning is recorded.
  double rayleigh_warn = 0.05;
  bool two_hop = false;
  bool clamp = false;
  /// Use the pseudoinverse even when the bistar matrices are square.
  bool force_pseudoinverse = false;
};

struct PencilDiagnostics {
  std::vector<double> degree_eigen_imag;
  double hankel_condition = 0.0;
  double vandermonde_condition = 0.0;
  std::vector<double> c_plain_singular_values;
  double c_plain_condition = 0.0;
  double pinv_cutoff = 0.0;
  Index pinv_rank = 0;
  bool used_pseudoinverse = false;
  std::vector<double> b_eigenvalues;
  std::vector<double> b_eigen_imag;
  std::vector<double> rayleigh_residuals;
  bool pi_clamped = false;
  bool b_clamped = false;
  std::vector<std::string> warnings;
};

template <typename Scalar>
struct MomentPencilResult {
  Vector<Scalar> weights;
  /// Latent values (coin biases or block degrees), strictly decreasing.
  Vector<Scalar> nodes;
  std::vector<double> eigen_imag;
  double hankel_condition = 0.0;
  double vandermonde_condition = 0.0;
  std::vector<std::string> warnings;
};

template <typename Scalar>
struct PencilSolution {
  Vector<Scalar> pi;
  Vector<Scalar> d;
  Matrix<Scalar> b;
  PencilDiagnostics diagnostics;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Real parts of the eigenvalues sorted descending, with the relative
/// imaginary residue of each.
template <typename Scalar>
std::pair<Vector<Scalar>, std::vector<double>> real_spectrum(const Matrix<Scalar>& m) {
  using std::abs;
  Eigen::EigenSolver<Matrix<Scalar>> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  const auto& ev = es.eigenvalues();
  std::vector<std::pair<Scalar, double>> items;
  for (Index i = 0; i < ev.size(); ++i) {
    const Scalar re = ev(i).real();
    const Scalar im = ev(i).imag();
    const double scale = std::max(static_cast<double>(abs(re)), 1e-300);
    items.emplace_back(re, static_cast<double>(abs(im)) / scale);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Vector<Scalar> values(static_cast<Index>(items.size()));
  std::vector<double> imag(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    values(static_cast<Index>(i)) = items[i].first;
    imag[i] = items[i].second;
  }
  return {values, imag};
}

}  // namespace detail

/// Matrix pencil for a K-point mixture: the eigenvalues of C' C^{-1}, with
/// C_ij = <x^{i+j}> and C'_ij = <x^{i+j+1}>, are the latent values; the
/// weights then solve the Vandermonde system sum_k x_k^j w_k = <x^j>.
template <typename Scalar>
MomentPencilResult<Scalar> solve_moment_pencil(const MomentSequence<Scalar>& moments, Index k,
                                               const PencilOptions& options = {}) {
  using std::abs;
  if (k < 1) throw ValidationError("block count K must be at least 1");
  if (moments.values.size() < 2 * k) {
    throw ValidationError("pencil with K = " + std::to_string(k) + " needs " +
                          std::to_string(2 * k) + " moments, got " +
                          std::to_string(moments.values.size()));
  }
  const auto& m = moments.values;
  Matrix<Scalar> hankel(k, k), shifted(k, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < k; ++i) {
      hankel(i, j) = m(i + j);
      shifted(i, j) = m(i + j + 1);
    }
  }

  MomentPencilResult<Scalar> out;
  const Vector<Scalar> sv = singular_values(hankel);
  const double smax = static_cast<double>(sv(0));
  const double smin = static_cast<double>(sv(k - 1));
  const double rcond = smax > 0.0 ? smin / smax : 0.0;
  out.hankel_condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond >= options.hankel_rcond_floor)) {
    throw DegeneracyError(
        "moment Hankel matrix is singular (reciprocal condition " + detail::format_double(rcond) +
        "): the K = " + std::to_string(k) +
        " latent values are not separated, so the Vandermonde matrix is not invertible");
  }

  // C' C^{-1} = (C^{-T} C'^T)^T
  const Matrix<Scalar> pencil =
      hankel.transpose().fullPivLu().solve(shifted.transpose()).transpose();
  auto [nodes, imag] = detail::real_spectrum(pencil);
  out.eigen_imag = imag;
  const double worst = *std::max_element(imag.begin(), imag.end());
  if (worst > options.imag_fail) {
    throw NumericalError("pencil eigenvalue has relative imaginary part " +
                         detail::format_double(worst) + " (limit " +
                         detail::format_double(options.imag_fail) + "); input moments too noisy");
  }
  if (worst > options.imag_warn) {
    out.warnings.push_back("pencil eigenvalues have relative imaginary part up to " +
                           detail::format_double(worst) + "; noisy input");
  }

  Scalar max_abs(0);
  for (Index i = 0; i < k; ++i) max_abs = std::max<Scalar>(max_abs, abs(nodes(i)));
  for (Index i = 0; i + 1 < k; ++i) {
    const Scalar gap = nodes(i) - nodes(i + 1);
    if (gap < Scalar(options.separation) * max_abs) {
      throw DegeneracyError("latent values " + detail::format_double(static_cast<double>(nodes(i))) +
                            " and " + detail::format_double(static_cast<double>(nodes(i + 1))) +
                            " are not separated (gap " +
                            detail::format_double(static_cast<double>(gap)) +
                            "); the Vandermonde matrix is not invertible");
    }
  }

  Matrix<Scalar> vandermonde(k, k);
  for (Index j = 0; j < k; ++j) {
    for (Index r = 0; r < k; ++r) vandermonde(r, j) = ipow(nodes(j), static_cast<int>(r));
  }
  out.vandermonde_condition = condition_number(vandermonde);
  out.weights = vandermonde.fullPivLu().solve(m.head(k));
  out.nodes = nodes;
  return out;
}

/// Bernoulli mixture: moments <b^r> of the coin biases give (pi, b).
template <typename Scalar>
MomentPencilResult<Scalar> solve_coin_pencil(const MomentSequence<Scalar>& moments, Index k,
                                             const PencilOptions& options = {}) {
  return solve_moment_pencil(moments, k, options);
}

/// Star densities <d^j> give block proportions and normalized degrees.
template <typename Scalar>
MomentPencilResult<Scalar> solve_degree_pencil(const MomentSequence<Scalar>& moments, Index k,
                                               const PencilOptions& options = {}) {
  return solve_moment_pencil(moments, k, options);
}

/// Monomial symmetric polynomials m_(a,b)(L, R) = L^a R^b + L^b R^a
/// (L^a R^a when a == b) for 0 <= a <= b <= K-1, ordered by b then a.
/// As birooted glyph combinations L^a R^b is the glyph (a, 0, b, no bridge).
struct SymmetricBasis {
  int k = 0;
  std::vector<std::pair<int, int>> exponents;
  std::vector<GlyphCombination> entries;

  std::size_t size() const { return entries.size(); }

  /// Basis polynomials evaluated at (x, y).
  template <typename Scalar>
  Vector<Scalar> evaluate(const Scalar& x, const Scalar& y) const {
    Vector<Scalar> v(static_cast<Index>(exponents.size()));
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      const auto [a, b] = exponents[i];
      Scalar value = ipow(x, a) * ipow(y, b);
      if (a != b) value += ipow(x, b) * ipow(y, a);
      v(static_cast<Index>(i)) = value;
    }
    return v;
  }

  /// Readable form such as "1", "L+R", "L2R+LR2".
  std::string label(std::size_t i) const;
};

SymmetricBasis build_symmetric_basis(int k);

/// Maps glyphs (and formal combinations) to unrooted densities. Backed by
/// the closed-form forward evaluator or by counts on an observed graph.
template <typename Scalar>
class BistarDensitySource {
 public:
  virtual ~BistarDensitySource() = default;

  /// Density of an unrooted, canonical glyph.
  virtual Scalar density(const BistarGlyph& glyph) const = 0;

  Scalar density(const GlyphCombination& combination) const {
    Scalar total(0);
    const GlyphCombination unrooted = combination.with_rooting(Rooting::Unrooted);
    for (const auto& t : unrooted.terms()) {
      total += Scalar(t.coefficient) * density(t.glyph);
    }
    return total;
  }
};

template <typename Scalar>
class ExactDensitySource final : public BistarDensitySource<Scalar> {
 public:
  explicit ExactDensitySource(BasicSbmParams<Scalar> params) : params_(std::move(params)) {
    validate(params_);
  }
  using BistarDensitySource<Scalar>::density;
  Scalar density(const BistarGlyph& glyph) const override {
    return unrooted_density(params_, glyph.with_rooting(Rooting::Unrooted));
  }
  const BasicSbmParams<Scalar>& params() const { return params_; }

 private:
  BasicSbmParams<Scalar> params_;
};

/// Every unrooted canonical glyph that infer_sbm reads for a given K:
/// stars up to 2K-1 edges and all bistar products of the basis.
std::vector<BistarGlyph> required_glyphs(int k, bool two_hop);

template <typename Scalar>
struct BistarMatrices {
  Matrix<Scalar> plain;
  Matrix<Scalar> bridged;
};

/// Entry (i, j) of `plain` is the unrooted density of basis[i] glued with
/// column glyph j; `bridged` additionally glues the bridge edge. Columns are
/// the basis, followed (two_hop) by the basis glued with a two-hop path.
template <typename Scalar>
BistarMatrices<Scalar> build_bistar_matrices(const BistarDensitySource<Scalar>& source,
                                             const SymmetricBasis& basis, bool two_hop) {
  const auto m = static_cast<Index>(basis.size());
  std::vector<GlyphCombination> columns(basis.entries.begin(), basis.entries.end());
  if (two_hop) {
    for (const auto& e : basis.entries) columns.push_back(glue(e, GlyphCombination(two_hop_glyph())));
  }
  const auto cols = static_cast<Index>(columns.size());
  BistarMatrices<Scalar> out{Matrix<Scalar>(m, cols), Matrix<Scalar>(m, cols)};
  const GlyphCombination bridge(bridge_glyph());
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < m; ++i) {
      const GlyphCombination product = glue(basis.entries[static_cast<std::size_t>(i)],
                                            columns[static_cast<std::size_t>(j)]);
      out.plain(i, j) = source.density(product);
      out.bridged(i, j) = source.density(glue(product, bridge));
    }
  }
  return out;
}

template <typename Scalar>
struct ConnectivityResult {
  Matrix<Scalar> b;
  /// C_B C_plain^+ (or C_B C_plain^{-1} when square).
  Matrix<Scalar> pencil;
  PencilDiagnostics diagnostics;
};

/// Recovers B from the bistar pencil. With M = C_B pinv(C_plain), the
/// vector v of basis polynomials evaluated at (d_k, d_k') is an
/// eigenvector of M with eigenvalue B_kk', read off as v^T M v / v^T v.
template <typename Scalar>
ConnectivityResult<Scalar> recover_B(const Matrix<Scalar>& c_plain, const Matrix<Scalar>& c_bridged,
                                     const Vector<Scalar>& d, const SymmetricBasis& basis,
                                     const PencilOptions& options = {}) {
  using std::abs;
  using std::sqrt;
  const auto m = static_cast<Index>(basis.size());
  const Index k = d.size();
  if (k != basis.k) throw ValidationError("degree vector length does not match basis K");
  if (c_plain.rows() != m || c_bridged.rows() != m || c_plain.cols() != c_bridged.cols() ||
      c_plain.cols() < m) {
    throw ValidationError("bistar matrices have inconsistent shapes");
  }
  for (Index i = 0; i + 1 < k; ++i) {
    if (!(d(i) > d(i + 1))) throw DegeneracyError("block degrees must be strictly decreasing");
  }

  ConnectivityResult<Scalar> out;
  auto& diag = out.diagnostics;
  const Scalar cutoff =
      options.pinv_cutoff ? Scalar(*options.pinv_cutoff) : default_pinv_cutoff<Scalar>();
  const Pseudoinverse<Scalar> pinv = pseudoinverse(c_plain, cutoff);
  diag.c_plain_singular_values = to_double_vector(pinv.singular_values);
  diag.pinv_cutoff = static_cast<double>(cutoff);
  diag.pinv_rank = pinv.rank;
  {
    const double lo = diag.c_plain_singular_values.back();
    diag.c_plain_condition = lo > 0.0 ? diag.c_plain_singular_values.front() / lo
                                      : std::numeric_limits<double>::infinity();
  }
  if (pinv.rank < m) {
    std::ostringstream os;
    os << "bistar matrix C has numerical rank " << pinv.rank << " < " << m
       << " (relative cutoff " << static_cast<double>(cutoff) << "); singular values:";
    for (double s : diag.c_plain_singular_values) os << ' ' << s;
    throw ConditioningError(os.str(), diag.c_plain_singular_values);
  }

  const bool square = c_plain.cols() == m;
  diag.used_pseudoinverse = !square || options.force_pseudoinverse;
  const Matrix<Scalar> inverse =
      diag.used_pseudoinverse ? pinv.matrix : Matrix<Scalar>(c_plain.fullPivLu().inverse());
  out.pencil = c_bridged * inverse;

  auto [eigenvalues, eigen_imag] = detail::real_spectrum(out.pencil);
  diag.b_eigenvalues = to_double_vector(eigenvalues);
  diag.b_eigen_imag = eigen_imag;

  out.b = Matrix<Scalar>::Zero(k, k);
  for (Index kk = 0; kk < k; ++kk) {
    for (Index k0 = 0; k0 <= kk; ++k0) {
      const Vector<Scalar> v = basis.evaluate(d(k0), d(kk));
      const Vector<Scalar> mv = out.pencil * v;
      const Scalar vv = v.squaredNorm();
      const Scalar value = v.dot(mv) / vv;
      out.b(k0, kk) = value;
      out.b(kk, k0) = value;
      const double residual = static_cast<double>(sqrt((mv - value * v).squaredNorm() / vv));
      diag.rayleigh_residuals.push_back(residual);
      const double scale = std::max(static_cast<double>(abs(value)), 1e-12);
      if (residual > options.rayleigh_warn * scale) {
        diag.warnings.push_back("Rayleigh vector for blocks (" + std::to_string(k0) + ", " +
                                std::to_string(kk) + ") is far from an eigenvector (residual " +
                                detail::format_double(residual) + ")");
      }
    }
  }
  return out;
}

/// Euclidean projection onto the probability simplex.
template <typename Scalar>
Vector<Scalar> project_to_simplex(const Vector<Scalar>& v) {
  std::vector<Scalar> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), [](const Scalar& a, const Scalar& b) { return a > b; });
  Scalar cumulative(0);
  Scalar theta(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const Scalar t = (cumulative - Scalar(1)) / Scalar(static_cast<double>(i + 1));
    if (u[i] - t > Scalar(0)) theta = t;
  }
  Vector<Scalar> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = std::max<Scalar>(v(i) - theta, Scalar(0));
  return out;
}

/// Full pipeline: star densities -> (pi, d) by the degree pencil, then
/// bistar densities -> B by the Rayleigh quotients. Errors carry the stage
/// ("degree", "bistar-matrices" or "connectivity") in which they occurred.
template <typename Scalar>
PencilSolution<Scalar> infer_sbm(const BistarDensitySource<Scalar>& source, int k,
                                 const PencilOptions& options = {}) {
  if (k < 1) throw ValidationError("block count K must be at least 1");
  PencilSolution<Scalar> out;

  MomentPencilResult<Scalar> degrees;
  try {
    MomentSequence<Scalar> moments;
    moments.values.resize(2 * k);
    moments.values(0) = Scalar(1);
    for (int j = 1; j < 2 * k; ++j) moments.values(j) = source.density(star(j));
    degrees = solve_degree_pencil(moments, k, options);
  } catch (Error& e) {
    e.set_stage("degree");
    throw;
  }
  out.pi = degrees.weights;
  out.d = degrees.nodes;

  const SymmetricBasis basis = build_symmetric_basis(k);
  BistarMatrices<Scalar> matrices;
  try {
    matrices = build_bistar_matrices(source, basis, options.two_hop);
  } catch (Error& e) {
    e.set_stage("bistar-matrices");
    throw;
  }

  ConnectivityResult<Scalar> connectivity;
  try {
    connectivity = recover_B(matrices.plain, matrices.bridged, out.d, basis, options);
  } catch (Error& e) {
    e.set_stage("connectivity");
    throw;
  }
  out.b = connectivity.b;
  out.diagnostics = std::move(connectivity.diagnostics);
  auto& diag = out.diagnostics;
  diag.degree_eigen_imag = degrees.eigen_imag;
  diag.hankel_condition = degrees.hankel_condition;
  diag.vandermonde_condition = degrees.vandermonde_condition;
  diag.warnings.insert(diag.warnings.begin(), degrees.warnings.begin(), degrees.warnings.end());

  if (options.clamp) {
    const Vector<Scalar> projected = project_to_simplex(out.pi);
    diag.pi_clamped = projected != out.pi;
    out.pi = projected;
    const Matrix<Scalar> clipped = out.b.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
    diag.b_clamped = clipped != out.b;
    out.b = clipped;
  }
  return out;
}

}  // namespace graphpencil
