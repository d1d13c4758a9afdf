#include "graphpencil/counting.hpp"

#include "graphpencil/brute_force.hpp"
#include "graphpencil/error.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <type_traits>

namespace graphpencil {

std::string to_string(BigCount value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                 : static_cast<unsigned __int128>(value);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

TwoHopDecomposition two_hop_decompose(const UndirectedGraph& graph) {
  const Index n = graph.n();
  TwoHopDecomposition out;
  // Single precision represents every entry of A^2 (at most n) exactly.
  const Eigen::MatrixXf a = graph.adjacency_as<float>();
  Eigen::MatrixXf squared(n, n);
  squared.noalias() = a * a;
  out.lambda = (squared.array() + 0.5f).floor().cast<std::int64_t>().matrix();
  out.degrees = out.lambda.diagonal();
  out.lambda.diagonal().setZero();
  return out;
}

long double falling_factorial(Index n, int v) {
  long double out = 1.0L;
  for (int i = 0; i < v; ++i) out *= static_cast<long double>(n - i);
  return out;
}

namespace {

struct CountOverflow {};

/// Graph-side inputs of the recursion. The shifts are subtracted from L, R
/// and Lambda before the recursion runs; they evaluate the count polynomial
/// at downdated arguments for the leave-one-out sweep.
struct CountSource {
  const CountMatrix* adjacency = nullptr;
  const CountVector* degrees = nullptr;
  const CountMatrix* lambda = nullptr;
  int shift_left = 0;
  int shift_right = 0;
  int shift_lambda = 0;
};

/// Entrywise recursion over a block of rows [row0, row0 + rows):
///   M(0,0,0)   = 1 - I
///   M(0,c+1,0) = M(0,c,0) o (Lambda - c)
///   M(l+1,c,0) = M(l,c,0) o (L - (l + c))
///   M(l,c,r+1) = M(l,c,r) o (R - (r + c)) - l M(l-1,c+1,r)
/// where L(i,j) is the degree of i with j deleted and R = L^T. The last
/// term removes placements where a new right pendant coincides with a left
/// pendant that is also adjacent to the right centre.
template <typename T>
class BlockRecursion {
 public:
  using Array = Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic>;

  BlockRecursion(const CountSource& src, Index row0, Index rows)
      : src_(src), row0_(row0), rows_(rows), n_(src.adjacency->cols()) {}

  const Array& unmarked(int l, int c, int r) {
    const auto key = std::make_tuple(l, c, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Array out;
    if (r > 0) {
      out = product(unmarked(l, c, r - 1), right() - T(r - 1 + c));
      if (l > 0) out = difference(out, T(l), unmarked(l - 1, c + 1, r - 1));
    } else if (l > 0) {
      out = product(unmarked(l - 1, c, 0), left() - T(l - 1 + c));
    } else if (c > 0) {
      out = product(unmarked(0, c - 1, 0), lambda() - T(c - 1));
    } else {
      out = base();
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  Array marked(int l, int c, int r) { return unmarked(l, c, r) * adjacency(); }

  Array get(const BistarGlyph& g) {
    return g.bridge ? marked(g.left, g.mid, g.right) : Array(unmarked(g.left, g.mid, g.right));
  }

 private:
  static Array product(const Array& m, const Array& f) {
    if constexpr (std::is_integral_v<T>) {
      if (m.size() > 0) {
        const long double bound = static_cast<long double>(m.abs().maxCoeff()) *
                                  static_cast<long double>(f.abs().maxCoeff());
        if (bound > 9.0e18L) throw CountOverflow{};
      }
    }
    return m * f;
  }

  static Array difference(const Array& a, T scale, const Array& b) {
    if constexpr (std::is_integral_v<T>) {
      if (b.size() > 0 &&
          static_cast<long double>(scale) * static_cast<long double>(b.abs().maxCoeff()) > 9.0e18L) {
        throw CountOverflow{};
      }
    }
    return a - scale * b;
  }

  const Array& base() {
    if (!base_) {
      Array b = Array::Ones(rows_, n_);
      for (Index i = 0; i < rows_; ++i) b(i, row0_ + i) = T(0);
      base_ = std::move(b);
    }
    return *base_;
  }

  const Array& adjacency() {
    if (!adjacency_) adjacency_ = src_.adjacency->middleRows(row0_, rows_).template cast<T>().array();
    return *adjacency_;
  }

  const Array& left() {
    if (!left_) {
      Array l = (-adjacency()).colwise() +
                src_.degrees->segment(row0_, rows_).template cast<T>().array();
      left_ = (l - T(src_.shift_left)) * base();
    }
    return *left_;
  }

  const Array& right() {
    if (!right_) {
      Array r = (-adjacency()).rowwise() + src_.degrees->transpose().template cast<T>().array();
      right_ = (r - T(src_.shift_right)) * base();
    }
    return *right_;
  }

  const Array& lambda() {
    if (!lambda_) {
      const Array lam = src_.lambda->middleRows(row0_, rows_).template cast<T>().array();
      lambda_ = (lam - T(src_.shift_lambda)) * base();
    }
    return *lambda_;
  }

  CountSource src_;
  Index row0_;
  Index rows_;
  Index n_;
  std::optional<Array> base_, adjacency_, left_, right_, lambda_;
  std::map<std::tuple<int, int, int>, Array> memo_;
};

void warn_overflow(const BistarGlyph& g) {
  std::clog << "graphpencil: warning: 64-bit counts overflowed for glyph '" << format_glyph(g)
            << "'; falling back to floating-point accumulation\n";
}

template <typename T>
void accumulate(const Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic>& m, CountTotal& total) {
  if constexpr (std::is_integral_v<T>) {
    BigCount sum = 0;
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) sum += m(i, j);
    }
    total.exact += sum;
  } else {
    long double sum = 0;
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) sum += static_cast<long double>(m(i, j));
    }
    total.value += sum;
    total.is_exact = false;
  }
}

/// Totals for every glyph against one source, block by block.
std::vector<CountTotal> totals_for_source(const CountSource& src, Index n,
                                          const std::vector<BistarGlyph>& glyphs,
                                          Index block_rows, bool warn) {
  std::vector<CountTotal> totals(glyphs.size());
  std::vector<bool> warned(glyphs.size(), false);
  block_rows = std::max<Index>(1, block_rows);
  for (Index row0 = 0; row0 < n; row0 += block_rows) {
    const Index rows = std::min(block_rows, n - row0);
    BlockRecursion<std::int64_t> exact(src, row0, rows);
    std::optional<BlockRecursion<double>> approx;
    for (std::size_t g = 0; g < glyphs.size(); ++g) {
      try {
        accumulate(exact.get(glyphs[g]), totals[g]);
      } catch (const CountOverflow&) {
        if (!approx) approx.emplace(src, row0, rows);
        accumulate(approx->get(glyphs[g]), totals[g]);
        if (warn && !warned[g]) {
          warn_overflow(glyphs[g]);
          warned[g] = true;
        }
      }
    }
  }
  for (auto& t : totals) t.value += static_cast<long double>(t.exact);
  return totals;
}

void check_glyph(const BistarGlyph& g) {
  if (g.left < 0 || g.mid < 0 || g.right < 0) {
    throw ValidationError("glyph exponents must be non-negative");
  }
}

}  // namespace

CountTable::CountTable(const UndirectedGraph& graph, int max_l, int max_c, int max_r)
    : n_(graph.n()), max_l_(max_l), max_c_(max_c), max_r_(max_r) {
  if (max_l < 0 || max_c < 0 || max_r < 0) {
    throw ValidationError("count table bounds must be non-negative");
  }
  const Index required = 2 + max_l + max_c + max_r;
  if (required > n_) {
    throw BudgetError("count table with max (l, c, r) = (" + std::to_string(max_l) + ", " +
                      std::to_string(max_c) + ", " + std::to_string(max_r) + ") needs " +
                      std::to_string(required) + " nodes but the graph has " +
                      std::to_string(n_));
  }
  adjacency_ = graph.adjacency_as<std::int64_t>();
  two_hop_ = two_hop_decompose(graph);

  const CountSource src{&adjacency_, &two_hop_.degrees, &two_hop_.lambda};
  BlockRecursion<std::int64_t> exact(src, 0, n_);
  std::optional<BlockRecursion<double>> approx;
  for (int l = 0; l <= max_l; ++l) {
    for (int c = 0; c <= max_c; ++c) {
      for (int r = 0; r <= max_r; ++r) {
        const Key key{l, c, r, false};
        try {
          unmarked_.emplace(key, CountMatrix(exact.unmarked(l, c, r).matrix()));
        } catch (const CountOverflow&) {
          if (!approx) approx.emplace(src, 0, n_);
          unmarked_.emplace(key, Eigen::MatrixXd(approx->unmarked(l, c, r).matrix()));
          warn_overflow({l, c, r, false});
        }
      }
    }
  }
}

bool CountTable::contains(const BistarGlyph& g) const {
  return g.left >= 0 && g.mid >= 0 && g.right >= 0 && g.left <= max_l_ && g.mid <= max_c_ &&
         g.right <= max_r_;
}

BistarGlyph CountTable::resolve(const BistarGlyph& g) const {
  check_glyph(g);
  if (contains(g)) return g;
  if (g.rooting == Rooting::Unrooted && contains(g.mirrored())) return g.mirrored();
  throw MissingGlyphError("count table has no entry for (l, c, r, e) = (" +
                          std::to_string(g.left) + ", " + std::to_string(g.mid) + ", " +
                          std::to_string(g.right) + ", " + (g.bridge ? "1" : "0") +
                          "); table bounds are (" + std::to_string(max_l_) + ", " +
                          std::to_string(max_c_) + ", " + std::to_string(max_r_) + ")");
}

const CountTable::Entry& CountTable::entry(const BistarGlyph& g) const {
  const BistarGlyph key_glyph = resolve(g);
  const Key base_key{key_glyph.left, key_glyph.mid, key_glyph.right, false};
  const Entry& base = unmarked_.at(base_key);
  if (!key_glyph.bridge) return base;

  const Key key{key_glyph.left, key_glyph.mid, key_glyph.right, true};
  std::lock_guard<std::mutex> lock(*mutex_);
  if (auto it = marked_.find(key); it != marked_.end()) return it->second;
  Entry marked = std::visit(
      [&](const auto& m) -> Entry {
        using M = std::decay_t<decltype(m)>;
        return M(m.cwiseProduct(adjacency_.cast<typename M::Scalar>()));
      },
      base);
  return marked_.emplace(key, std::move(marked)).first->second;
}

const CountMatrix& CountTable::matrix(const BistarGlyph& g) const {
  const Entry& e = entry(g);
  if (const auto* m = std::get_if<CountMatrix>(&e)) return *m;
  throw NumericalError("counts for glyph '" + format_glyph(g) +
                       "' overflowed 64-bit integers; only floating-point values are available");
}

Eigen::MatrixXd CountTable::matrix_as_double(const BistarGlyph& g) const {
  return std::visit([](const auto& m) -> Eigen::MatrixXd { return m.template cast<double>(); },
                    entry(g));
}

CountTotal CountTable::total(const BistarGlyph& g) const {
  CountTotal out;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        accumulate<typename M::Scalar>(m.array(), out);
      },
      entry(g));
  out.value += static_cast<long double>(out.exact);
  return out;
}

std::vector<BistarGlyph> CountTable::inexact_glyphs() const {
  std::vector<BistarGlyph> out;
  for (const auto& [key, e] : unmarked_) {
    if (std::holds_alternative<Eigen::MatrixXd>(e)) {
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), false});
    }
  }
  return out;
}

CountTable build_count_table(const UndirectedGraph& graph, int max_l, int max_c, int max_r) {
  return CountTable(graph, max_l, max_c, max_r);
}

BigCount inj_hom_count(const CountTable& table, const BistarGlyph& glyph) {
  const CountTotal t = table.total(glyph);
  if (!t.is_exact) {
    throw NumericalError("count for glyph '" + format_glyph(glyph) +
                         "' is only available in floating point");
  }
  return t.exact;
}

double inj_hom_density(const CountTable& table, const BistarGlyph& glyph) {
  const int v = glyph.vertex_count();
  if (table.graph_n() < v) {
    throw ValidationError("graph has " + std::to_string(table.graph_n()) +
                          " nodes, fewer than the glyph's " + std::to_string(v) + " vertices");
  }
  return static_cast<double>(table.total(glyph).value / falling_factorial(table.graph_n(), v));
}

std::vector<CountTotal> count_totals(const UndirectedGraph& graph,
                                     const std::vector<BistarGlyph>& glyphs, Index block_rows) {
  for (const auto& g : glyphs) {
    check_glyph(g);
    if (g.vertex_count() > graph.n()) {
      throw BudgetError("glyph '" + format_glyph(g) + "' needs " +
                        std::to_string(g.vertex_count()) + " nodes but the graph has " +
                        std::to_string(graph.n()));
    }
  }
  const CountMatrix adjacency = graph.adjacency_as<std::int64_t>();
  const TwoHopDecomposition two_hop = two_hop_decompose(graph);
  const CountSource src{&adjacency, &two_hop.degrees, &two_hop.lambda};
  return totals_for_source(src, graph.n(), glyphs, block_rows, true);
}

std::int64_t brute_force_inj_count(const UndirectedGraph& graph, const BistarGlyph& glyph) {
  check_glyph(glyph);
  const int v = glyph.vertex_count();
  const Index n = graph.n();
  if (v > kBruteForceMaxPatternVertices || n > kBruteForceMaxGraphNodes) {
    throw BudgetError("brute-force injective count needs |V(g)| <= " +
                      std::to_string(kBruteForceMaxPatternVertices) + " and N <= " +
                      std::to_string(kBruteForceMaxGraphNodes) + " (got |V(g)| = " +
                      std::to_string(v) + ", N = " + std::to_string(n) + ")");
  }
  const SmallGraph pattern = to_small_graph(glyph);
  // Edges to earlier-assigned vertices, checked as soon as a vertex is placed.
  std::vector<std::vector<int>> back_edges(static_cast<std::size_t>(v));
  for (const auto& [a, b] : pattern.edges) {
    back_edges[static_cast<std::size_t>(std::max(a, b))].push_back(std::min(a, b));
  }
  std::vector<Index> image(static_cast<std::size_t>(v), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::int64_t count = 0;

  auto place = [&](auto&& self, int vertex) -> void {
    if (vertex == v) {
      ++count;
      return;
    }
    for (Index node = 0; node < n; ++node) {
      if (used[static_cast<std::size_t>(node)]) continue;
      bool ok = true;
      for (int earlier : back_edges[static_cast<std::size_t>(vertex)]) {
        if (!graph.has_edge(node, image[static_cast<std::size_t>(earlier)])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[static_cast<std::size_t>(node)] = true;
      image[static_cast<std::size_t>(vertex)] = node;
      self(self, vertex + 1);
      used[static_cast<std::size_t>(node)] = false;
    }
  };
  place(place, 0);
  return count;
}

// Every entry of a count matrix is a polynomial P(L_ij, R_ij, Lambda_ij),
// times A_ij when bridged. Deleting node v turns L_ij into L_ij - a_i,
// R_ij into R_ij - a_j and Lambda_ij into Lambda_ij - a_i a_j, with a the
// column of v. Since a is 0/1, the downdated total splits over the four
// patterns of (a_i, a_j):
//   T(G \ v) = sum_ij x_i y_j F_xy(i, j)  minus the row and column of v,
// with F_xy the count matrix evaluated at shifts (x, y, xy). All N
// deletions then cost four matrix products per glyph.
std::vector<double> jackknife_variances(const UndirectedGraph& graph,
                                        const std::vector<BistarGlyph>& glyphs) {
  const Index n = graph.n();
  for (const auto& g : glyphs) {
    check_glyph(g);
    if (n < g.vertex_count() + 1) {
      throw ValidationError("jackknife for glyph '" + format_glyph(g) + "' needs at least " +
                            std::to_string(g.vertex_count() + 1) + " nodes, graph has " +
                            std::to_string(n));
    }
  }
  const CountMatrix adjacency = graph.adjacency_as<std::int64_t>();
  const TwoHopDecomposition two_hop = two_hop_decompose(graph);
  const Eigen::MatrixXd a = graph.adjacency_as<double>();
  const Eigen::MatrixXd abar = Eigen::MatrixXd::Ones(n, n) - a;

  auto evaluate = [&](int x, int y) {
    const CountSource src{&adjacency, &two_hop.degrees, &two_hop.lambda, x, y, x * y};
    BlockRecursion<double> rec(src, 0, n);
    std::vector<Eigen::MatrixXd> out;
    for (const auto& g : glyphs) out.push_back(rec.get(g).matrix());
    return out;
  };
  const auto f00 = evaluate(0, 0);
  const auto f10 = evaluate(1, 0);
  const auto f01 = evaluate(0, 1);
  const auto f11 = evaluate(1, 1);

  std::vector<double> out(glyphs.size());
  for (std::size_t g = 0; g < glyphs.size(); ++g) {
    const Eigen::MatrixXd f00_abar = f00[g] * abar;
    const Eigen::MatrixXd f01_a = f01[g] * a;
    Eigen::VectorXd loo = abar.cwiseProduct(f00_abar).colwise().sum().transpose();
    loo += a.cwiseProduct(f10[g] * abar).colwise().sum().transpose();
    loo += abar.cwiseProduct(f01_a).colwise().sum().transpose();
    loo += a.cwiseProduct(f11[g] * a).colwise().sum().transpose();
    loo -= f00_abar.diagonal() + f01_a.diagonal();
    loo -= abar.cwiseProduct(f00[g]).colwise().sum().transpose() +
           a.cwiseProduct(f10[g]).colwise().sum().transpose();

    const int v = glyphs[g].vertex_count();
    const long double mu = static_cast<long double>(f00[g].sum()) / falling_factorial(n, v);
    const long double ways = falling_factorial(n - 1, v);
    long double spread = 0.0L;
    for (Index i = 0; i < n; ++i) {
      const long double diff = static_cast<long double>(loo(i)) / ways - mu;
      spread += diff * diff;
    }
    out[g] = static_cast<double>(static_cast<long double>(n) / static_cast<long double>(n - 1) *
                                 spread);
  }
  return out;
}

double jackknife_variance(const UndirectedGraph& graph, const BistarGlyph& glyph) {
  return jackknife_variances(graph, {glyph}).front();
}

double jackknife_variance_rebuild(const UndirectedGraph& graph, const BistarGlyph& glyph) {
  const Index n = graph.n();
  const int v = glyph.vertex_count();
  if (n < v + 1) {
    throw ValidationError("jackknife for glyph '" + format_glyph(glyph) + "' needs at least " +
                          std::to_string(v + 1) + " nodes, graph has " + std::to_string(n));
  }
  const long double mu = count_totals(graph, {glyph}).front().value / falling_factorial(n, v);
  long double spread = 0.0L;
  for (Index node = 0; node < n; ++node) {
    const UndirectedGraph reduced = graph.without_node(node);
    const long double mu_v =
        count_totals(reduced, {glyph}).front().value / falling_factorial(n - 1, v);
    spread += (mu_v - mu) * (mu_v - mu);
  }
  return static_cast<double>(static_cast<long double>(n) / static_cast<long double>(n - 1) *
                             spread);
}

}  // namespace graphpencil
