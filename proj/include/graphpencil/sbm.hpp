#pragma once

#include "graphpencil/error.hpp"
#include "graphpencil/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace graphpencil {

/// Stochastic block model: block proportions pi and a symmetric matrix b of
/// edge probabilities between blocks.
template <typename Scalar>
struct BasicSbmParams {
  Vector<Scalar> pi;
  Matrix<Scalar> b;

  Index k() const { return pi.size(); }

  template <typename Other>
  BasicSbmParams<Other> cast() const {
    return {pi.template cast<Other>(), b.template cast<Other>()};
  }
};

using SbmParams = BasicSbmParams<double>;

/// Throws ValidationError naming the first violated invariant.
template <typename Scalar>
void validate(const BasicSbmParams<Scalar>& p, double tolerance = 1e-12) {
  using std::abs;
  const Index k = p.k();
  if (k < 1) throw ValidationError("SBM must have at least one block (pi is empty)");
  if (p.b.rows() != k || p.b.cols() != k) {
    std::ostringstream os;
    os << "B must be " << k << "x" << k << " to match pi, got " << p.b.rows() << "x" << p.b.cols();
    throw ValidationError(os.str());
  }
  Scalar total(0);
  for (Index i = 0; i < k; ++i) {
    if (!(p.pi(i) >= Scalar(0))) {
      throw ValidationError("pi[" + std::to_string(i) + "] is negative");
    }
    total += p.pi(i);
  }
  if (!(abs(static_cast<double>(total) - 1.0) <= tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "pi must sum to 1 (sum is " << static_cast<double>(total) << ")";
    throw ValidationError(os.str());
  }
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      if (!(p.b(i, j) >= Scalar(0) && p.b(i, j) <= Scalar(1))) {
        throw ValidationError("B[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] is outside [0, 1]");
      }
      if (p.b(i, j) != p.b(j, i)) {
        throw ValidationError("B is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
}

/// Normalized block degrees d_k = sum_j pi_j B_jk.
template <typename Scalar>
Vector<Scalar> block_degrees(const BasicSbmParams<Scalar>& p) {
  return p.b.transpose() * p.pi;
}

/// Two-hop connection probabilities B diag(pi) B.
template <typename Scalar>
Matrix<Scalar> two_hop_matrix(const BasicSbmParams<Scalar>& p) {
  return p.b * p.pi.asDiagonal() * p.b;
}

/// Permutes blocks so that block degrees are in descending order (the order
/// in which inference reports its blocks).
template <typename Scalar>
BasicSbmParams<Scalar> sorted_by_degree(const BasicSbmParams<Scalar>& p) {
  const Vector<Scalar> d = block_degrees(p);
  std::vector<Index> order(static_cast<std::size_t>(p.k()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d(a) > d(b); });
  BasicSbmParams<Scalar> out{Vector<Scalar>(p.k()), Matrix<Scalar>(p.k(), p.k())};
  for (Index i = 0; i < p.k(); ++i) {
    out.pi(i) = p.pi(order[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < p.k(); ++j) {
      out.b(i, j) = p.b(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

/// Applies a block relabeling: block i of the result is block perm[i] of p.
template <typename Scalar>
BasicSbmParams<Scalar> permuted(const BasicSbmParams<Scalar>& p, const std::vector<Index>& perm) {
  BasicSbmParams<Scalar> out{Vector<Scalar>(p.k()), Matrix<Scalar>(p.k(), p.k())};
  for (Index i = 0; i < p.k(); ++i) {
    out.pi(i) = p.pi(perm[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < p.k(); ++j) {
      out.b(i, j) = p.b(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

/// Erdos-Renyi graph as a one-block SBM.
inline SbmParams erdos_renyi(double p) {
  SbmParams out{Vector<double>::Ones(1), Matrix<double>::Constant(1, 1, p)};
  return out;
}

}  // namespace graphpencil
