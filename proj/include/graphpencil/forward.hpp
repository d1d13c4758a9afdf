#pragma once

#include "graphpencil/glyph.hpp"
#include "graphpencil/linalg.hpp"
#include "graphpencil/sbm.hpp"

#include <variant>

namespace graphpencil {

/// K x K densities of a glyph with both centres rooted, indexed by the
/// blocks of the left and right roots:
///   (d 1^T)^l o (1 d^T)^r o Lambda^c o B^e   (entrywise powers and products).
template <typename Scalar>
Matrix<Scalar> birooted_density(const BasicSbmParams<Scalar>& p, const BistarGlyph& g) {
  const Index k = p.k();
  const Vector<Scalar> d = block_degrees(p);
  Matrix<Scalar> out(k, k);
  Matrix<Scalar> lambda;
  if (g.mid > 0) lambda = two_hop_matrix(p);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < k; ++i) {
      Scalar v = ipow(d(i), g.left) * ipow(d(j), g.right);
      if (g.mid > 0) v *= ipow(lambda(i, j), g.mid);
      if (g.bridge) v *= p.b(i, j);
      out(i, j) = v;
    }
  }
  return out;
}

/// Length-K densities with only the left centre rooted.
template <typename Scalar>
Vector<Scalar> left_rooted_density(const BasicSbmParams<Scalar>& p, const BistarGlyph& g) {
  return birooted_density(p, g) * p.pi;
}

/// Observable homomorphism density: both roots contracted with pi.
template <typename Scalar>
Scalar unrooted_density(const BasicSbmParams<Scalar>& p, const BistarGlyph& g) {
  return p.pi.dot(birooted_density(p, g) * p.pi);
}

template <typename Scalar>
Scalar unrooted_density(const BasicSbmParams<Scalar>& p, const GlyphCombination& c) {
  Scalar total(0);
  for (const auto& t : c.terms()) total += Scalar(t.coefficient) * unrooted_density(p, t.glyph);
  return total;
}

template <typename Scalar>
using DensityValue = std::variant<Scalar, Vector<Scalar>, Matrix<Scalar>>;

/// Density of g in the shape dictated by its rooting: scalar when unrooted,
/// K-vector when left-rooted, K x K matrix when birooted.
template <typename Scalar>
DensityValue<Scalar> eval_density(const BasicSbmParams<Scalar>& p, const BistarGlyph& g) {
  switch (g.rooting) {
    case Rooting::Unrooted: return unrooted_density(p, g);
    case Rooting::LeftRooted: return left_rooted_density(p, g);
    case Rooting::BiRooted: return birooted_density(p, g);
  }
  return unrooted_density(p, g);
}

/// Star moments <d^j> = sum_k pi_k d_k^j for j = 0 .. count-1.
template <typename Scalar>
Vector<Scalar> star_moments(const BasicSbmParams<Scalar>& p, int count) {
  const Vector<Scalar> d = block_degrees(p);
  Vector<Scalar> out(count);
  for (int j = 0; j < count; ++j) {
    Scalar acc(0);
    for (Index k = 0; k < p.k(); ++k) acc += p.pi(k) * ipow(d(k), j);
    out(j) = acc;
  }
  return out;
}

}  // namespace graphpencil
