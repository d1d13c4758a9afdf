#pragma once

#include "graphpencil/forward.hpp"
#include "graphpencil/pencil.hpp"
#include "graphpencil/sbm.hpp"

#include <algorithm>

namespace graphpencil {

/// Exact forward densities of `truth` fed back through infer_sbm in the
/// given scalar type. Returns the largest absolute error over pi, d and B
/// after sorting the truth by degree and renormalizing pi in Scalar.
template <typename Scalar>
double roundtrip_error(const SbmParams& truth, const PencilOptions& options = {}) {
  BasicSbmParams<Scalar> p = sorted_by_degree(truth).template cast<Scalar>();
  // pi from double sums to 1 only to double precision; <d^0> is fixed to 1
  p.pi /= p.pi.sum();
  const ExactDensitySource<Scalar> source(p);
  const PencilSolution<Scalar> sol = infer_sbm(source, static_cast<int>(p.k()), options);
  const Vector<Scalar> d = block_degrees(p);
  const double e_pi = static_cast<double>((sol.pi - p.pi).cwiseAbs().maxCoeff());
  const double e_d = static_cast<double>((sol.d - d).cwiseAbs().maxCoeff());
  const double e_b = static_cast<double>((sol.b - p.b).cwiseAbs().maxCoeff());
  return std::max({e_pi, e_d, e_b});
}

}  // namespace graphpencil
