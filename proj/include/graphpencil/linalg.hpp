#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace graphpencil {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// x^n by repeated multiplication; ipow(0, 0) == 1.
template <typename Scalar>
Scalar ipow(const Scalar& x, int n) {
  Scalar out(1);
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

/// Entrywise integer power of a dense matrix expression.
template <typename Derived>
auto entrywise_pow(const Eigen::MatrixBase<Derived>& m, int n) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> out = Matrix<Scalar>::Ones(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = out.cwiseProduct(m.derived());
  return out;
}

template <typename Scalar>
std::vector<double> to_double_vector(const Vector<Scalar>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(v(i));
  return out;
}

/// Relative singular-value cutoff for the pseudoinverse. 1e-10 in double;
/// wider scalars keep the same distance (in ulps) above their epsilon.
template <typename Scalar>
Scalar default_pinv_cutoff() {
  return Scalar(1e-10) * (std::numeric_limits<Scalar>::epsilon() /
                          Scalar(std::numeric_limits<double>::epsilon()));
}

template <typename Scalar>
struct Pseudoinverse {
  Matrix<Scalar> matrix;
  Vector<Scalar> singular_values;
  Scalar relative_cutoff;
  Index rank = 0;
};

/// Moore-Penrose pseudoinverse via a thin SVD. Singular values below
/// relative_cutoff * sigma_max are treated as zero.
template <typename Scalar>
Pseudoinverse<Scalar> pseudoinverse(const Matrix<Scalar>& a, Scalar relative_cutoff) {
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector<Scalar>& s = svd.singularValues();
  Pseudoinverse<Scalar> out;
  out.singular_values = s;
  out.relative_cutoff = relative_cutoff;
  const Scalar threshold = s.size() > 0 ? relative_cutoff * s(0) : Scalar(0);
  Vector<Scalar> inv = Vector<Scalar>::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold && s(i) > Scalar(0)) {
      inv(i) = Scalar(1) / s(i);
      ++out.rank;
    }
  }
  out.matrix = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

template <typename Scalar>
Vector<Scalar> singular_values(const Matrix<Scalar>& a) {
  return Eigen::JacobiSVD<Matrix<Scalar>>(a).singularValues();
}

/// sigma_max / sigma_min in the 2-norm; infinity for singular input.
template <typename Scalar>
double condition_number(const Matrix<Scalar>& a) {
  const Vector<Scalar> s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double lo = static_cast<double>(s(s.size() - 1));
  const double hi = static_cast<double>(s(0));
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace graphpencil
