#pragma once

#include <vector>

#include "cpt/linalg.hpp"

namespace cpt {

/// Finite-dimensional complex inner-product space defined by a Hermitian
/// positive-definite metric M:  inner(psi, phi) = psi^dag M phi.
/// The identity metric reproduces the ordinary Dirac inner product; the
/// CPT inner product of an unbroken PT-symmetric system arrives here as
/// M = transpose(C P).
class MetricSpace {
public:
  explicit MetricSpace(CMatrix metric);

  /// Standard-theory space: identity metric, whitening maps exact identities.
  static MetricSpace dirac(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const CMatrix& metric() const { return metric_; }
  const CMatrix& metric_sqrt() const { return sqrt_; }
  const CMatrix& metric_inv_sqrt() const { return inv_sqrt_; }
  const std::vector<double>& metric_eigenvalues() const { return eigenvalues_; }

private:
  MetricSpace() = default;

  std::size_t dim_ = 0;
  CMatrix metric_;
  CMatrix sqrt_;
  CMatrix inv_sqrt_;
  std::vector<double> eigenvalues_;
};

cxd inner(const MetricSpace& space, const CVector& psi, const CVector& phi);
double norm(const MetricSpace& space, const CVector& psi);

/// Unit-norm rescaling with the global phase fixed so that the
/// largest-magnitude component is real nonnegative (ties: lowest index).
/// Throws ZeroVector below norm 1e-14.
CVector normalize(const MetricSpace& space, const CVector& psi);

/// Applies the phase convention above without rescaling.
CVector phase_fix(const CVector& psi);

MetricSpace tensor_space(const MetricSpace& s1, const MetricSpace& s2);

/// whiten applies M^(1/2): Dirac geometry of the image equals metric geometry
/// of the source. unwhiten is the exact inverse.
CVector whiten(const MetricSpace& space, const CVector& psi);
CVector unwhiten(const MetricSpace& space, const CVector& psi);

/// Unit-norm vector metric-orthogonal to psi; two-dimensional spaces only.
CVector orthocomplement(const MetricSpace& space, const CVector& psi);

/// Born probabilities |inner(psi, basis_n)|^2 / (norm^2(psi) norm^2(basis_n)).
/// The basis must be metric-orthonormal to 1e-10.
std::vector<double> measurement_probability(const MetricSpace& space, const CVector& psi,
                                            const std::vector<CVector>& basis);

/// Self-adjointness with respect to the metric: O^dag M = M O to 1e-10.
bool is_metric_observable(const MetricSpace& space, const CMatrix& op);

/// Transposition condition transpose(O) = K O K for a supplied CPT map K,
/// to 1e-10. With K = I this is a plain symmetry check.
bool is_transpose_observable(const MetricSpace& space, const CMatrix& op, const CMatrix& cpt_map);

} // namespace cpt
