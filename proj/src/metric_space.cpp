#include "cpt/metric_space.hpp"

#include <algorithm>
#include <cmath>

namespace cpt {

MetricSpace::MetricSpace(CMatrix metric) {
  if (!metric.square()) throw Error(ErrorCode::DimMismatch, "metric must be square");
  if (!all_finite(metric)) throw Error(ErrorCode::InvalidArgument, "metric has non-finite entries");
  if (max_abs_diff(metric, adjoint(metric)) > 1e-12)
    throw Error(ErrorCode::NotHermitian, "metric is not Hermitian within 1e-12");

  const HermEig eig = eig_hermitian(metric);
  for (double lambda : eig.eigenvalues)
    if (lambda <= 1e-10)
      throw Error(ErrorCode::NotPositiveDefinite, "metric eigenvalue <= 1e-10");

  dim_ = metric.rows;
  metric_ = std::move(metric);
  eigenvalues_ = eig.eigenvalues;

  sqrt_ = CMatrix(dim_, dim_);
  inv_sqrt_ = CMatrix(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      cxd s(0.0, 0.0), r(0.0, 0.0);
      for (std::size_t k = 0; k < dim_; ++k) {
        const cxd proj = eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
        const double root = std::sqrt(eig.eigenvalues[k]);
        s += proj * root;
        r += proj / root;
      }
      sqrt_(i, j) = s;
      inv_sqrt_(i, j) = r;
    }
}

MetricSpace MetricSpace::dirac(std::size_t dim) {
  MetricSpace space;
  space.dim_ = dim;
  space.metric_ = CMatrix::identity(dim);
  space.sqrt_ = space.metric_;
  space.inv_sqrt_ = space.metric_;
  space.eigenvalues_.assign(dim, 1.0);
  return space;
}

cxd inner(const MetricSpace& space, const CVector& psi, const CVector& phi) {
  if (psi.dim() != space.dim() || phi.dim() != space.dim())
    throw Error(ErrorCode::DimMismatch, "inner product dimension mismatch");
  return dirac_dot(psi, space.metric() * phi);
}

double norm(const MetricSpace& space, const CVector& psi) {
  const double n2 = inner(space, psi, psi).real();
  return std::sqrt(std::max(n2, 0.0));
}

CVector phase_fix(const CVector& psi) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const double mag = std::abs(psi[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return psi;
  const cxd factor = std::conj(psi[best]) / best_mag;
  CVector out = psi;
  for (auto& e : out.v) e *= factor;
  out[best] = cxd(std::abs(out[best].real()), 0.0);
  return out;
}

CVector normalize(const MetricSpace& space, const CVector& psi) {
  const double n = norm(space, psi);
  if (n < 1e-14) throw Error(ErrorCode::ZeroVector, "cannot normalize a (near) zero vector");
  CVector out = psi;
  for (auto& e : out.v) e /= n;
  return phase_fix(out);
}

MetricSpace tensor_space(const MetricSpace& s1, const MetricSpace& s2) {
  return MetricSpace(tensor_product(s1.metric(), s2.metric()));
}

CVector whiten(const MetricSpace& space, const CVector& psi) {
  if (psi.dim() != space.dim()) throw Error(ErrorCode::DimMismatch, "whiten dimension mismatch");
  return space.metric_sqrt() * psi;
}

CVector unwhiten(const MetricSpace& space, const CVector& psi) {
  if (psi.dim() != space.dim()) throw Error(ErrorCode::DimMismatch, "unwhiten dimension mismatch");
  return space.metric_inv_sqrt() * psi;
}

CVector orthocomplement(const MetricSpace& space, const CVector& psi) {
  if (space.dim() != 2 || psi.dim() != 2)
    throw Error(ErrorCode::DimMismatch, "orthocomplement is defined for dim 2");
  const CVector w = space.metric() * psi;
  CVector raw{-std::conj(w[1]), std::conj(w[0])};
  return normalize(space, raw);
}

std::vector<double> measurement_probability(const MetricSpace& space, const CVector& psi,
                                            const std::vector<CVector>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const cxd overlap = inner(space, basis[i], basis[j]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-10)
        throw Error(ErrorCode::BasisNotOrthonormal, "measurement basis not metric-orthonormal");
    }

  const double psi_norm2 = std::max(inner(space, psi, psi).real(), 1e-300);
  std::vector<double> probs;
  probs.reserve(basis.size());
  for (const auto& state : basis) {
    const double state_norm2 = inner(space, state, state).real();
    const double amp = std::norm(inner(space, psi, state));
    probs.push_back(amp / (psi_norm2 * state_norm2));
  }
  return probs;
}

bool is_metric_observable(const MetricSpace& space, const CMatrix& op) {
  if (!op.square() || op.rows != space.dim())
    throw Error(ErrorCode::DimMismatch, "observable dimension mismatch");
  return max_abs_diff(adjoint(op) * space.metric(), space.metric() * op) <= 1e-10;
}

bool is_transpose_observable(const MetricSpace& space, const CMatrix& op, const CMatrix& cpt_map) {
  if (!op.square() || op.rows != space.dim() || !cpt_map.square() || cpt_map.rows != space.dim())
    throw Error(ErrorCode::DimMismatch, "observable dimension mismatch");
  return max_abs_diff(transpose(op), cpt_map * op * cpt_map) <= 1e-10;
}

} // namespace cpt
