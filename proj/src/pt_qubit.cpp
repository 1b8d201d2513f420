#include "cpt/pt_qubit.hpp"

#include <algorithm>
#include <cmath>

namespace cpt {

namespace {

void check_finite(const PTParams& params) {
  if (!std::isfinite(params.r) || !std::isfinite(params.s) || !std::isfinite(params.t) ||
      !std::isfinite(params.theta))
    throw Error(ErrorCode::InvalidArgument, "PT parameters must be finite");
}

} // namespace

PTSpectrum pt_spectrum(const PTParams& params) {
  check_finite(params);
  const double rs = params.r * std::sin(params.theta);
  const double margin = params.s * params.t - rs * rs;
  if (margin <= 1e-9)
    throw Error(ErrorCode::BrokenPTPhase, "s t - r^2 sin^2 theta <= 1e-9 (exceptional point)");

  const double root = std::sqrt(margin);
  const double sin_alpha = rs / std::sqrt(params.s * params.t);
  PTSpectrum out;
  out.e_minus = params.r * std::cos(params.theta) - root;
  out.e_plus = params.r * std::cos(params.theta) + root;
  out.alpha = std::asin(std::clamp(sin_alpha, -1.0, 1.0));
  return out;
}

CMatrix pt_hamiltonian(const PTParams& params) {
  check_finite(params);
  const cxd phase(std::cos(params.theta), std::sin(params.theta));
  return CMatrix(2, 2, {params.r * phase, cxd(params.s, 0.0),
                        cxd(params.t, 0.0), params.r * std::conj(phase)});
}

CMatrix cpt_metric_for_alpha(double alpha) {
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  if (ca <= 1e-12) throw Error(ErrorCode::NonPositiveMetric, "metric degenerates as |sin alpha| -> 1");
  return CMatrix(2, 2, {cxd(1.0 / ca, 0.0), cxd(0.0, -sa / ca),
                        cxd(0.0, sa / ca), cxd(1.0 / ca, 0.0)});
}

double AlgebraReport::max_residual() const {
  return std::max({c_squared, c_h_commutator, c_pt_commutator, metric_selfadjoint});
}

AlgebraReport algebra_residuals(const CMatrix& h, const CMatrix& c, const CMatrix& p,
                                const CMatrix& metric) {
  AlgebraReport report;
  report.c_squared = max_abs_diff(c * c, CMatrix::identity(c.rows));
  report.c_h_commutator = max_abs_diff(c * h, h * c);
  // [C, PT] on the computational basis: (PT)psi = P conj(psi), so the
  // antilinear compositions compare as C P vs P conj(C).
  report.c_pt_commutator = max_abs_diff(c * p, p * conjugate(c));
  report.metric_selfadjoint = max_abs_diff(adjoint(h) * metric, metric * h);
  return report;
}

PTQubitSystem PTQubitSystem::build(const PTParams& params) {
  check_finite(params);
  if (params.s != params.t)
    throw Error(ErrorCode::UnsupportedAsymmetric,
                "closed-form C requires s = t; use pt_spectrum for s != t");
  if (params.s <= 0.0) throw Error(ErrorCode::InvalidArgument, "s must be positive");

  const PTSpectrum spec = pt_spectrum(params);
  const double alpha = spec.alpha;
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  if (std::abs(sa) >= 1.0 - 1e-9)
    throw Error(ErrorCode::NonPositiveMetric, "|sin alpha| >= 1 - 1e-9: metric not positive");

  CMatrix h = pt_hamiltonian(params);

  const double pref = 1.0 / std::sqrt(2.0 * ca);
  const cxd half_phase(std::cos(alpha / 2.0), std::sin(alpha / 2.0));
  CVector psi_plus{pref * half_phase, pref * std::conj(half_phase)};
  CVector psi_minus{pref * std::conj(half_phase), -pref * half_phase};

  CMatrix c(2, 2, {cxd(0.0, sa / ca), cxd(1.0 / ca, 0.0),
                   cxd(1.0 / ca, 0.0), cxd(0.0, -sa / ca)});
  CMatrix p(2, 2, {cxd(0.0, 0.0), cxd(1.0, 0.0), cxd(1.0, 0.0), cxd(0.0, 0.0)});
  CMatrix cp = c * p;

  MetricSpace space(transpose(cp));

  PTQubitSystem system(params, alpha, spec.e_minus, spec.e_plus, std::move(h),
                       std::move(psi_plus), std::move(psi_minus), std::move(c), std::move(p),
                       std::move(cp), std::move(space));

  // construction-time invariant checks
  const AlgebraReport report = verify_algebra(system);
  if (!report.all_within(1e-12))
    throw Error(ErrorCode::InvalidArgument, "conjugation algebra residual above 1e-12");
  const cxd npp = inner(system.space_, system.psi_plus_, system.psi_plus_);
  const cxd nmm = inner(system.space_, system.psi_minus_, system.psi_minus_);
  const cxd npm = inner(system.space_, system.psi_plus_, system.psi_minus_);
  if (std::abs(npp - 1.0) > 1e-12 || std::abs(nmm - 1.0) > 1e-12 || std::abs(npm) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "eigenstates not CPT-orthonormal within 1e-12");
  const CVector hp = system.h_ * system.psi_plus_;
  const CVector hm = system.h_ * system.psi_minus_;
  if (max_abs_diff(hp, cxd(spec.e_plus, 0.0) * system.psi_plus_) > 1e-11 ||
      max_abs_diff(hm, cxd(spec.e_minus, 0.0) * system.psi_minus_) > 1e-11)
    throw Error(ErrorCode::InvalidArgument, "eigenvalue equation residual too large");
  return system;
}

CVector cpt_apply(const PTQubitSystem& system, const CVector& psi) {
  if (psi.dim() != 2) throw Error(ErrorCode::DimMismatch, "cpt_apply expects dim 2");
  return system.cpt_linear_part() * conjugate(psi);
}

AlgebraReport verify_algebra(const PTQubitSystem& system) {
  return algebra_residuals(system.hamiltonian(), system.c_op(), system.p_op(),
                           system.space().metric());
}

} // namespace cpt
