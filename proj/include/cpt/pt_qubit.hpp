#pragma once

#include <utility>

#include "cpt/metric_space.hpp"

namespace cpt {

/// Parameters of the two-level PT-symmetric Hamiltonian
///   H = [[r e^{i theta}, s], [t, r e^{-i theta}]],
/// all real. The phase is unbroken (real spectrum) when s t > r^2 sin^2 theta.
struct PTParams {
  double r = 0.0;
  double s = 1.0;
  double t = 1.0;
  double theta = 0.0;
};

/// Spectrum-only quantities, available for s != t as well.
struct PTSpectrum {
  double e_minus = 0.0;
  double e_plus = 0.0;
  double alpha = 0.0; // sin(alpha) = r sin(theta) / sqrt(s t)
};

/// Throws BrokenPTPhase when s t - r^2 sin^2 theta <= 1e-9.
PTSpectrum pt_spectrum(const PTParams& params);

CMatrix pt_hamiltonian(const PTParams& params);

/// CPT metric of the unbroken two-level system at mixing angle alpha:
///   (1 / cos alpha) [[1, -i sin alpha], [i sin alpha, 1]].
CMatrix cpt_metric_for_alpha(double alpha);

/// Max-norm residuals of the conjugation algebra. All vanish for a valid
/// unbroken system: C^2 = I, [C, H] = 0, [C, PT] = 0 (antilinear composition
/// checked on the computational basis, i.e. C P = P conj(C)), and
/// H^dag M = M H.
struct AlgebraReport {
  double c_squared = 0.0;
  double c_h_commutator = 0.0;
  double c_pt_commutator = 0.0;
  double metric_selfadjoint = 0.0;

  double max_residual() const;
  bool all_within(double tol) const { return max_residual() <= tol; }
};

AlgebraReport algebra_residuals(const CMatrix& h, const CMatrix& c, const CMatrix& p,
                                const CMatrix& metric);

/// Fully constructed two-level PT-symmetric system in the unbroken phase with
/// the symmetric coupling s = t: Hamiltonian, eigensystem, conjugation
/// operator C, parity P, and the metric space realizing the CPT inner product
/// as M = transpose(C P). Time reversal acts as componentwise conjugation.
///
/// The eigenstate prefactor is 1/sqrt(2 cos alpha) and the C prefactor is
/// 1/cos alpha; these are the unique choices satisfying the CPT orthonormality
/// of psi_plus/psi_minus and C^2 = I, and construction verifies both.
class PTQubitSystem {
public:
  static PTQubitSystem build(const PTParams& params);

  const PTParams& params() const { return params_; }
  double alpha() const { return alpha_; }
  std::pair<double, double> energies() const { return {e_minus_, e_plus_}; }
  const CMatrix& hamiltonian() const { return h_; }
  const CVector& psi_plus() const { return psi_plus_; }
  const CVector& psi_minus() const { return psi_minus_; }
  const CMatrix& c_op() const { return c_; }
  const CMatrix& p_op() const { return p_; }
  const MetricSpace& space() const { return space_; }

  /// Linear part G = C P of the antilinear CPT map: cpt_apply(psi) = G conj(psi).
  const CMatrix& cpt_linear_part() const { return cp_; }

private:
  PTQubitSystem(PTParams params, double alpha, double e_minus, double e_plus, CMatrix h,
                CVector psi_plus, CVector psi_minus, CMatrix c, CMatrix p, CMatrix cp,
                MetricSpace space)
      : params_(params), alpha_(alpha), e_minus_(e_minus), e_plus_(e_plus), h_(std::move(h)),
        psi_plus_(std::move(psi_plus)), psi_minus_(std::move(psi_minus)), c_(std::move(c)),
        p_(std::move(p)), cp_(std::move(cp)), space_(std::move(space)) {}

  PTParams params_;
  double alpha_;
  double e_minus_;
  double e_plus_;
  CMatrix h_;
  CVector psi_plus_;
  CVector psi_minus_;
  CMatrix c_;
  CMatrix p_;
  CMatrix cp_;
  MetricSpace space_;
};

/// Antilinear CPT conjugation: C P conj(psi). The defining identity
/// bilinear_dot(cpt_apply(psi), phi) == inner(space, psi, phi) holds exactly.
CVector cpt_apply(const PTQubitSystem& system, const CVector& psi);

AlgebraReport verify_algebra(const PTQubitSystem& system);

} // namespace cpt
