#include "cpt/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "cpt/pt_qubit.hpp"

namespace cpt {

namespace {

// psi as a d1 x d2 matrix, row index = left factor
CMatrix reshape(const CVector& psi, std::size_t d1, std::size_t d2) {
  CMatrix out(d1, d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) out(i, j) = psi[i * d2 + j];
  return out;
}

double joint_norm(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2) {
  // psi^dag (M1 (x) M2) psi without forming the Kronecker product
  const std::size_t d1 = s1.dim();
  const std::size_t d2 = s2.dim();
  const CMatrix a = reshape(psi, d1, d2);
  const CMatrix m1a = s1.metric() * a;
  cxd acc(0.0, 0.0);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      cxd row(0.0, 0.0);
      for (std::size_t k = 0; k < d2; ++k) row += s2.metric()(j, k) * m1a(i, k);
      acc += std::conj(a(i, j)) * row;
    }
  return std::sqrt(std::max(acc.real(), 0.0));
}

void hermitize(CMatrix& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    m(i, i) = cxd(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < m.cols; ++j) {
      const cxd avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

} // namespace

double xlog2(double x) {
  if (x <= 0.0) {
    if (x < -1e-10) throw Error(ErrorCode::UnphysicalState, "eigenvalue below -1e-10");
    return 0.0;
  }
  return x * std::log2(x);
}

double binary_entropy(double lambda) {
  const double e = -xlog2(lambda) - xlog2(1.0 - lambda);
  return e == 0.0 ? 0.0 : e; // never -0.0
}

SchmidtForm schmidt(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2) {
  const std::size_t d1 = s1.dim();
  const std::size_t d2 = s2.dim();
  if (psi.dim() != d1 * d2)
    throw Error(ErrorCode::DimMismatch, "state dimension != product of factor dimensions");

  const double nrm = joint_norm(psi, s1, s2);
  if (nrm < 1e-14) throw Error(ErrorCode::ZeroVector, "cannot decompose a zero state");
  CVector unit = psi;
  for (auto& e : unit.v) e /= nrm;

  CMatrix a = reshape(unit, d1, d2);
  const CMatrix whitened = s1.metric_sqrt() * a * transpose(s2.metric_sqrt());
  const Svd dec = svd(whitened);

  SchmidtForm out{std::vector<double>(), {}, {}, s1, s2};
  const std::size_t k = dec.sigma.size();
  out.coefficients = dec.sigma;
  out.left_vectors.reserve(k);
  out.right_vectors.reserve(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    CVector u(d1), w(d2);
    for (std::size_t i = 0; i < d1; ++i) u[i] = dec.u(i, idx);
    // A_w = sum sigma u v^dag, so the right Schmidt vector of the bilinear
    // expansion is conj(v)
    for (std::size_t j = 0; j < d2; ++j) w[j] = std::conj(dec.v(j, idx));
    CVector left = s1.metric_inv_sqrt() * u;
    CVector right = s2.metric_inv_sqrt() * w;
    // phase convention on the left vector; the right vector absorbs the
    // compensating phase so the reconstruction is untouched
    const CVector fixed = phase_fix(left);
    cxd ph(1.0, 0.0);
    for (std::size_t i = 0; i < d1; ++i)
      if (std::abs(left[i]) > 0.5 * max_abs(left)) {
        ph = fixed[i] / left[i];
        break;
      }
    out.left_vectors.push_back(fixed);
    out.right_vectors.push_back(std::conj(ph) * right);
  }
  return out;
}

DensityMatrix reduced_density(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2,
                              Side keep, TraceTheory theory) {
  const std::size_t d1 = s1.dim();
  const std::size_t d2 = s2.dim();
  if (psi.dim() != d1 * d2)
    throw Error(ErrorCode::DimMismatch, "state dimension != product of factor dimensions");

  const CMatrix a = reshape(psi, d1, d2);
  CMatrix rho;
  if (keep == Side::Left) {
    if (theory == TraceTheory::Dirac) {
      rho = a * adjoint(a);
    } else {
      const CMatrix am = a * s2.metric();
      rho = am * adjoint(am);
    }
  } else {
    if (theory == TraceTheory::Dirac) {
      rho = transpose(a) * conjugate(a);
    } else {
      const CMatrix ma = transpose(a) * s1.metric();
      rho = ma * adjoint(ma);
    }
  }
  hermitize(rho);

  DensityMatrix out{std::move(rho), keep == Side::Left ? s1 : s2, false, 0.0};
  out.trace = trace(out.matrix).real();
  return out;
}

DensityMatrix reduced_density_whitened(const CVector& psi, const MetricSpace& s1,
                                       const MetricSpace& s2, Side keep) {
  const std::size_t d1 = s1.dim();
  const std::size_t d2 = s2.dim();
  if (psi.dim() != d1 * d2)
    throw Error(ErrorCode::DimMismatch, "state dimension != product of factor dimensions");
  const CMatrix a = reshape(psi, d1, d2);
  const CMatrix whitened = s1.metric_sqrt() * a * transpose(s2.metric_sqrt());
  CMatrix rho;
  if (keep == Side::Left)
    rho = whitened * adjoint(whitened);
  else
    rho = transpose(whitened) * conjugate(whitened);
  hermitize(rho);
  DensityMatrix out{std::move(rho), keep == Side::Left ? s1 : s2, false, 0.0};
  out.trace = trace(out.matrix).real();
  return out;
}

double entropy(const DensityMatrix& rho) {
  if (max_abs_diff(rho.matrix, adjoint(rho.matrix)) > 1e-10)
    throw Error(ErrorCode::NotHermitian, "density matrix not Hermitian within 1e-10");
  const double tr = trace(rho.matrix).real();
  if (tr < 1e-14) throw Error(ErrorCode::UnphysicalState, "density matrix trace is not positive");

  const HermEig eig = eig_hermitian(rho.matrix);
  double acc = 0.0;
  for (double lambda : eig.eigenvalues) acc -= xlog2(lambda / tr);
  return acc == 0.0 ? 0.0 : acc;
}

double entanglement_entropy(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2) {
  const SchmidtForm form = schmidt(psi, s1, s2);
  double acc = 0.0;
  for (double c : form.coefficients) acc -= xlog2(c * c);
  return acc == 0.0 ? 0.0 : acc;
}

double two_ptqubit_entanglement(cxd a, cxd b, cxd c, cxd d) {
  const double total = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  if (std::abs(total - 1.0) > 1e-10)
    throw Error(ErrorCode::NotNormalized, "amplitudes must have unit norm");

  const double left = std::norm(a) + std::norm(b);
  const double right = std::norm(c) + std::norm(d);
  const double cross = std::norm(a * std::conj(c) + b * std::conj(d));
  double x = 1.0 - 4.0 * (left * right - cross);
  if (x < 0.0) {
    if (x < -1e-12) throw Error(ErrorCode::UnphysicalState, "spectral discriminant below -1e-12");
    x = 0.0;
  }
  const double root = std::min(std::sqrt(x), 1.0);
  return binary_entropy(0.5 * (1.0 + root));
}

bool is_product(cxd a, cxd b, cxd c, cxd d) {
  const double total = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  if (std::abs(total - 1.0) > 1e-10)
    throw Error(ErrorCode::NotNormalized, "amplitudes must have unit norm");
  return std::abs(a * d - b * c) <= 1e-10;
}

double cross_theory_singlet_paper(double alpha) {
  if (!(std::abs(alpha) < M_PI / 2.0 - 1e-6))
    throw Error(ErrorCode::DomainError, "alpha must lie strictly inside (-pi/2, pi/2)");
  const double sa = std::sin(alpha);
  const double lo = 0.5 * (1.0 - 2.0 * std::abs(sa));
  if (lo < -1e-10)
    throw Error(ErrorCode::UnphysicalState,
                "printed closed form gives a negative eigenvalue for |sin alpha| > 1/2");
  return binary_entropy(0.5 * (1.0 + 2.0 * sa));
}

double cross_theory_singlet_oracle(double alpha) {
  if (!(std::abs(alpha) < M_PI / 2.0 - 1e-6))
    throw Error(ErrorCode::DomainError, "alpha must lie strictly inside (-pi/2, pi/2)");
  const MetricSpace space(cpt_metric_for_alpha(alpha));
  const double inv = 1.0 / std::sqrt(2.0);
  const CVector singlet{cxd(0.0, 0.0), cxd(inv, 0.0), cxd(-inv, 0.0), cxd(0.0, 0.0)};
  const DensityMatrix rho = reduced_density(singlet, space, space, Side::Left, TraceTheory::CPT);
  return entropy(rho);
}

CrossTheoryEntropy cross_theory_singlet_entropy(double alpha) {
  return {cross_theory_singlet_paper(alpha), cross_theory_singlet_oracle(alpha)};
}

} // namespace cpt
