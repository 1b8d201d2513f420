#include "cpt/dynamics.hpp"

#include <cmath>

namespace cpt {

BlochDecomposition bloch_decompose(const PTParams& params) {
  if (params.s != params.t)
    throw Error(ErrorCode::UnsupportedAsymmetric, "Bloch form requires s = t");
  if (params.s <= 0.0) throw Error(ErrorCode::InvalidArgument, "s must be positive");
  const PTSpectrum spec = pt_spectrum(params);

  BlochDecomposition out;
  out.scalar = params.r * std::cos(params.theta);
  out.omega = 2.0 * params.s * std::cos(spec.alpha);
  const double scale = 2.0 / out.omega;
  out.n = {cxd(scale * params.s, 0.0), cxd(0.0, 0.0),
           cxd(0.0, scale * params.r * std::sin(params.theta))};
  return out;
}

CMatrix pauli_dot(const std::array<cxd, 3>& n) {
  return CMatrix(2, 2, {n[2], n[0] - cxd(0.0, 1.0) * n[1],
                        n[0] + cxd(0.0, 1.0) * n[1], -n[2]});
}

ProductHamiltonian product_hamiltonian(const PTQubitSystem& sys1, const PTQubitSystem& sys2) {
  const BlochDecomposition b1 = bloch_decompose(sys1.params());
  const BlochDecomposition b2 = bloch_decompose(sys2.params());
  CMatrix matrix = tensor_product(sys1.hamiltonian(), sys2.hamiltonian());
  CMatrix nonlocal = tensor_product(pauli_dot(b1.n), pauli_dot(b2.n));
  nonlocal *= cxd(b1.omega * b2.omega / 4.0, 0.0);
  return ProductHamiltonian{sys1, sys2, b1, b2, std::move(matrix), std::move(nonlocal)};
}

CMatrix entangling_unitary(const ProductHamiltonian& ph, double t) {
  const double tau = ph.bloch1.omega * ph.bloch2.omega * t / 4.0;
  CMatrix u = CMatrix::identity(4);
  u *= cxd(std::cos(tau), 0.0);
  CMatrix nn = tensor_product(pauli_dot(ph.bloch1.n), pauli_dot(ph.bloch2.n));
  nn *= cxd(0.0, -std::sin(tau));
  u += nn;
  return u;
}

TwoQubitAmplitudes closed_form_amplitudes(const PTParams& p1, const PTParams& p2, double t) {
  const BlochDecomposition b1 = bloch_decompose(p1);
  const BlochDecomposition b2 = bloch_decompose(p2);
  const double ww = b1.omega * b2.omega;
  const double tau = ww * t / 4.0;
  const double g = 4.0 / ww;
  const double st1 = p1.r * std::sin(p1.theta);
  const double st2 = p2.r * std::sin(p2.theta);

  TwoQubitAmplitudes out;
  out.a00 = cxd(std::cos(tau), std::sin(tau) * g * st1 * st2);
  out.a01 = cxd(g * std::sin(tau) * p2.s * st1, 0.0);
  out.a10 = cxd(g * std::sin(tau) * p1.s * st2, 0.0);
  out.a11 = cxd(0.0, -g * p1.s * p2.s * std::sin(tau));
  return out;
}

EvolutionResult evolve(const CMatrix& hamiltonian, const CVector& psi0,
                       const std::vector<double>& times, const MetricSpace& s1,
                       const MetricSpace& s2) {
  const std::size_t dim = s1.dim() * s2.dim();
  if (!hamiltonian.square() || hamiltonian.rows != dim || psi0.dim() != dim)
    throw Error(ErrorCode::DimMismatch, "evolution dimension mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] >= times[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "times must be nondecreasing");

  const MetricSpace joint = tensor_space(s1, s2);

  EvolutionResult out;
  out.times = times;
  out.states.reserve(times.size());
  out.entropies.reserve(times.size());
  out.schmidt_lambdas.reserve(times.size());

  for (double t : times) {
    CMatrix gen = hamiltonian;
    gen *= cxd(0.0, -t);
    const CVector state = expm(gen) * psi0;
    const CVector unit = normalize(joint, state);
    const SchmidtForm form = schmidt(unit, s1, s2);
    double e = 0.0;
    for (double c : form.coefficients) e -= xlog2(c * c);
    out.states.push_back(state);
    out.entropies.push_back(e);
    out.schmidt_lambdas.push_back(form.coefficients.empty()
                                      ? 0.0
                                      : form.coefficients.front() * form.coefficients.front());
  }
  return out;
}

} // namespace cpt
