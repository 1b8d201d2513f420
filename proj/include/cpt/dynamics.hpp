#pragma once

#include <array>
#include <vector>

#include "cpt/entanglement.hpp"
#include "cpt/pt_qubit.hpp"

namespace cpt {

/// H = scalar * I + (omega/2) sigma.n with a complex unit Bloch vector:
/// scalar = r cos theta, omega = 2 s cos alpha, n = (2/omega)(s, 0, i r sin theta),
/// and n.n = 1 (plain, non-conjugated dot) in the unbroken s = t phase.
struct BlochDecomposition {
  double scalar = 0.0;
  double omega = 0.0;
  std::array<cxd, 3> n{};
};

BlochDecomposition bloch_decompose(const PTParams& params);

/// sigma.n for a complex 3-vector n.
CMatrix pauli_dot(const std::array<cxd, 3>& n);

/// Interaction Hamiltonian H1 (x) H2 of two unbroken s = t systems, split as
/// local terms plus the single nonlocal term (omega omega'/4) sigma.n (x) sigma.n'.
/// Only the nonlocal term can generate entanglement.
struct ProductHamiltonian {
  PTQubitSystem system1;
  PTQubitSystem system2;
  BlochDecomposition bloch1;
  BlochDecomposition bloch2;
  CMatrix matrix;        // H1 (x) H2
  CMatrix nonlocal_part; // (omega omega'/4) sigma.n (x) sigma.n'
};

ProductHamiltonian product_hamiltonian(const PTQubitSystem& sys1, const PTQubitSystem& sys2);

/// Closed-form evolution under the nonlocal term:
/// U(t) = cos(omega omega' t/4) I - i sin(omega omega' t/4) sigma.n (x) sigma.n'.
/// Agrees with expm(-i t nonlocal_part) because (sigma.n)^2 = I.
CMatrix entangling_unitary(const ProductHamiltonian& ph, double t);

/// Amplitudes of U(t)|00> in the computational basis.
struct TwoQubitAmplitudes {
  cxd a00, a01, a10, a11;
};

TwoQubitAmplitudes closed_form_amplitudes(const PTParams& p1, const PTParams& p2, double t);

/// States psi(t) = expm(-i H t) psi0 at the requested times, with the CPT
/// entanglement entropy and larger Schmidt weight of each CPT-normalized
/// state. The stored states are the raw (unnormalized) evolved vectors.
struct EvolutionResult {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> entropies;
  std::vector<double> schmidt_lambdas;
};

EvolutionResult evolve(const CMatrix& hamiltonian, const CVector& psi0,
                       const std::vector<double>& times, const MetricSpace& s1,
                       const MetricSpace& s2);

} // namespace cpt
