#pragma once

#include <vector>

#include "cpt/metric_space.hpp"

namespace cpt {

/// Which inner product weights a partial trace.
enum class TraceTheory { Dirac, CPT };

enum class Side { Left = 1, Right = 2 };

/// Schmidt decomposition of a bipartite state over metric-orthonormal vector
/// pairs: psi = sum_i coefficients[i] * left[i] (x) right[i], coefficients
/// descending and nonnegative.
struct SchmidtForm {
  std::vector<double> coefficients;
  std::vector<CVector> left_vectors;
  std::vector<CVector> right_vectors;
  MetricSpace left_space;
  MetricSpace right_space;
};

/// Reduced state of one factor. `matrix` is reported in the computational
/// basis and is kept unnormalized; `trace` records its (real) trace.
struct DensityMatrix {
  CMatrix matrix;
  MetricSpace space;
  bool trace_normalized = false;
  double trace = 0.0;
};

/// Metric Schmidt decomposition: whiten both factors, singular value
/// decomposition, unwhiten. The input is normalized in the joint metric first.
SchmidtForm schmidt(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2);

/// Partial trace of |psi><psi| over the discarded factor. Dirac theory
/// contracts the traced indices with the identity; CPT theory contracts them
/// through the squared metric of the traced side, which reproduces the
/// operational overlap recipe of the non-Hermitian theory (see
/// cross_theory_singlet_entropy). The result is Hermitian positive
/// semidefinite in both theories.
DensityMatrix reduced_density(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2,
                              Side keep, TraceTheory theory);

/// Diagnostic variant: reduced state of the whitened image of psi. Its
/// eigenvalues are exactly the squared Schmidt coefficients.
DensityMatrix reduced_density_whitened(const CVector& psi, const MetricSpace& s1,
                                       const MetricSpace& s2, Side keep);

/// Von Neumann entropy in bits of the trace-normalized matrix. Eigenvalues in
/// [-1e-10, 0] are clamped to zero; anything more negative is an error.
double entropy(const DensityMatrix& rho);

/// -sum_i lambda_i log2 lambda_i from the squared Schmidt coefficients.
double entanglement_entropy(const CVector& psi, const MetricSpace& s1, const MetricSpace& s2);

/// Closed form for a two-level pair state a |++> + b |+-> + c |-+> + d |-->
/// expanded over CPT-orthonormal eigenstates: the reduced spectrum is
/// (1 +/- sqrt(X))/2 with X = 1 - 4[(|a|^2+|b|^2)(|c|^2+|d|^2) - |a c* + b d*|^2].
double two_ptqubit_entanglement(cxd a, cxd b, cxd c, cxd d);

/// Separability of the amplitude quadruple: |a d - b c| <= 1e-10.
bool is_product(cxd a, cxd b, cxd c, cxd d);

/// Entanglement of the ordinary singlet (|01> - |10>)/sqrt(2) evaluated with
/// CPT partial traces at mixing angle alpha.
///
/// oracle_value runs the full pipeline (reduced_density with CPT trace,
/// trace-normalize, entropy) and is the value this library endorses; its
/// reduced matrix at angle alpha is
///   (1/(2 cos^2 a)) [[1 + sin^2 a, -2i sin a], [2i sin a, 1 + sin^2 a]].
/// paper_value evaluates the spectrum printed alongside that matrix in the
/// source analysis, (1 +/- 2 sin a)/2, which is NOT the trace-normalized
/// spectrum of the matrix above and goes negative for sin a > 1/2 (then it
/// throws UnphysicalState). The two disagree for every alpha != 0; both are
/// reported so the discrepancy stays visible.
struct CrossTheoryEntropy {
  double paper_value = 0.0;
  double oracle_value = 0.0;
};

CrossTheoryEntropy cross_theory_singlet_entropy(double alpha);
double cross_theory_singlet_paper(double alpha);
double cross_theory_singlet_oracle(double alpha);

/// x log2 x with the 0 log 0 = 0 convention and the clamp window used by
/// entropy(); exposed because every module computing entropies needs it.
double xlog2(double x);
double binary_entropy(double lambda);

} // namespace cpt
