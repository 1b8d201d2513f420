#pragma once

#include <cstdint>
#include <vector>

#include "cpt/entanglement.hpp"

namespace cpt {

/// One point of an entanglement-rate trajectory. lambda is the larger Schmidt
/// weight, entropy its binary entropy in bits, gamma the signed rate
/// f(lambda) Im h, and bound the magnitude form |log2((1-lambda)/lambda)| h_max.
struct RateSample {
  double t = 0.0;
  double lambda = 0.0;
  double entropy = 0.0;
  double gamma = 0.0;
  double bound = 0.0;
};

struct HMaxConfig {
  std::size_t starts = 32;            // quasi-random simplex starts
  double tolerance = 1e-10;           // simplex convergence tolerance
  std::size_t max_evaluations = 20000; // total objective budget for the optimizer
  std::uint64_t seed = 0;             // offsets the quasi-random start sequence
  std::size_t grid_points = 24;       // coarse cross-check grid per angle
  unsigned threads = 0;               // 0: CPT_ENTANGLE_THREADS or hardware
};

struct HMaxResult {
  double value = 0.0;       // best of optimizer and grid cross-check
  CVector a1;               // argmax vectors, unit norm in their metrics
  CVector b1;
  std::size_t evaluations = 0; // optimizer objective evaluations
  std::size_t starts = 0;
  double optimizer_value = 0.0;
  double grid_value = 0.0;
  std::size_t grid_evaluations = 0;
};

/// Raised when the evaluation budget cannot accommodate the requested starts;
/// carries the best value found from the start points themselves.
class OptimizerBudgetError : public Error {
public:
  OptimizerBudgetError(const std::string& message, HMaxResult best)
      : Error(ErrorCode::OptimizerBudgetExceeded, message), best_so_far(std::move(best)) {}

  HMaxResult best_so_far;
};

/// h(H, a1, b1) = <a1 b1| H |a2 b2> under the joint metric, with a2, b2 the
/// metric orthocomplements of a1, b1. |h| does not depend on any of the
/// phase choices.
cxd h_value(const CMatrix& hamiltonian, const CVector& a1, const CVector& b1,
            const MetricSpace& s1, const MetricSpace& s2);

/// d lambda/dt = 2 sqrt(lambda(1-lambda)) Im <a1 b1|H|a2 b2> evaluated on the
/// Schmidt vectors of a rank-2 form.
double lambda_dot(const CMatrix& hamiltonian, const SchmidtForm& form, const MetricSpace& s1,
                  const MetricSpace& s2);

/// Entanglement rate Gamma = f(lambda)|h| with f(lambda) =
/// 2 sqrt(lambda(1-lambda)) log2((1-lambda)/lambda), extended by continuity
/// with f(0) = f(1) = 0. gamma_signed returns f(lambda) Im h, which is the
/// actual dE/dt along a trajectory.
double gamma(const CMatrix& hamiltonian, const CVector& psi, const MetricSpace& s1,
             const MetricSpace& s2);
double gamma_signed(const CMatrix& hamiltonian, const CVector& psi, const MetricSpace& s1,
                    const MetricSpace& s2);

/// Entangling capability: max of |h| over metric-unit a1, b1. Multi-start
/// Nelder-Mead over four whitened angles, cross-checked against a coarse grid
/// that is locally refined around its best cells; returns the better of the
/// two routes with the argmax vectors.
HMaxResult h_max(const CMatrix& hamiltonian, const MetricSpace& s1, const MetricSpace& s2,
                 const HMaxConfig& config = {});

/// lambda(t) = sin^2(h_max t + phi0) with lambda(0) = lambda0.
double lambda_closed_form(double h_max, double lambda0, double t);

/// log2((1-lambda)/lambda) * h_max. Signed; callers comparing against rates
/// use its magnitude. Throws DomainError at lambda in {0, 1}.
double gamma_bound(double lambda, double h_max);

/// Evolve, decompose, and rate-check at every time point.
std::vector<RateSample> trajectory(const CMatrix& hamiltonian, const CVector& psi0,
                                   const MetricSpace& s1, const MetricSpace& s2,
                                   const std::vector<double>& times,
                                   const HMaxConfig& config = {});

} // namespace cpt
