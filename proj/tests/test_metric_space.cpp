#include <doctest.h>

#include <cmath>

#include "cpt/metric_space.hpp"
#include "cpt/pt_qubit.hpp"
#include "oracles.hpp"

using namespace cpt;

namespace {

PTQubitSystem reference_system(double theta) {
  return PTQubitSystem::build(PTParams{1.0, 1.0, 1.0, theta});
}

} // namespace

TEST_CASE("identity metric reproduces the Dirac inner product") {
  auto gen = oracles::rng(101);
  const MetricSpace space = MetricSpace::dirac(3);
  const CVector u = oracles::random_vector(gen, 3);
  const CVector v = oracles::random_vector(gen, 3);
  CHECK(std::abs(inner(space, u, v) - dirac_dot(u, v)) == 0.0);
}

TEST_CASE("CPT inner products of computational basis states at alpha = pi/6") {
  const PTQubitSystem sys = reference_system(M_PI / 6.0);
  const CVector e0 = CVector::unit(2, 0);
  const CVector e1 = CVector::unit(2, 1);
  CHECK(inner(sys.space(), e0, e0).real() == doctest::Approx(1.0 / std::cos(M_PI / 6.0)).epsilon(1e-12));
  CHECK(inner(sys.space(), e0, e0).real() == doctest::Approx(1.1547005383792517).epsilon(1e-12));
  // sign of the off-diagonal overlap is convention-bound; its magnitude is tan(alpha)
  CHECK(std::abs(inner(sys.space(), e0, e1)) == doctest::Approx(std::tan(M_PI / 6.0)).epsilon(1e-12));
}

TEST_CASE("PT eigenstates are CPT-orthogonal") {
  for (double theta : {0.1, 0.45, 1.0}) {
    const PTQubitSystem sys = reference_system(theta);
    CHECK(std::abs(inner(sys.space(), sys.psi_plus(), sys.psi_minus())) < 1e-13);
    CHECK(std::abs(inner(sys.space(), sys.psi_minus(), sys.psi_plus())) < 1e-13);
  }
}

TEST_CASE("norm and normalize") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  const CVector pythagorean{cxd(0.6, 0), cxd(0.8, 0)};
  CHECK(norm(dirac2, pythagorean) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_abs_diff(normalize(dirac2, pythagorean), pythagorean) < 1e-15);

  const PTQubitSystem sys = reference_system(M_PI / 6.0);
  const CVector e0 = CVector::unit(2, 0);
  CHECK(norm(sys.space(), e0) == doctest::Approx(std::sqrt(1.0 / std::cos(M_PI / 6.0))).epsilon(1e-12));
  CHECK(norm(sys.space(), e0) == doctest::Approx(1.0745699318235423).epsilon(1e-10));

  auto gen = oracles::rng(102);
  const CVector raw = oracles::random_vector(gen, 2);
  const CVector once = normalize(sys.space(), raw);
  CHECK(max_abs_diff(once, normalize(sys.space(), once)) < 1e-14);
  CHECK(norm(sys.space(), once) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("normalize rejects the zero vector") {
  const MetricSpace space = MetricSpace::dirac(2);
  CHECK_THROWS_AS(normalize(space, CVector(2)), Error);
}

TEST_CASE("tensor_space composes metrics") {
  const MetricSpace d2 = MetricSpace::dirac(2);
  const MetricSpace d3 = MetricSpace::dirac(3);
  const MetricSpace joint = tensor_space(d2, d3);
  CHECK(joint.dim() == 6);
  CHECK(max_abs_diff(joint.metric(), CMatrix::identity(6)) == 0.0);

  const PTQubitSystem sys = reference_system(M_PI / 6.0);
  const MetricSpace pair = tensor_space(sys.space(), sys.space());
  const auto& eigs = pair.metric_eigenvalues();
  CHECK(eigs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[3] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("inner products of product vectors factorize") {
  auto gen = oracles::rng(103);
  const PTQubitSystem sys = reference_system(0.7);
  const MetricSpace joint = tensor_space(sys.space(), sys.space());
  const CVector a = oracles::random_vector(gen, 2), b = oracles::random_vector(gen, 2);
  const CVector c = oracles::random_vector(gen, 2), d = oracles::random_vector(gen, 2);
  const cxd lhs = inner(joint, tensor_product(a, b), tensor_product(c, d));
  const cxd rhs = inner(sys.space(), a, c) * inner(sys.space(), b, d);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("whiten and unwhiten") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  auto gen = oracles::rng(104);
  const CVector v = oracles::random_vector(gen, 2);
  CHECK(max_abs_diff(whiten(dirac2, v), v) == 0.0);

  const PTQubitSystem sys = reference_system(0.9);
  const CVector w = oracles::random_vector(gen, 2);
  CHECK(max_abs_diff(unwhiten(sys.space(), whiten(sys.space(), w)), w) < 1e-12);
  CHECK(dirac_norm(whiten(sys.space(), w)) == doctest::Approx(norm(sys.space(), w)).epsilon(1e-10));

  // whitened PT eigenstates are Dirac-orthonormal
  const CVector wp = whiten(sys.space(), sys.psi_plus());
  const CVector wm = whiten(sys.space(), sys.psi_minus());
  CHECK(dirac_norm(wp) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dirac_norm(wm) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(dirac_dot(wp, wm)) < 1e-12);
}

TEST_CASE("whitening preserves inner products") {
  auto gen = oracles::rng(105);
  const PTQubitSystem sys = reference_system(1.1);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector u = oracles::random_vector(gen, 2);
    const CVector v = oracles::random_vector(gen, 2);
    const cxd metric_form = inner(sys.space(), u, v);
    const cxd dirac_form = dirac_dot(whiten(sys.space(), u), whiten(sys.space(), v));
    CHECK(std::abs(metric_form - dirac_form) < 1e-10);
  }
}

TEST_CASE("orthocomplement") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  const CVector e0 = CVector::unit(2, 0);
  const CVector perp = orthocomplement(dirac2, e0);
  CHECK(std::abs(perp[0]) < 1e-15);
  CHECK(perp[1] == cxd(1, 0));

  auto gen = oracles::rng(106);
  for (double theta : {0.0, 0.4, 1.2}) {
    const PTQubitSystem sys = reference_system(theta);
    for (int trial = 0; trial < 10; ++trial) {
      const CVector psi = oracles::random_vector(gen, 2);
      const CVector phi = orthocomplement(sys.space(), psi);
      CHECK(std::abs(inner(sys.space(), psi, phi)) < 1e-12);
      CHECK(norm(sys.space(), phi) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // orthocomplement of psi_plus is psi_minus up to phase
    const CVector opp = orthocomplement(sys.space(), sys.psi_plus());
    CHECK(std::abs(std::abs(inner(sys.space(), opp, sys.psi_minus())) - 1.0) < 1e-12);
  }
}

TEST_CASE("orthocomplement rejects the zero vector") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  CHECK_THROWS_AS(orthocomplement(dirac2, CVector(2)), Error);
  try {
    orthocomplement(dirac2, CVector(2));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ZeroVector);
  }
}

TEST_CASE("measurement probabilities in the PT eigenbasis") {
  const PTQubitSystem sys = reference_system(M_PI / 6.0);
  const std::vector<CVector> basis{sys.psi_plus(), sys.psi_minus()};

  const auto certain = measurement_probability(sys.space(), sys.psi_plus(), basis);
  CHECK(certain[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certain[1] == doctest::Approx(0.0).epsilon(1e-12));

  auto gen = oracles::rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector psi = oracles::random_vector(gen, 2);
    const auto probs = measurement_probability(sys.space(), psi, basis);
    CHECK(probs[0] + probs[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(probs[0] >= 0.0);
    CHECK(probs[1] >= 0.0);
  }

  // direct evaluation of the probability rule for e0 at alpha = pi/6
  const CVector e0 = CVector::unit(2, 0);
  const auto probs = measurement_probability(sys.space(), e0, basis);
  const double n2 = inner(sys.space(), e0, e0).real();
  const double p_plus = std::norm(inner(sys.space(), e0, sys.psi_plus())) / n2;
  const double p_minus = std::norm(inner(sys.space(), e0, sys.psi_minus())) / n2;
  CHECK(probs[0] == doctest::Approx(p_plus).epsilon(1e-14));
  CHECK(probs[1] == doctest::Approx(p_minus).epsilon(1e-14));
}

TEST_CASE("measurement rejects a skewed basis") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  const std::vector<CVector> skewed{CVector{cxd(1, 0), cxd(0, 0)},
                                    CVector{cxd(std::sqrt(0.5), 0), cxd(std::sqrt(0.5), 0)}};
  CHECK_THROWS_AS(measurement_probability(dirac2, CVector::unit(2, 0), skewed), Error);
}

TEST_CASE("observable checks reduce to Hermiticity/symmetry for the identity metric") {
  const MetricSpace dirac2 = MetricSpace::dirac(2);
  const CMatrix sy(2, 2, {cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0)});
  const CMatrix sx(2, 2, {cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0)});
  CHECK(is_metric_observable(dirac2, sy));       // Hermitian
  CHECK(is_transpose_observable(dirac2, sx, CMatrix::identity(2)));
  CHECK_FALSE(is_transpose_observable(dirac2, sy, CMatrix::identity(2))); // sy^T = -sy
}

TEST_CASE("the PT Hamiltonian is an observable in its own metric space") {
  for (double theta : {0.0, 0.3, 0.8, 1.2}) {
    const PTQubitSystem sys = reference_system(theta);
    CHECK(is_metric_observable(sys.space(), sys.hamiltonian()));
  }
}

TEST_CASE("inner is sesquilinear") {
  auto gen = oracles::rng(108);
  const PTQubitSystem sys = reference_system(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector u = oracles::random_vector(gen, 2);
    const CVector v = oracles::random_vector(gen, 2);
    const CVector w = oracles::random_vector(gen, 2);
    const cxd za = oracles::random_cxd(gen);
    const cxd zb = oracles::random_cxd(gen);

    const cxd lhs = inner(sys.space(), u, za * v + zb * w);
    const cxd rhs = za * inner(sys.space(), u, v) + zb * inner(sys.space(), u, w);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));

    const cxd anti_lhs = inner(sys.space(), za * v + zb * w, u);
    const cxd anti_rhs =
        std::conj(za) * inner(sys.space(), v, u) + std::conj(zb) * inner(sys.space(), w, u);
    CHECK(std::abs(anti_lhs - anti_rhs) < 1e-12 * std::max(1.0, std::abs(anti_rhs)));

    CHECK(std::abs(inner(sys.space(), u, v) - std::conj(inner(sys.space(), v, u))) < 1e-13);
    if (dirac_norm(u) > 1e-8) CHECK(inner(sys.space(), u, u).real() > 0.0);
  }
}

TEST_CASE("inner rejects mismatched dimensions") {
  const MetricSpace space = MetricSpace::dirac(2);
  CHECK_THROWS_AS(inner(space, CVector(3), CVector(2)), Error);
}

TEST_CASE("metric space construction rejects bad metrics") {
  CHECK_THROWS_AS(MetricSpace(CMatrix(2, 2, {cxd(1, 0), cxd(1, 0), cxd(0, 0), cxd(1, 0)})), Error);
  // Hermitian but indefinite
  CHECK_THROWS_AS(MetricSpace(CMatrix(2, 2, {cxd(1, 0), cxd(0, 0), cxd(0, 0), cxd(-1, 0)})), Error);
}
