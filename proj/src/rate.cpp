#include "cpt/rate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "cpt/dynamics.hpp"

namespace cpt {

namespace {

struct WhitenedProblem {
  CMatrix h; // (M1 (x) M2)^(1/2) H (M1 (x) M2)^(-1/2)
};

WhitenedProblem whiten_problem(const CMatrix& hamiltonian, const MetricSpace& s1,
                               const MetricSpace& s2) {
  const CMatrix w = tensor_product(s1.metric_sqrt(), s2.metric_sqrt());
  const CMatrix wi = tensor_product(s1.metric_inv_sqrt(), s2.metric_inv_sqrt());
  return WhitenedProblem{w * hamiltonian * wi};
}

// |<a1 b1| H~ |a2 b2>| with Dirac-unit whitened vectors parameterized by two
// angles each (global phases drop out of the magnitude).
double objective(const WhitenedProblem& prob, double ta, double pa, double tb, double pb) {
  const double ca = std::cos(ta), sa = std::sin(ta);
  const double cb = std::cos(tb), sb = std::sin(tb);
  const cxd ea(std::cos(pa), std::sin(pa));
  const cxd eb(std::cos(pb), std::sin(pb));

  const cxd a1[2] = {cxd(ca, 0.0), ea * sa};
  const cxd a2[2] = {-std::conj(ea) * sa, cxd(ca, 0.0)};
  const cxd b1[2] = {cxd(cb, 0.0), eb * sb};
  const cxd b2[2] = {-std::conj(eb) * sb, cxd(cb, 0.0)};

  cxd ket[4], bra[4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ket[2 * i + j] = a2[i] * b2[j];
      bra[2 * i + j] = a1[i] * b1[j];
    }
  cxd acc(0.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    cxd row(0.0, 0.0);
    for (int j = 0; j < 4; ++j) row += prob.h(i, j) * ket[j];
    acc += std::conj(bra[i]) * row;
  }
  return std::abs(acc);
}

using Point = std::array<double, 4>;

struct LocalSearchResult {
  double value = 0.0;
  Point point{};
  std::size_t evaluations = 0;
};

// Nelder-Mead maximization of the objective, capped at a fixed evaluation
// budget. Angles are unconstrained: the parameterization is periodic.
LocalSearchResult nelder_mead(const WhitenedProblem& prob, const Point& start, double tol,
                              std::size_t max_evals) {
  constexpr int n = 4;
  struct Vertex {
    Point x;
    double f; // negated objective: we minimize
  };

  std::size_t evals = 0;
  auto eval = [&](const Point& x) {
    ++evals;
    return -objective(prob, x[0], x[1], x[2], x[3]);
  };

  std::array<Vertex, n + 1> simplex;
  simplex[0] = {start, eval(start)};
  for (int i = 0; i < n; ++i) {
    Point x = start;
    x[i] += 0.25;
    simplex[i + 1] = {x, eval(x)};
  }

  auto order = [&]() {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& lhs, const Vertex& rhs) { return lhs.f < rhs.f; });
  };
  order();

  while (evals + 4 < max_evals) {
    if (simplex[n].f - simplex[0].f < tol) break;
    double diameter = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
    if (diameter < 1e-9) break;

    Point centroid{};
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d) centroid[d] += simplex[i].x[d] / n;

    auto blend = [&](double coeff) {
      Point x;
      for (int d = 0; d < n; ++d) x[d] = centroid[d] + coeff * (centroid[d] - simplex[n].x[d]);
      return x;
    };

    const Point reflected = blend(1.0);
    const double fr = eval(reflected);
    if (fr < simplex[0].f) {
      const Point expanded = blend(2.0);
      const double fe = eval(expanded);
      if (fe < fr)
        simplex[n] = {expanded, fe};
      else
        simplex[n] = {reflected, fr};
    } else if (fr < simplex[n - 1].f) {
      simplex[n] = {reflected, fr};
    } else {
      const Point contracted = blend(-0.5);
      const double fc = eval(contracted);
      if (fc < simplex[n].f) {
        simplex[n] = {contracted, fc};
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < n; ++d)
            simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
    order();
  }

  return LocalSearchResult{-simplex[0].f, simplex[0].x, evals};
}

unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("CPT_ENTANGLE_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) threads = static_cast<unsigned>(parsed);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::min(threads, 64u);
}

// Kronecker quasi-random sequence over the four angle ranges; the seed shifts
// the sequence offset so runs are reproducible.
Point quasi_random_start(std::uint64_t index) {
  // inverse powers of the plastic-family constant for 4 dimensions
  static const double g[4] = {0.856510402, 0.733609254, 0.628343442, 0.538182549};
  Point x;
  const double ranges[4] = {M_PI / 2.0, 2.0 * M_PI, M_PI / 2.0, 2.0 * M_PI};
  for (int d = 0; d < 4; ++d) {
    const double frac = std::fmod(0.5 + double(index + 1) * g[d], 1.0);
    x[d] = frac * ranges[d];
  }
  return x;
}

struct GridSearchResult {
  double value = 0.0;
  Point point{};
  std::size_t evaluations = 0;
};

GridSearchResult grid_search(const WhitenedProblem& prob, std::size_t points, unsigned threads) {
  const double theta_step = (M_PI / 2.0) / double(points);
  const double phi_step = (2.0 * M_PI) / double(points);

  // coarse scan, keeping the best cell per theta-theta slab for a handful of
  // independent refinement seeds
  struct Cell {
    double value = -1.0;
    Point point{};
  };
  std::vector<Cell> slab_best(points * points);
  std::size_t evals = 0;

  auto scan_slab = [&](std::size_t slab) {
    const std::size_t ia = slab / points;
    const std::size_t ib = slab % points;
    const double ta = (double(ia) + 0.5) * theta_step;
    const double tb = (double(ib) + 0.5) * theta_step;
    Cell best;
    for (std::size_t ja = 0; ja < points; ++ja) {
      const double pa = double(ja) * phi_step;
      for (std::size_t jb = 0; jb < points; ++jb) {
        const double pb = double(jb) * phi_step;
        const double v = objective(prob, ta, pa, tb, pb);
        if (v > best.value) best = {v, Point{ta, pa, tb, pb}};
      }
    }
    slab_best[slab] = best;
  };

  const std::size_t slabs = points * points;
  const unsigned workers = std::min<unsigned>(threads, slabs);
  if (workers <= 1) {
    for (std::size_t slab = 0; slab < slabs; ++slab) scan_slab(slab);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (std::size_t slab = w; slab < slabs; slab += workers) scan_slab(slab);
      });
    for (auto& th : pool) th.join();
  }
  evals += slabs * points * points;

  std::vector<Cell> seeds = slab_best;
  std::sort(seeds.begin(), seeds.end(),
            [](const Cell& lhs, const Cell& rhs) { return lhs.value > rhs.value; });
  seeds.resize(std::min<std::size_t>(seeds.size(), 5));

  // local refinement: shrink a 5^4 stencil around the best point of each seed
  GridSearchResult out;
  for (const Cell& seed : seeds) {
    Point x = seed.point;
    double value = seed.value;
    std::array<double, 4> widths = {theta_step, phi_step, theta_step, phi_step};
    for (int round = 0; round < 14; ++round) {
      Point best_x = x;
      double best_v = value;
      for (int ia = -2; ia <= 2; ++ia)
        for (int ja = -2; ja <= 2; ++ja)
          for (int ib = -2; ib <= 2; ++ib)
            for (int jb = -2; jb <= 2; ++jb) {
              if (ia == 0 && ja == 0 && ib == 0 && jb == 0) continue;
              const Point cand{x[0] + widths[0] * ia / 2.0, x[1] + widths[1] * ja / 2.0,
                               x[2] + widths[2] * ib / 2.0, x[3] + widths[3] * jb / 2.0};
              const double v = objective(prob, cand[0], cand[1], cand[2], cand[3]);
              if (v > best_v) {
                best_v = v;
                best_x = cand;
              }
            }
      evals += 624;
      x = best_x;
      value = best_v;
      for (auto& w : widths) w /= 3.0;
    }
    if (value > out.value) {
      out.value = value;
      out.point = x;
    }
  }
  out.evaluations = evals;
  return out;
}

double f_of_lambda(double lambda) {
  // continuous extension f(0) = f(1) = 0, with a snap window so that
  // rounding dust in lambda cannot be amplified by the logarithm
  if (lambda <= 1e-12 || lambda >= 1.0 - 1e-12) return 0.0;
  return 2.0 * std::sqrt(lambda * (1.0 - lambda)) * std::log2((1.0 - lambda) / lambda);
}

cxd schmidt_pair_element(const CMatrix& hamiltonian, const SchmidtForm& form,
                         const MetricSpace& s1, const MetricSpace& s2) {
  const CVector v1 = tensor_product(form.left_vectors[0], form.right_vectors[0]);
  const CVector v2 = tensor_product(form.left_vectors[1], form.right_vectors[1]);
  const CMatrix joint_metric = tensor_product(s1.metric(), s2.metric());
  return dirac_dot(v1, joint_metric * (hamiltonian * v2));
}

} // namespace

cxd h_value(const CMatrix& hamiltonian, const CVector& a1, const CVector& b1,
            const MetricSpace& s1, const MetricSpace& s2) {
  if (a1.dim() != s1.dim() || b1.dim() != s2.dim() ||
      hamiltonian.rows != s1.dim() * s2.dim() || !hamiltonian.square())
    throw Error(ErrorCode::DimMismatch, "h_value dimension mismatch");
  const CVector a2 = orthocomplement(s1, a1);
  const CVector b2 = orthocomplement(s2, b1);
  const CVector v1 = tensor_product(a1, b1);
  const CVector v2 = tensor_product(a2, b2);
  const CMatrix joint_metric = tensor_product(s1.metric(), s2.metric());
  return dirac_dot(v1, joint_metric * (hamiltonian * v2));
}

double lambda_dot(const CMatrix& hamiltonian, const SchmidtForm& form, const MetricSpace& s1,
                  const MetricSpace& s2) {
  if (form.coefficients.size() != 2)
    throw Error(ErrorCode::RankMismatch, "two Schmidt terms expected");
  const double lambda = form.coefficients[0] * form.coefficients[0];
  const double prod = lambda * (1.0 - lambda);
  if (prod <= 0.0) return 0.0;
  const cxd h = schmidt_pair_element(hamiltonian, form, s1, s2);
  return 2.0 * std::sqrt(prod) * h.imag();
}

double gamma(const CMatrix& hamiltonian, const CVector& psi, const MetricSpace& s1,
             const MetricSpace& s2) {
  const SchmidtForm form = schmidt(psi, s1, s2);
  if (form.coefficients.size() != 2)
    throw Error(ErrorCode::RankMismatch, "two Schmidt terms expected");
  const double lambda = form.coefficients[0] * form.coefficients[0];
  const double f = f_of_lambda(lambda);
  if (f == 0.0) return 0.0;
  return f * std::abs(schmidt_pair_element(hamiltonian, form, s1, s2));
}

double gamma_signed(const CMatrix& hamiltonian, const CVector& psi, const MetricSpace& s1,
                    const MetricSpace& s2) {
  const SchmidtForm form = schmidt(psi, s1, s2);
  if (form.coefficients.size() != 2)
    throw Error(ErrorCode::RankMismatch, "two Schmidt terms expected");
  const double lambda = form.coefficients[0] * form.coefficients[0];
  const double f = f_of_lambda(lambda);
  if (f == 0.0) return 0.0;
  return f * schmidt_pair_element(hamiltonian, form, s1, s2).imag();
}

HMaxResult h_max(const CMatrix& hamiltonian, const MetricSpace& s1, const MetricSpace& s2,
                 const HMaxConfig& config) {
  if (s1.dim() != 2 || s2.dim() != 2)
    throw Error(ErrorCode::DimMismatch, "h_max is defined for 2x2 factor spaces");
  if (!hamiltonian.square() || hamiltonian.rows != 4)
    throw Error(ErrorCode::DimMismatch, "h_max expects a 4x4 Hamiltonian");
  if (config.starts == 0) throw Error(ErrorCode::InvalidArgument, "at least one start required");

  const WhitenedProblem prob = whiten_problem(hamiltonian, s1, s2);
  const unsigned threads = resolve_threads(config.threads);

  auto finish = [&](double opt_value, const Point& opt_point, std::size_t opt_evals,
                    const GridSearchResult& grid) {
    HMaxResult out;
    out.starts = config.starts;
    out.evaluations = opt_evals;
    out.optimizer_value = opt_value;
    out.grid_value = grid.value;
    out.grid_evaluations = grid.evaluations;
    const Point& best = grid.value > opt_value ? grid.point : opt_point;
    out.value = std::max(grid.value, opt_value);

    const cxd ea(std::cos(best[1]), std::sin(best[1]));
    const cxd eb(std::cos(best[3]), std::sin(best[3]));
    CVector a1w{cxd(std::cos(best[0]), 0.0), ea * std::sin(best[0])};
    CVector b1w{cxd(std::cos(best[2]), 0.0), eb * std::sin(best[2])};
    out.a1 = normalize(s1, unwhiten(s1, a1w));
    out.b1 = normalize(s2, unwhiten(s2, b1w));
    return out;
  };

  // fixed per-start budget keeps the total deterministic regardless of the
  // thread partition
  const std::size_t per_start = config.max_evaluations / config.starts;
  if (per_start < 16) {
    double best_v = -1.0;
    Point best_x{};
    std::size_t evals = 0;
    for (std::size_t k = 0; k < config.starts && evals < config.max_evaluations; ++k) {
      const Point x = quasi_random_start(config.seed + k);
      const double v = objective(prob, x[0], x[1], x[2], x[3]);
      ++evals;
      if (v > best_v) {
        best_v = v;
        best_x = x;
      }
    }
    GridSearchResult no_grid;
    throw OptimizerBudgetError("evaluation budget too small for the requested starts",
                               finish(best_v, best_x, evals, no_grid));
  }

  std::vector<LocalSearchResult> results(config.starts);
  auto run_start = [&](std::size_t k) {
    results[k] = nelder_mead(prob, quasi_random_start(config.seed + k), config.tolerance,
                             per_start);
  };
  const unsigned workers = std::min<unsigned>(threads, config.starts);
  if (workers <= 1) {
    for (std::size_t k = 0; k < config.starts; ++k) run_start(k);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (std::size_t k = w; k < config.starts; k += workers) run_start(k);
      });
    for (auto& th : pool) th.join();
  }

  std::size_t opt_evals = 0;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < config.starts; ++k) {
    opt_evals += results[k].evaluations;
    if (results[k].value > results[best_index].value) best_index = k;
  }

  // polish the winner with whatever budget is left
  LocalSearchResult best = results[best_index];
  const std::size_t remaining = config.max_evaluations > opt_evals
                                    ? std::min<std::size_t>(config.max_evaluations - opt_evals, 2000)
                                    : 0;
  if (remaining >= 16) {
    const LocalSearchResult polished =
        nelder_mead(prob, best.point, config.tolerance * 1e-2, remaining);
    opt_evals += polished.evaluations;
    if (polished.value > best.value) best = polished;
  }

  const GridSearchResult grid = grid_search(prob, config.grid_points, threads);
  return finish(best.value, best.point, opt_evals, grid);
}

double lambda_closed_form(double h_max, double lambda0, double t) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0))
    throw Error(ErrorCode::DomainError, "lambda0 must lie in [0, 1]");
  const double phi0 = std::asin(std::sqrt(lambda0));
  const double s = std::sin(h_max * t + phi0);
  return s * s;
}

double gamma_bound(double lambda, double h_max) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw Error(ErrorCode::DomainError, "bound undefined at lambda in {0, 1}");
  return std::log2((1.0 - lambda) / lambda) * h_max;
}

std::vector<RateSample> trajectory(const CMatrix& hamiltonian, const CVector& psi0,
                                   const MetricSpace& s1, const MetricSpace& s2,
                                   const std::vector<double>& times, const HMaxConfig& config) {
  const HMaxResult capability = h_max(hamiltonian, s1, s2, config);
  const EvolutionResult evolution = evolve(hamiltonian, psi0, times, s1, s2);
  const MetricSpace joint = tensor_space(s1, s2);

  std::vector<RateSample> samples;
  samples.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    RateSample sample;
    sample.t = times[i];
    sample.lambda = evolution.schmidt_lambdas[i];
    sample.entropy = evolution.entropies[i];
    const CVector unit = normalize(joint, evolution.states[i]);
    sample.gamma = gamma_signed(hamiltonian, unit, s1, s2);
    // bound evaluated with lambda clamped away from the endpoints, where the
    // logarithm diverges but the rate itself vanishes
    const double clamped = std::clamp(sample.lambda, 1e-12, 1.0 - 1e-12);
    sample.bound = std::abs(gamma_bound(clamped, capability.value));
    samples.push_back(sample);
  }
  return samples;
}

} // namespace cpt
