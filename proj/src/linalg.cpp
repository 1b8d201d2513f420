#include "cpt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cpt {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BasisNotOrthonormal: return "BasisNotOrthonormal";
    case ErrorCode::BrokenPTPhase: return "BrokenPTPhase";
    case ErrorCode::UnsupportedAsymmetric: return "UnsupportedAsymmetric";
    case ErrorCode::NonPositiveMetric: return "NonPositiveMetric";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::UnphysicalState: return "UnphysicalState";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OptimizerBudgetExceeded: return "OptimizerBudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

CMatrix::CMatrix(std::size_t r, std::size_t c, std::initializer_list<cxd> entries)
    : rows(r), cols(c), a(entries) {
  if (a.size() != r * c) throw Error(ErrorCode::DimMismatch, "initializer size != rows*cols");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows != other.rows || cols != other.cols)
    throw Error(ErrorCode::DimMismatch, "matrix addition shape mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += other.a[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows != other.rows || cols != other.cols)
    throw Error(ErrorCode::DimMismatch, "matrix subtraction shape mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= other.a[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cxd z) {
  for (auto& e : a) e *= z;
  return *this;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { lhs += rhs; return lhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { lhs -= rhs; return lhs; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols != rhs.rows) throw Error(ErrorCode::DimMismatch, "matrix product shape mismatch");
  CMatrix out(lhs.rows, rhs.cols);
  for (std::size_t i = 0; i < lhs.rows; ++i) {
    for (std::size_t k = 0; k < lhs.cols; ++k) {
      const cxd lik = lhs(i, k);
      if (lik == cxd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols; ++j) out(i, j) += lik * rhs(k, j);
    }
  }
  return out;
}

CMatrix operator*(cxd z, CMatrix m) { m *= z; return m; }

CVector CVector::unit(std::size_t n, std::size_t k) {
  CVector x(n);
  x[k] = 1.0;
  return x;
}

CVector operator*(const CMatrix& m, const CVector& x) {
  if (m.cols != x.dim()) throw Error(ErrorCode::DimMismatch, "matrix-vector shape mismatch");
  CVector out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    cxd acc(0.0, 0.0);
    for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

CVector operator*(cxd z, CVector x) {
  for (auto& e : x.v) e *= z;
  return x;
}

CVector operator+(CVector lhs, const CVector& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::DimMismatch, "vector addition shape mismatch");
  for (std::size_t i = 0; i < lhs.dim(); ++i) lhs[i] += rhs[i];
  return lhs;
}

CVector operator-(CVector lhs, const CVector& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::DimMismatch, "vector subtraction shape mismatch");
  for (std::size_t i = 0; i < lhs.dim(); ++i) lhs[i] -= rhs[i];
  return lhs;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  return out;
}

CMatrix conjugate(const CMatrix& m) {
  CMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = std::conj(m.a[i]);
  return out;
}

CVector conjugate(const CVector& x) {
  CVector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = std::conj(x[i]);
  return out;
}

cxd dirac_dot(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimMismatch, "dot product shape mismatch");
  cxd acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

cxd bilinear_dot(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimMismatch, "dot product shape mismatch");
  cxd acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.dim(); ++i) acc += u[i] * v[i];
  return acc;
}

double dirac_norm(const CVector& x) {
  double acc = 0.0;
  for (const auto& e : x.v) acc += std::norm(e);
  return std::sqrt(acc);
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      const cxd aij = a(i, j);
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
    }
  return out;
}

CVector tensor_product(const CVector& x, const CVector& y) {
  CVector out(x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < y.dim(); ++j) out[i * y.dim() + j] = x[i] * y[j];
  return out;
}

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (const auto& e : m.a) best = std::max(best, std::abs(e));
  return best;
}

double max_abs(const CVector& x) {
  double best = 0.0;
  for (const auto& e : x.v) best = std::max(best, std::abs(e));
  return best;
}

double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows != rhs.rows || lhs.cols != rhs.cols)
    throw Error(ErrorCode::DimMismatch, "matrix comparison shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < lhs.a.size(); ++i)
    best = std::max(best, std::abs(lhs.a[i] - rhs.a[i]));
  return best;
}

double max_abs_diff(const CVector& lhs, const CVector& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::DimMismatch, "vector comparison shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    best = std::max(best, std::abs(lhs[i] - rhs[i]));
  return best;
}

double frobenius_norm(const CMatrix& m) {
  double acc = 0.0;
  for (const auto& e : m.a) acc += std::norm(e);
  return std::sqrt(acc);
}

cxd trace(const CMatrix& m) {
  cxd acc(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(m.rows, m.cols); ++i) acc += m(i, i);
  return acc;
}

bool all_finite(const CMatrix& m) {
  for (const auto& e : m.a)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

bool all_finite(const CVector& x) {
  for (const auto& e : x.v)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

namespace {

double off_diagonal_frobenius(const CMatrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (i != j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

// Rotate rows/columns p < q of A in place with the unitary that annihilates
// A(p,q), and accumulate the rotation into V.
void jacobi_rotate(CMatrix& m, CMatrix& vecs, std::size_t p, std::size_t q) {
  const cxd apq = m(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const cxd phase = apq / mag;

  const double tau = (aqq - app) / (2.0 * mag);
  const double tsign = tau >= 0.0 ? 1.0 : -1.0;
  const double t = tsign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cxd s = phase * (t * c);

  const std::size_t n = m.rows;
  for (std::size_t k = 0; k < n; ++k) {
    const cxd mkp = m(k, p);
    const cxd mkq = m(k, q);
    m(k, p) = c * mkp - std::conj(s) * mkq;
    m(k, q) = s * mkp + c * mkq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cxd mpk = m(p, k);
    const cxd mqk = m(q, k);
    m(p, k) = c * mpk - s * mqk;
    m(q, k) = std::conj(s) * mpk + c * mqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cxd vkp = vecs(k, p);
    const cxd vkq = vecs(k, q);
    vecs(k, p) = c * vkp - std::conj(s) * vkq;
    vecs(k, q) = s * vkp + c * vkq;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = cxd(m(p, p).real(), 0.0);
  m(q, q) = cxd(m(q, q).real(), 0.0);
}

// Global phase of a column: largest-magnitude entry made real nonnegative,
// ties broken by lowest index.
cxd column_phase_factor(const CMatrix& m, std::size_t col) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double mag = std::abs(m(i, col));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return cxd(1.0, 0.0);
  const cxd pivot = m(best, col);
  return std::conj(pivot) / std::abs(pivot);
}

} // namespace

HermEig eig_hermitian(const CMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimMismatch, "eig_hermitian needs a square matrix");
  if (max_abs_diff(m, adjoint(m)) > 1e-12)
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within 1e-12");

  const std::size_t n = m.rows;
  CMatrix work = m;
  // symmetrize so roundoff in the input cannot bias the sweeps
  for (std::size_t i = 0; i < n; ++i) {
    work(i, i) = cxd(work(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cxd avg = 0.5 * (work(i, j) + std::conj(work(j, i)));
      work(i, j) = avg;
      work(j, i) = std::conj(avg);
    }
  }

  CMatrix vecs = CMatrix::identity(n);
  const double scale = std::max(frobenius_norm(work), 1e-300);
  const double tol = 1e-14 * scale;
  const int max_sweeps = 100;

  int sweep = 0;
  while (off_diagonal_frobenius(work) > tol) {
    if (++sweep > max_sweeps)
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap exceeded");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(work(p, q)) > tol / (double(n) * double(n)))
          jacobi_rotate(work, vecs, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = work(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t lhs, std::size_t rhs) { return diag[lhs] < diag[rhs]; });

  HermEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vecs(i, order[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cxd ph = column_phase_factor(out.eigenvectors, k);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) *= ph;
  }
  return out;
}

CMatrix sqrt_hpd(const CMatrix& m) {
  const HermEig eig = eig_hermitian(m);
  for (double lambda : eig.eigenvalues)
    if (lambda <= 1e-12)
      throw Error(ErrorCode::NotPositiveDefinite, "eigenvalue <= 1e-12 in sqrt_hpd");

  const std::size_t n = m.rows;
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cxd acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.eigenvectors(i, k) * std::sqrt(eig.eigenvalues[k]) *
               std::conj(eig.eigenvectors(j, k));
      out(i, j) = acc;
    }
  // exact Hermitian symmetry of the result
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = cxd(out(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cxd avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

CMatrix expm(const CMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimMismatch, "expm needs a square matrix");
  const std::size_t n = m.rows;

  double nrm = frobenius_norm(m);
  int scalings = 0;
  while (!(nrm <= 0.5)) {
    nrm *= 0.5;
    if (++scalings > 64) throw Error(ErrorCode::Overflow, "expm argument norm too large");
  }

  CMatrix scaled = m;
  scaled *= cxd(std::ldexp(1.0, -scalings), 0.0);

  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = term * scaled;
    term *= cxd(1.0 / double(k), 0.0);
    sum += term;
    if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  for (int k = 0; k < scalings; ++k) sum = sum * sum;
  return sum;
}

Svd svd(const CMatrix& m) {
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  const std::size_t k = std::min(rows, cols);
  const std::size_t n = rows + cols;

  // Jordan-Wielandt embedding: eigenpairs of [[0, A], [A^dag, 0]] are
  // (+sigma, (u, v)/sqrt(2)) and (-sigma, (u, -v)/sqrt(2)).
  CMatrix big(n, n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      big(i, rows + j) = m(i, j);
      big(rows + j, i) = std::conj(m(i, j));
    }
  const HermEig eig = eig_hermitian(big);

  Svd out;
  out.sigma.assign(k, 0.0);
  out.u = CMatrix(rows, rows);
  out.v = CMatrix(cols, cols);

  const double sigma_tol = 1e-12 * std::max(1.0, std::abs(eig.eigenvalues.back()));

  std::vector<CVector> us, vs;
  us.reserve(k);
  vs.reserve(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    const std::size_t col = n - 1 - idx; // descending eigenvalues
    const double sigma = std::max(eig.eigenvalues[col], 0.0);
    out.sigma[idx] = sigma;
    if (sigma > sigma_tol) {
      CVector u(rows), v(cols);
      for (std::size_t i = 0; i < rows; ++i) u[i] = eig.eigenvectors(i, col);
      for (std::size_t j = 0; j < cols; ++j) v[j] = eig.eigenvectors(rows + j, col);
      const double un = dirac_norm(u);
      const double vn = dirac_norm(v);
      for (auto& e : u.v) e /= un;
      for (auto& e : v.v) e /= vn;
      us.push_back(u);
      vs.push_back(v);
    } else {
      us.emplace_back();
      vs.emplace_back();
    }
  }

  // complete null-space vectors by Gram-Schmidt against the ones found
  auto complete = [](std::vector<CVector>& set, std::size_t dim) {
    for (auto& vec : set) {
      if (vec.dim() != 0) continue;
      for (std::size_t cand = 0; cand < dim; ++cand) {
        CVector trial = CVector::unit(dim, cand);
        for (const auto& prev : set) {
          if (prev.dim() == 0) continue;
          const cxd overlap = dirac_dot(prev, trial);
          for (std::size_t i = 0; i < dim; ++i) trial[i] -= overlap * prev[i];
        }
        const double nrm = dirac_norm(trial);
        if (nrm > 1e-6) {
          for (auto& e : trial.v) e /= nrm;
          vec = trial;
          break;
        }
      }
      if (vec.dim() == 0)
        throw Error(ErrorCode::NoConvergence, "svd null-space completion failed");
    }
  };
  complete(us, rows);
  complete(vs, cols);

  // deterministic phases: largest entry of u real nonnegative, v follows so
  // that u sigma v^dag reconstructs A unchanged
  for (std::size_t idx = 0; idx < k; ++idx) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double mag = std::abs(us[idx][i]);
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag > 0.0) {
      const cxd ph = std::conj(us[idx][best]) / std::abs(us[idx][best]);
      for (auto& e : us[idx].v) e *= ph;
      for (auto& e : vs[idx].v) e *= ph;
    }
  }

  for (std::size_t idx = 0; idx < k; ++idx) {
    for (std::size_t i = 0; i < rows; ++i) out.u(i, idx) = us[idx][i];
    for (std::size_t j = 0; j < cols; ++j) out.v(j, idx) = vs[idx][j];
  }
  // if rows != cols, pad the square factors with an orthonormal completion
  if (rows > k) {
    std::vector<CVector> full = us;
    for (std::size_t extra = k; extra < rows; ++extra) full.emplace_back();
    complete(full, rows);
    for (std::size_t idx = k; idx < rows; ++idx)
      for (std::size_t i = 0; i < rows; ++i) out.u(i, idx) = full[idx][i];
  }
  if (cols > k) {
    std::vector<CVector> full = vs;
    for (std::size_t extra = k; extra < cols; ++extra) full.emplace_back();
    complete(full, cols);
    for (std::size_t idx = k; idx < cols; ++idx)
      for (std::size_t j = 0; j < cols; ++j) out.v(j, idx) = full[idx][j];
  }
  return out;
}

} // namespace cpt
