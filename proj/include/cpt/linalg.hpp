#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cpt/errors.hpp"

namespace cpt {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major. Sized for the small systems this library
/// works with (dimensions up to a few dozen); everything is O(n^3) direct.
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cxd> a;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, cxd(0.0, 0.0)) {}
  CMatrix(std::size_t r, std::size_t c, std::initializer_list<cxd> entries);

  static CMatrix identity(std::size_t n);

  cxd& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool square() const { return rows == cols; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cxd z);
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(cxd z, CMatrix m);

/// Dense complex vector.
struct CVector {
  std::vector<cxd> v;

  CVector() = default;
  explicit CVector(std::size_t n) : v(n, cxd(0.0, 0.0)) {}
  CVector(std::initializer_list<cxd> entries) : v(entries) {}

  static CVector unit(std::size_t n, std::size_t k);

  std::size_t dim() const { return v.size(); }
  cxd& operator[](std::size_t i) { return v[i]; }
  const cxd& operator[](std::size_t i) const { return v[i]; }
};

CVector operator*(const CMatrix& m, const CVector& x);
CVector operator*(cxd z, CVector x);
CVector operator+(CVector lhs, const CVector& rhs);
CVector operator-(CVector lhs, const CVector& rhs);

CMatrix adjoint(const CMatrix& m);
CMatrix transpose(const CMatrix& m);
CMatrix conjugate(const CMatrix& m);
CVector conjugate(const CVector& x);

/// sum_i conj(u_i) v_i
cxd dirac_dot(const CVector& u, const CVector& v);
/// sum_i u_i v_i (no conjugation)
cxd bilinear_dot(const CVector& u, const CVector& v);
double dirac_norm(const CVector& x);

CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
CVector tensor_product(const CVector& x, const CVector& y);

double max_abs(const CMatrix& m);
double max_abs(const CVector& x);
double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs);
double max_abs_diff(const CVector& lhs, const CVector& rhs);
double frobenius_norm(const CMatrix& m);
cxd trace(const CMatrix& m);
bool all_finite(const CMatrix& m);
bool all_finite(const CVector& x);

/// Result of a Hermitian eigendecomposition: A = V diag(eigenvalues) V^dag,
/// eigenvalues ascending, eigenvector columns Dirac-orthonormal.
struct HermEig {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization. Throws NotHermitian if max|A - A^dag| > 1e-12,
/// NoConvergence if the sweep cap is exceeded.
HermEig eig_hermitian(const CMatrix& m);

/// Hermitian positive-definite square root. Throws NotPositiveDefinite if any
/// eigenvalue <= 1e-12.
CMatrix sqrt_hpd(const CMatrix& m);

/// Matrix exponential by scaling-and-squaring with a truncated Taylor series.
/// Throws Overflow when the scaling depth cap is exceeded.
CMatrix expm(const CMatrix& m);

/// A = U diag(sigma) V^dag with sigma descending and U, V square unitary.
/// Computed from the Hermitian eigenproblem of [[0, A], [A^dag, 0]], so no
/// squaring of the condition number.
struct Svd {
  std::vector<double> sigma;
  CMatrix u;
  CMatrix v;
};

Svd svd(const CMatrix& m);

} // namespace cpt
