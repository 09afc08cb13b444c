#pragma once

// Small dense complex linear algebra for one and two qubits.
//
// Everything here is fixed-size (2x2 or 4x4) and allocation free. Two-qubit
// operators use the A (x) B ordering with basis {|00>, |01>, |10>, |11>},
// i.e. row index = 2*a + b.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>

#include "xxz/errors.hpp"

namespace xxz {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNegativeEigenTol = 1e-10;

template <std::size_t N>
class Matrix {
  static_assert(N == 2 || N == 4, "only one- and two-qubit operators are supported");

 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Complex& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
  constexpr const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix adjoint() const {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  /// Entrywise complex conjugate in the standard basis.
  Matrix conjugate() const {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.a_[k] = std::conj(a_[k]);
    return r;
  }

  /// Largest entrywise modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
  friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
  friend Matrix operator*(Matrix m, Complex s) { return m *= s; }
  friend Matrix operator*(Complex s, Matrix m) { return m *= s; }
  friend Matrix operator*(Matrix m, double s) { return m *= Complex(s); }
  friend Matrix operator*(double s, Matrix m) { return m *= Complex(s); }

  friend Matrix operator*(const Matrix& l, const Matrix& r) {
    Matrix p;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex lik = l(i, k);
        if (lik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) p(i, j) += lik * r(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<Complex, N * N> a_{};
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

/// Entrywise max |l - r|.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& l, const Matrix<N>& r) {
  return (l - r).max_abs();
}

/// Tag selecting the non-validating constructors. Only for values that are
/// Hermitian (or density matrices) by construction.
struct Unchecked {};
inline constexpr Unchecked unchecked{};

template <std::size_t N>
class Hermitian {
 public:
  explicit Hermitian(const Matrix<N>& m, double tol = kHermitianTol) : m_(m) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) {
        const double d = std::abs(m(i, j) - std::conj(m(j, i)));
        if (!(d <= tol)) {
          throw ValidationError("matrix is not Hermitian: entries (" + std::to_string(i) + "," +
                                std::to_string(j) + ") and (" + std::to_string(j) + "," +
                                std::to_string(i) + ") differ from conjugate symmetry by " +
                                std::to_string(d));
        }
      }
  }
  Hermitian(const Matrix<N>& m, Unchecked) : m_(m) {}

  const Matrix<N>& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix<N> m_;
};

using HermitianMatrix4 = Hermitian<4>;
using HermitianMatrix2 = Hermitian<2>;

/// Eigenvalues in descending order; column i of `vectors` pairs with values[i].
template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};
  Matrix<N> vectors;
  int sweeps = 0;

  std::array<Complex, N> vector(std::size_t i) const {
    std::array<Complex, N> v;
    for (std::size_t k = 0; k < N; ++k) v[k] = vectors(k, i);
    return v;
  }
};

namespace detail {

template <std::size_t N>
double max_off_diagonal(const Matrix<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// One complex Jacobi rotation annihilating a(p,q). The unitary acting on
// columns (p,q) is diag(1, e^{-i alpha}) * [[c, s], [-s, c]] where
// a(p,q) = |a(p,q)| e^{i alpha}.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i alpha}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex u_pp = c;
  const Complex u_pq = s;
  const Complex u_qp = -s * std::conj(phase);
  const Complex u_qq = c * std::conj(phase);

  // A <- A U
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * u_pp + akq * u_qp;
    a(k, q) = akp * u_pq + akq * u_qq;
  }
  // A <- U^dagger A
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  // V <- V U
  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * u_pp + vkq * u_qp;
    v(k, q) = vkp * u_pq + vkq * u_qq;
  }
}

}  // namespace detail

inline constexpr double kJacobiOffDiagonalTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
///
/// Sweeps over all (p,q) pairs until the largest off-diagonal modulus drops
/// below 1e-13 or 100 sweeps have run. Eigenvectors of a degenerate
/// eigenvalue are whatever orthonormal basis of the eigenspace Jacobi lands
/// on; only spectral projections onto such a space are meaningful.
template <std::size_t N>
EigenDecomposition<N> herm_eigen(const Hermitian<N>& h) {
  Matrix<N> a = h.matrix();
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
  Matrix<N> v = Matrix<N>::identity();

  int sweep = 0;
  while (sweep < kJacobiMaxSweeps && detail::max_off_diagonal(a) >= kJacobiOffDiagonalTol) {
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
    ++sweep;
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return a(l, l).real() > a(r, r).real(); });

  EigenDecomposition<N> out;
  out.sweeps = sweep;
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < N; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

/// V diag(f(lambda)) V^dagger.
template <std::size_t N, typename F>
Matrix<N> spectral_map(const EigenDecomposition<N>& eig, F&& f) {
  Matrix<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) {
      const Complex vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < N; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

template <std::size_t N>
Matrix<N> reconstruct(const EigenDecomposition<N>& eig) {
  return spectral_map(eig, [](double x) { return x; });
}

/// Copy of m with the strictly lower triangle replaced by the conjugate of
/// the upper triangle and a real diagonal.
template <std::size_t N>
Matrix<N> hermitian_part(const Matrix<N>& m) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    r(i, i) = 0.5 * (m(i, i) + std::conj(m(i, i)));
    for (std::size_t j = i + 1; j < N; ++j) {
      r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      r(j, i) = std::conj(r(i, j));
    }
  }
  return r;
}

/// Shannon entropy (bits) of a spectrum. Values in (-1e-10, 0] count as 0;
/// anything more negative is rejected.
inline double entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p < -kNegativeEigenTol)
      throw ValidationError("negative eigenvalue " + std::to_string(p) + " in entropy argument");
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

template <std::size_t N>
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix<N>& m) : m_(Hermitian<N>(m).matrix()) {
    const Complex tr = m.trace();
    if (!(std::abs(tr - 1.0) <= kTraceTol))
      throw ValidationError("density matrix trace is " + std::to_string(tr.real()) + "+" +
                            std::to_string(tr.imag()) + "i, expected 1");
    const auto eig = herm_eigen(Hermitian<N>(m_, unchecked));
    if (eig.values[N - 1] < -kNegativeEigenTol)
      throw ValidationError("density matrix has negative eigenvalue " +
                            std::to_string(eig.values[N - 1]));
  }
  DensityMatrix(const Matrix<N>& m, Unchecked) : m_(m) {}

  const Matrix<N>& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Hermitian<N> hermitian() const { return Hermitian<N>(m_, unchecked); }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix<N>::identity() * (1.0 / static_cast<double>(N)), unchecked);
  }

  /// |psi><psi| for a normalized vector.
  static DensityMatrix pure(const std::array<Complex, N>& psi) {
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(m);
  }

 private:
  Matrix<N> m_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix4 = DensityMatrix<4>;

/// Von Neumann entropy in bits, from the Jacobi spectrum.
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
  const auto eig = herm_eigen(rho.hermitian());
  return entropy_bits(eig.values);
}

enum class Subsystem { A, B };

inline Subsystem other(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }

namespace detail {

inline Matrix2 partial_trace_raw(const Matrix4& m, Subsystem keep) {
  Matrix2 r;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          r(x, y) += m(2 * x + k, 2 * y + k);
        else
          r(x, y) += m(2 * k + x, 2 * k + y);
      }
  return r;
}

}  // namespace detail

/// Reduced state of one qubit of a two-qubit density matrix.
inline DensityMatrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep) {
  return DensityMatrix2(detail::partial_trace_raw(rho.matrix(), keep), unchecked);
}

/// Kronecker product l (x) r in the |ab> ordering.
inline Matrix4 tensor_product(const Matrix2& l, const Matrix2& r) {
  Matrix4 m;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) m(2 * a + c, 2 * b + d) = l(a, b) * r(c, d);
  return m;
}

namespace pauli {

inline Matrix2 identity() { return Matrix2::identity(); }

inline Matrix2 x() {
  Matrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix2 y() {
  Matrix2 m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Matrix2 z() { return Matrix2::diagonal({1.0, -1.0}); }

}  // namespace pauli

}  // namespace xxz
