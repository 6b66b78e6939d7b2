// Finite-difference oracle for the extension spectra: discretize -i d/dphi
// on the cone chart with the quasi-periodic coupling psi(phi + pi) =
// e^{i theta} psi(phi) (the phase applied on the seam couplings only), then
// locate the discrete operator's eigenvalue nearest a probe value by
// shift-inverted inverse iteration. The matrix is pentadiagonal except for
// the seam corners, so solves use a banded LU plus a rank-4 Woodbury
// correction. Everything here is test-support code, deliberately
// independent of the analytic spectrum formulas it validates.
#pragma once

#include <complex>
#include <lapacke.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace fdoracle {

using Complex = std::complex<double>;

// std::complex<double> is layout-compatible with LAPACK's complex double
inline lapack_complex_double* lp(Complex* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}
inline const lapack_complex_double* lp(const Complex* p) {
  return reinterpret_cast<const lapack_complex_double*>(p);
}

struct FdOperator {
  int n = 0;
  double h = 0;
  Complex seam;  // e^{i theta}
  // stencil weights for neighbors at distance 1 and 2 (4th-order central)
  Complex w1, w2;

  std::vector<Complex> apply(const std::vector<Complex>& v) const {
    std::vector<Complex> out(n, Complex(0));
    for (int j = 0; j < n; ++j) {
      Complex acc(0);
      for (int d = 1; d <= 2; ++d) {
        const Complex w = (d == 1) ? w1 : w2;
        int jp = j + d;
        Complex fwd = w;
        if (jp >= n) {
          jp -= n;
          fwd *= seam;
        }
        int jm = j - d;
        Complex bwd = std::conj(w);
        if (jm < 0) {
          jm += n;
          bwd *= std::conj(seam);
        }
        acc += fwd * v[jp] + bwd * v[jm];
      }
      out[j] = acc;
    }
    return out;
  }

  // dense column-major copy, for validating the banded solver on small n
  std::vector<Complex> dense() const {
    std::vector<Complex> a(std::size_t(n) * n, Complex(0));
    for (int j = 0; j < n; ++j)
      for (int d = 1; d <= 2; ++d) {
        const Complex w = (d == 1) ? w1 : w2;
        int jp = j + d;
        Complex fwd = w;
        if (jp >= n) {
          jp -= n;
          fwd *= seam;
        }
        a[std::size_t(jp) * n + j] += fwd;              // A(j, jp)
        a[std::size_t(j) * n + jp] += std::conj(fwd);   // A(jp, j)
      }
    return a;
  }
};

inline FdOperator fd_operator(int n, double theta) {
  if (n < 8) throw std::invalid_argument("fd grid too small");
  FdOperator op;
  op.n = n;
  op.h = std::numbers::pi / n;
  op.seam = std::polar(1.0, theta);
  const Complex mi(0.0, -1.0);
  op.w1 = mi * (8.0 / (12.0 * op.h));
  op.w2 = mi * (-1.0 / (12.0 * op.h));
  return op;
}

/// Solves (A - shift I) x = b through a banded LU of the seam-free part and
/// a Woodbury correction for the four corner couplings.
class ShiftInvertSolver {
 public:
  ShiftInvertSolver(const FdOperator& op, double shift) : op_(op), n_(op.n) {
    factor_banded(shift);
    build_corners();
    precompute_woodbury();
  }

  std::vector<Complex> solve(std::vector<Complex> b) const {
    banded_solve(b);
    std::array<Complex, 4> w{};
    for (int r = 0; r < 4; ++r) w[r] = b[idx(r)];
    std::array<Complex, 4> t{};
    for (int r = 0; r < 4; ++r) {
      Complex acc(0);
      for (int c = 0; c < 4; ++c) acc += s_inv_[r * 4 + c] * w[c];
      t[r] = acc;
    }
    for (int i = 0; i < n_; ++i) {
      Complex acc(0);
      for (int c = 0; c < 4; ++c) acc += z_[std::size_t(c) * n_ + i] * t[c];
      b[i] -= acc;
    }
    return b;
  }

 private:
  static constexpr int kl_ = 2, ku_ = 2, ldab_ = 2 * kl_ + ku_ + 1;

  int idx(int r) const { return r < 2 ? r : n_ - 4 + r; }  // {0, 1, n-2, n-1}

  void factor_banded(double shift) {
    // band storage: AB(kl + ku + row - col, col) = A(row, col)
    ab_.assign(std::size_t(ldab_) * n_, Complex(0));
    for (int col = 0; col < n_; ++col) {
      for (int row = std::max(0, col - ku_); row <= std::min(n_ - 1, col + kl_); ++row) {
        Complex v(0);
        if (row == col) v = -shift;
        else if (col == row + 1) v = op_.w1;
        else if (col == row + 2) v = op_.w2;
        else if (col == row - 1) v = std::conj(op_.w1);
        else if (col == row - 2) v = std::conj(op_.w2);
        ab_[std::size_t(col) * ldab_ + (kl_ + ku_ + row - col)] = v;
      }
    }
    ipiv_.assign(n_, 0);
    const int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, lp(ab_.data()), ldab_,
                                    ipiv_.data());
    if (info != 0) throw std::runtime_error("zgbtrf failed: info=" + std::to_string(info));
  }

  void banded_solve(std::vector<Complex>& b) const {
    const int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, lp(ab_.data()), ldab_,
                                    ipiv_.data(), lp(b.data()), n_);
    if (info != 0) throw std::runtime_error("zgbtrs failed: info=" + std::to_string(info));
  }

  void build_corners() {
    // corner entries A(i, j) for i, j in {0, 1, n-2, n-1} arising from the seam
    m4_.fill(Complex(0));
    auto set = [&](int i, int j, Complex v) {
      int r = -1, c = -1;
      for (int k = 0; k < 4; ++k) {
        if (idx(k) == i) r = k;
        if (idx(k) == j) c = k;
      }
      if (r >= 0 && c >= 0) m4_[r * 4 + c] += v;
    };
    // positive-direction wraps: rows n-2, n-1 couple to columns 0, 1
    set(n_ - 1, 0, op_.w1 * op_.seam);
    set(n_ - 2, 0, op_.w2 * op_.seam);
    set(n_ - 1, 1, op_.w2 * op_.seam);
    // Hermitian mirrors
    set(0, n_ - 1, std::conj(op_.w1 * op_.seam));
    set(0, n_ - 2, std::conj(op_.w2 * op_.seam));
    set(1, n_ - 1, std::conj(op_.w2 * op_.seam));
  }

  void precompute_woodbury() {
    // Z = K^{-1} U with U = [e_idx(0) .. e_idx(3)]
    z_.assign(std::size_t(4) * n_, Complex(0));
    for (int c = 0; c < 4; ++c) {
      std::vector<Complex> col(n_, Complex(0));
      col[idx(c)] = Complex(1.0);
      banded_solve(col);
      std::copy(col.begin(), col.end(), z_.begin() + std::size_t(c) * n_);
    }
    // S = M4^{-1} + U^H Z
    std::array<Complex, 16> m_inv = invert4(m4_);
    std::array<Complex, 16> s{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) s[r * 4 + c] = m_inv[r * 4 + c] + z_[std::size_t(c) * n_ + idx(r)];
    s_inv_ = invert4(s);
  }

  static std::array<Complex, 16> invert4(std::array<Complex, 16> m) {
    std::array<Complex, 16> inv{};
    for (int i = 0; i < 4; ++i) inv[i * 4 + i] = Complex(1.0);
    for (int col = 0; col < 4; ++col) {  // Gauss-Jordan with partial pivoting
      int pivot = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::abs(m[r * 4 + col]) > std::abs(m[pivot * 4 + col])) pivot = r;
      if (std::abs(m[pivot * 4 + col]) < 1e-300)
        throw std::runtime_error("singular corner block");
      if (pivot != col)
        for (int c = 0; c < 4; ++c) {
          std::swap(m[pivot * 4 + c], m[col * 4 + c]);
          std::swap(inv[pivot * 4 + c], inv[col * 4 + c]);
        }
      const Complex d = m[col * 4 + col];
      for (int c = 0; c < 4; ++c) {
        m[col * 4 + c] /= d;
        inv[col * 4 + c] /= d;
      }
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const Complex f = m[r * 4 + col];
        if (f == Complex(0)) continue;
        for (int c = 0; c < 4; ++c) {
          m[r * 4 + c] -= f * m[col * 4 + c];
          inv[r * 4 + c] -= f * inv[col * 4 + c];
        }
      }
    }
    return inv;
  }

  const FdOperator& op_;
  int n_;
  std::vector<Complex> ab_;
  std::vector<lapack_int> ipiv_;
  std::array<Complex, 16> m4_{};
  std::array<Complex, 16> s_inv_{};
  std::vector<Complex> z_;
};

struct EigenEstimate {
  double value = 0;
  double residual = 0;
  int iterations = 0;
};

/// Eigenvalue of the discrete operator nearest `shift`, by inverse
/// iteration with Rayleigh-quotient readout.
inline EigenEstimate nearest_eigenvalue(const FdOperator& op, double shift,
                                        std::uint64_t seed = 1234567) {
  const ShiftInvertSolver solver(op, shift);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> v(op.n);
  for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
  auto normalize = [](std::vector<Complex>& u) {
    double s = 0;
    for (const auto& x : u) s += std::norm(x);
    s = std::sqrt(s);
    for (auto& x : u) x /= s;
  };
  normalize(v);
  EigenEstimate est;
  for (int it = 1; it <= 60; ++it) {
    v = solver.solve(std::move(v));
    normalize(v);
    const auto av = op.apply(v);
    Complex rho(0);
    for (int i = 0; i < op.n; ++i) rho += std::conj(v[i]) * av[i];
    double res = 0;
    for (int i = 0; i < op.n; ++i) res += std::norm(av[i] - rho * v[i]);
    est.value = rho.real();
    est.residual = std::sqrt(res);
    est.iterations = it;
    if (est.residual <= 1e-9) break;
  }
  return est;
}

}  // namespace fdoracle
