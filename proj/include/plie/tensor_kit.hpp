#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plie/errors.hpp"

namespace plie {

using cplx = std::complex<double>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

inline void require_size(int size, const char* what) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be >= 1");
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(cplx(m(i, j))));
  return r;
}

inline CMat identity(int size) { return CMat::Identity(size, size); }

/// Four-index array T[i,j,k,l]: (i,j) is the leg-1 matrix index pair, (k,l) the leg-2 pair.
/// A Tensor4 of dims (p,q,r,s) is an element of Mat(p×q) ⊗ Mat(r×s).
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int p, int q, int r, int s) : dims_{p, q, r, s}, data_(static_cast<std::size_t>(p) * q * r * s) {
    for (int d : dims_) require_size(d, "Tensor4 dimension");
  }

  const std::array<int, 4>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }

  cplx& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  const cplx& operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }

  const std::vector<cplx>& entries() const noexcept { return data_; }

  /// Kronecker layout: row i·r+k, column j·s+l.
  CMat flatten() const {
    const auto [p, q, r, s] = dims_;
    CMat m(p * r, q * s);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j)
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < s; ++l) m(i * r + k, j * s + l) = (*this)(i, j, k, l);
    return m;
  }

  static Tensor4 unflatten(const CMat& m, int p, int q, int r, int s) {
    if (m.rows() != p * r || m.cols() != q * s)
      throw Error(ErrorCode::DimensionMismatch, "flattened matrix does not match Tensor4 dims");
    Tensor4 t(p, q, r, s);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j)
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < s; ++l) t(i, j, k, l) = m(i * r + k, j * s + l);
    return t;
  }

  Tensor4& operator+=(const Tensor4& o) {
    check_same(o);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    check_same(o);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
    return *this;
  }
  Tensor4& operator*=(cplx c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(cplx c, Tensor4 a) { return a *= c; }
  friend Tensor4 operator-(Tensor4 a) { return a *= cplx(-1.0); }

  friend bool operator==(const Tensor4& a, const Tensor4& b) { return a.dims_ == b.dims_ && a.data_ == b.data_; }

  double max_abs() const {
    double r = 0.0;
    for (const auto& x : data_) r = std::max(r, std::abs(x));
    return r;
  }

 private:
  std::size_t offset(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dims_[1] + j) * dims_[2] + k) * dims_[3] + l;
  }
  void check_same(const Tensor4& o) const {
    if (o.dims_ != dims_) throw Error(ErrorCode::DimensionMismatch, "Tensor4 dims differ");
  }

  std::array<int, 4> dims_{0, 0, 0, 0};
  std::vector<cplx> data_;
};

/// X ⊗ Y.
inline Tensor4 kron(const CMat& x, const CMat& y) {
  Tensor4 t(static_cast<int>(x.rows()), static_cast<int>(x.cols()), static_cast<int>(y.rows()),
            static_cast<int>(y.cols()));
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      for (int k = 0; k < y.rows(); ++k)
        for (int l = 0; l < y.cols(); ++l) t(i, j, k, l) = x(i, j) * y(k, l);
  return t;
}

/// M_1 T: multiply leg 1 from the left.
inline Tensor4 leg1_left(const CMat& m, const Tensor4& t) {
  const auto [p, q, r, s] = t.dims();
  if (m.cols() != p) throw Error(ErrorCode::DimensionMismatch, "leg1_left");
  Tensor4 out(static_cast<int>(m.rows()), q, r, s);
  for (int i = 0; i < m.rows(); ++i)
    for (int a = 0; a < p; ++a) {
      const cplx c = m(i, a);
      if (c == cplx(0.0)) continue;
      for (int j = 0; j < q; ++j)
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < s; ++l) out(i, j, k, l) += c * t(a, j, k, l);
    }
  return out;
}

/// T M_1: multiply leg 1 from the right.
inline Tensor4 leg1_right(const Tensor4& t, const CMat& m) {
  const auto [p, q, r, s] = t.dims();
  if (m.rows() != q) throw Error(ErrorCode::DimensionMismatch, "leg1_right");
  Tensor4 out(p, static_cast<int>(m.cols()), r, s);
  for (int i = 0; i < p; ++i)
    for (int a = 0; a < q; ++a)
      for (int j = 0; j < m.cols(); ++j) {
        const cplx c = m(a, j);
        if (c == cplx(0.0)) continue;
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < s; ++l) out(i, j, k, l) += t(i, a, k, l) * c;
      }
  return out;
}

/// M_2 T: multiply leg 2 from the left.
inline Tensor4 leg2_left(const CMat& m, const Tensor4& t) {
  const auto [p, q, r, s] = t.dims();
  if (m.cols() != r) throw Error(ErrorCode::DimensionMismatch, "leg2_left");
  Tensor4 out(p, q, static_cast<int>(m.rows()), s);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < m.rows(); ++k)
        for (int a = 0; a < r; ++a) {
          const cplx c = m(k, a);
          if (c == cplx(0.0)) continue;
          for (int l = 0; l < s; ++l) out(i, j, k, l) += c * t(i, j, a, l);
        }
  return out;
}

/// T M_2: multiply leg 2 from the right.
inline Tensor4 leg2_right(const Tensor4& t, const CMat& m) {
  const auto [p, q, r, s] = t.dims();
  if (m.rows() != s) throw Error(ErrorCode::DimensionMismatch, "leg2_right");
  Tensor4 out(p, q, r, static_cast<int>(m.cols()));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < r; ++k)
        for (int a = 0; a < s; ++a)
          for (int l = 0; l < m.cols(); ++l) out(i, j, k, l) += t(i, j, k, a) * m(a, l);
  return out;
}

/// Exchange the two tensor factors: result[k,l,i,j] = t[i,j,k,l].
inline Tensor4 swap_legs(const Tensor4& t) {
  const auto [p, q, r, s] = t.dims();
  Tensor4 out(r, s, p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < s; ++l) out(k, l, i, j) = t(i, j, k, l);
  return out;
}

/// Product of square tensors as operators on ℂ^p ⊗ ℂ^r.
inline Tensor4 compose(const Tensor4& t, const Tensor4& u) {
  const auto [p, q, r, s] = t.dims();
  const auto& ud = u.dims();
  if (ud[0] != q || ud[2] != s) throw Error(ErrorCode::DimensionMismatch, "compose");
  Tensor4 out(p, ud[1], r, ud[3]);
  for (int i = 0; i < p; ++i)
    for (int m = 0; m < q; ++m)
      for (int k = 0; k < r; ++k)
        for (int n = 0; n < s; ++n) {
          const cplx c = t(i, m, k, n);
          if (c == cplx(0.0)) continue;
          for (int j = 0; j < ud[1]; ++j)
            for (int l = 0; l < ud[3]; ++l) out(i, j, k, l) += c * u(m, j, n, l);
        }
  return out;
}

/// Action on a two-leg vector v (indices [j,l]): (T v)[i,k] = Σ T[i,j,k,l] v[j,l].
inline CMat act(const Tensor4& t, const CMat& v) {
  const auto [p, q, r, s] = t.dims();
  if (v.rows() != q || v.cols() != s) throw Error(ErrorCode::DimensionMismatch, "act");
  CMat out = CMat::Zero(p, r);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < s; ++l) out(i, k) += t(i, j, k, l) * v(j, l);
  return out;
}

/// E_jk(ℓ) with 1-based (j,k).
inline CMat elementary(int size, int j, int k) {
  require_size(size, "size");
  if (j < 1 || j > size || k < 1 || k > size)
    throw Error(ErrorCode::IndexOutOfRange, "elementary matrix index out of range");
  CMat e = CMat::Zero(size, size);
  e(j - 1, k - 1) = 1.0;
  return e;
}

/// Rectangular elementary matrix E_ia^{rows×cols}, 1-based.
inline CMat elementary(int rows, int cols, int i, int a) {
  require_size(rows, "rows");
  require_size(cols, "cols");
  if (i < 1 || i > rows || a < 1 || a > cols)
    throw Error(ErrorCode::IndexOutOfRange, "elementary matrix index out of range");
  CMat e = CMat::Zero(rows, cols);
  e(i - 1, a - 1) = 1.0;
  return e;
}

/// Flip tensor I^ℓ = Σ E_jk ⊗ E_kj.
inline Tensor4 casimir(int size) {
  require_size(size, "size");
  Tensor4 t(size, size, size, size);
  for (int j = 0; j < size; ++j)
    for (int k = 0; k < size; ++k) t(j, k, k, j) = 1.0;
  return t;
}

/// Drinfeld–Jimbo r-matrix ½ Σ_{j<k} E_jk ∧ E_kj.
inline Tensor4 dj_r(int size) {
  require_size(size, "size");
  Tensor4 t(size, size, size, size);
  for (int j = 0; j < size; ++j)
    for (int k = j + 1; k < size; ++k) {
      t(j, k, k, j) = 0.5;
      t(k, j, j, k) = -0.5;
    }
  return t;
}

/// r^ℓ ± ½ I^ℓ; `sign` is +1 or -1.
inline Tensor4 r_pm(int size, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "r_pm sign must be +1 or -1");
  Tensor4 t = dj_r(size);
  for (int j = 0; j < size; ++j)
    for (int k = 0; k < size; ++k) t(j, k, k, j) += 0.5 * sign;
  return t;
}

/// C₁₂^{n×d} = Σ_{i,α} E_iα^{n×d} ⊗ E_αi^{d×n}, dims (n,d,d,n).
inline Tensor4 c12(int n, int d) {
  require_size(n, "n");
  require_size(d, "d");
  Tensor4 t(n, d, d, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) t(i, a, a, i) = 1.0;
  return t;
}

/// Anti-diagonal involution Σ_i E_{i,ℓ+1-i}.
inline CMat eta(int size) {
  require_size(size, "size");
  CMat e = CMat::Zero(size, size);
  for (int i = 0; i < size; ++i) e(i, size - 1 - i) = 1.0;
  return e;
}

}  // namespace plie
