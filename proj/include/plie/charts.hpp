#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plie/tensor_kit.hpp"

namespace plie {

/// A point (A, B) of S(n,d) = Mat(n×d) × Mat(d×n).
struct SPoint {
  CMat A;
  CMat B;

  SPoint() = default;
  SPoint(CMat a, CMat b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() < 1 || A.cols() < 1 || B.rows() != A.cols() || B.cols() != A.rows())
      throw Error(ErrorCode::DimensionMismatch, "SPoint requires A n×d and B d×n");
    require_finite(A, "A");
    require_finite(B, "B");
  }

  static SPoint zero(int n, int d) {
    require_size(n, "n");
    require_size(d, "d");
    return {CMat::Zero(n, d), CMat::Zero(d, n)};
  }

  int n() const { return static_cast<int>(A.rows()); }
  int d() const { return static_cast<int>(A.cols()); }
};

/// An element (a, b) of S(n,1): column vector a and row vector b (stored as a column).
struct SpinPoint {
  CVec a;
  CVec b;

  SpinPoint() = default;
  SpinPoint(CVec a_, CVec b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.size() < 1 || a.size() != b.size())
      throw Error(ErrorCode::DimensionMismatch, "SpinPoint requires a and b of equal length >= 1");
    require_finite(a, "a");
    require_finite(b, "b");
  }

  static SpinPoint zero(int n) {
    require_size(n, "n");
    return {CVec::Zero(n), CVec::Zero(n)};
  }

  int n() const { return static_cast<int>(a.size()); }
};

/// Ordered d-tuple of spin points of common size n.
class SpinTuple {
 public:
  SpinTuple() = default;
  explicit SpinTuple(std::vector<SpinPoint> copies) : copies_(std::move(copies)) {
    if (copies_.empty()) throw Error(ErrorCode::InvalidArgument, "SpinTuple needs d >= 1 copies");
    for (const auto& c : copies_)
      if (c.n() != copies_.front().n()) throw Error(ErrorCode::DimensionMismatch, "SpinTuple copies differ in n");
  }

  static SpinTuple zero(int n, int d) {
    require_size(d, "d");
    return SpinTuple(std::vector<SpinPoint>(static_cast<std::size_t>(d), SpinPoint::zero(n)));
  }

  int n() const { return copies_.front().n(); }
  int d() const { return static_cast<int>(copies_.size()); }
  const SpinPoint& operator[](int alpha) const { return copies_.at(static_cast<std::size_t>(alpha)); }
  SpinPoint& operator[](int alpha) { return copies_.at(static_cast<std::size_t>(alpha)); }
  const std::vector<SpinPoint>& copies() const noexcept { return copies_; }

 private:
  std::vector<SpinPoint> copies_;
};

/// An element (h₊, h₋) of the dual group GL(ℓ)*: h₊ upper, h₋ lower, reciprocal diagonals.
struct DualPair {
  CMat hplus;
  CMat hminus;

  DualPair() = default;
  DualPair(CMat hp, CMat hm) : hplus(std::move(hp)), hminus(std::move(hm)) {
    const auto l = hplus.rows();
    if (l < 1 || hplus.cols() != l || hminus.rows() != l || hminus.cols() != l)
      throw Error(ErrorCode::DimensionMismatch, "DualPair requires two ℓ×ℓ matrices");
    require_finite(hplus, "h+");
    require_finite(hminus, "h-");
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < l; ++j) {
        if (i > j && hplus(i, j) != cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "h+ is not upper triangular");
        if (i < j && hminus(i, j) != cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "h- is not lower triangular");
      }
    for (Eigen::Index j = 0; j < l; ++j) {
      if (std::abs(hplus(j, j)) == 0.0) throw Error(ErrorCode::InvalidArgument, "h+ has a zero diagonal entry");
      if (std::abs(hplus(j, j) * hminus(j, j) - 1.0) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "diagonals of h+ and h- are not reciprocal");
    }
  }

  static DualPair identity(int l) { return {plie::identity(l), plie::identity(l)}; }

  int size() const { return static_cast<int>(hplus.rows()); }
};

enum class Space { S, GL, D, GLstar, C2n, Product };

/// Flat coordinate system of one of the phase spaces; labels are 1-based.
struct Chart {
  Space space = Space::S;
  int dim = 0;
  std::vector<std::string> labels;
};

namespace chart {

inline std::string idx(const char* name, int i, int j) {
  return std::string(name) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// A(i,α) row-major, then B(α,i) row-major.
inline Chart S(int n, int d) {
  require_size(n, "n");
  require_size(d, "d");
  Chart c{Space::S, 2 * n * d, {}};
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= d; ++a) c.labels.push_back(idx("A", i, a));
  for (int a = 1; a <= d; ++a)
    for (int i = 1; i <= n; ++i) c.labels.push_back(idx("B", a, i));
  return c;
}

inline Chart GL(int l) {
  require_size(l, "l");
  Chart c{Space::GL, l * l, {}};
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) c.labels.push_back(idx("g", i, j));
  return c;
}

inline Chart D(int l) {
  require_size(l, "l");
  Chart c{Space::D, 2 * l * l, {}};
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) c.labels.push_back(idx("u", i, j));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) c.labels.push_back(idx("v", i, j));
  return c;
}

/// Strictly-upper entries of h₊, diagonal of h₊, strictly-lower entries of h₋.
inline Chart GLstar(int l) {
  require_size(l, "l");
  Chart c{Space::GLstar, l * l, {}};
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) c.labels.push_back(idx("h+", i, j));
  for (int i = 1; i <= l; ++i) c.labels.push_back(idx("h+", i, i));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j < i; ++j) c.labels.push_back(idx("h-", i, j));
  return c;
}

inline Chart C2n(int n) {
  require_size(n, "n");
  Chart c{Space::C2n, 2 * n, {}};
  for (int i = 1; i <= n; ++i) c.labels.push_back("a(" + std::to_string(i) + ")");
  for (int i = 1; i <= n; ++i) c.labels.push_back("b(" + std::to_string(i) + ")");
  return c;
}

/// d consecutive S(n,1) blocks (a^α then b^α for each copy α).
inline Chart Product(int n, int d) {
  require_size(n, "n");
  require_size(d, "d");
  Chart c{Space::Product, 2 * n * d, {}};
  for (int a = 1; a <= d; ++a) {
    for (int i = 1; i <= n; ++i) c.labels.push_back(idx("a", a, i));
    for (int i = 1; i <= n; ++i) c.labels.push_back(idx("b", a, i));
  }
  return c;
}

}  // namespace chart

// Chart coordinates <-> points.

inline CVec coords(const SPoint& p) {
  const int n = p.n(), d = p.d();
  CVec x(2 * n * d);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) x(i * d + a) = p.A(i, a);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n; ++i) x(n * d + a * n + i) = p.B(a, i);
  return x;
}

inline SPoint spoint_from(const CVec& x, int n, int d) {
  if (x.size() != 2 * n * d) throw Error(ErrorCode::DimensionMismatch, "coordinate vector does not match S(n,d)");
  CMat A(n, d), B(d, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) A(i, a) = x(i * d + a);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n; ++i) B(a, i) = x(n * d + a * n + i);
  return {std::move(A), std::move(B)};
}

inline CVec coords(const SpinPoint& p) {
  CVec x(2 * p.n());
  x << p.a, p.b;
  return x;
}

inline SpinPoint spin_from(const CVec& x) {
  if (x.size() < 2 || x.size() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "spin coordinates need even length");
  const auto n = x.size() / 2;
  return {x.head(n), x.tail(n)};
}

inline CVec coords(const SpinTuple& t) {
  const int n = t.n();
  CVec x(2 * n * t.d());
  for (int a = 0; a < t.d(); ++a) x.segment(2 * n * a, 2 * n) = coords(t[a]);
  return x;
}

inline SpinTuple tuple_from(const CVec& x, int n, int d) {
  if (x.size() != 2 * n * d) throw Error(ErrorCode::DimensionMismatch, "coordinate vector does not match S(n,1)^d");
  std::vector<SpinPoint> copies;
  copies.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) copies.push_back(spin_from(x.segment(2 * n * a, 2 * n)));
  return SpinTuple(std::move(copies));
}

inline CVec coords(const CMat& g) {
  CVec x(g.size());
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) x(i * g.cols() + j) = g(i, j);
  return x;
}

inline CMat matrix_from(const CVec& x, int rows, int cols) {
  if (x.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "coordinate vector does not match matrix shape");
  CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = x(i * cols + j);
  return g;
}

inline CVec coords_double(const CMat& u, const CMat& v) {
  CVec x(u.size() + v.size());
  x << coords(u), coords(v);
  return x;
}

inline CVec coords(const DualPair& h) {
  const int l = h.size();
  CVec x(l * l);
  int p = 0;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) x(p++) = h.hplus(i, j);
  for (int i = 0; i < l; ++i) x(p++) = h.hplus(i, i);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < i; ++j) x(p++) = h.hminus(i, j);
  return x;
}

/// Rebuilds (h₊, h₋) from free coordinates; the diagonal of h₋ is 1/diag(h₊).
inline DualPair dual_from(const CVec& x, int l) {
  if (x.size() != l * l) throw Error(ErrorCode::DimensionMismatch, "coordinate vector does not match GL(l)*");
  CMat hp = CMat::Zero(l, l), hm = CMat::Zero(l, l);
  int p = 0;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) hp(i, j) = x(p++);
  for (int i = 0; i < l; ++i) {
    hp(i, i) = x(p++);
    if (hp(i, i) == cplx(0.0)) throw Error(ErrorCode::EvaluationFailure, "zero diagonal in h+", i + 1);
    hm(i, i) = 1.0 / hp(i, i);
  }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < i; ++j) hm(i, j) = x(p++);
  return {std::move(hp), std::move(hm)};
}

}  // namespace plie
