#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "plie/charts.hpp"

namespace plie {

/// A holomorphic function of one variable together with its analytic derivative.
class HoloFn1 {
 public:
  using Fn = std::function<cplx(cplx)>;

  /// Validates `deriv` against a central difference of `eval` at a few probe points.
  HoloFn1(Fn eval, Fn deriv) : eval_(std::move(eval)), deriv_(std::move(deriv)) {
    if (!eval_ || !deriv_) throw Error(ErrorCode::InvalidArgument, "HoloFn1 needs eval and deriv");
    constexpr double h = 1e-4;
    for (const cplx t : {cplx(0.1, 0.0), cplx(0.3, 0.2), cplx(-0.25, -0.4)}) {
      const cplx fd = (eval_(t + h) - eval_(t - h)) / (2.0 * h);
      const cplx exact = deriv_(t);
      if (std::abs(fd - exact) > 1e-6 * std::max(1.0, std::abs(exact)))
        throw Error(ErrorCode::InvalidArgument, "HoloFn1 derivative disagrees with finite differences");
    }
  }

  static HoloFn1 affine(cplx c0, cplx c1) {
    return {[=](cplx t) { return c0 + c1 * t; }, [=](cplx) { return c1; }};
  }
  static HoloFn1 constant(cplx c) { return affine(c, 0.0); }

  cplx operator()(cplx t) const { return eval_(t); }
  cplx derivative(cplx t) const { return deriv_(t); }

 private:
  Fn eval_;
  Fn deriv_;
};

enum class BracketKind { S, Product, AOplus, AOminus, Prime, GLmult, Double, DualGroup, STS, ZakC, ZakR };

inline const char* to_string(BracketKind k) {
  switch (k) {
    case BracketKind::S: return "S";
    case BracketKind::Product: return "Product";
    case BracketKind::AOplus: return "AOplus";
    case BracketKind::AOminus: return "AOminus";
    case BracketKind::Prime: return "Prime";
    case BracketKind::GLmult: return "GLmult";
    case BracketKind::Double: return "Double";
    case BracketKind::DualGroup: return "DualGroup";
    case BracketKind::STS: return "STS";
    case BracketKind::ZakC: return "ZakC";
    case BracketKind::ZakR: return "ZakR";
  }
  return "?";
}

/// Which Poisson structure to evaluate, with its parameters.
///
/// S-family kinds (S, AOplus, AOminus, Prime) live on S(n,d); Product on S(n,1)^×d;
/// GLmult and STS on GL(ℓ); Double on D(ℓ); DualGroup on GL(ℓ)*; ZakC and ZakR on ℂ^{2n}
/// (size n). ZakR uses the real parameter epsilon instead of kappa.
struct BracketSpec {
  BracketKind kind = BracketKind::S;
  cplx kappa{1.0, 0.0};
  double epsilon = 1.0;
  int n = 1;
  int d = 1;
  int l = 1;
  std::optional<HoloFn1> F;
  std::optional<HoloFn1> G;

  static BracketSpec s_family(BracketKind kind, cplx kappa, int n, int d) {
    BracketSpec s;
    s.kind = kind;
    s.kappa = kappa;
    s.n = n;
    s.d = d;
    s.validate();
    return s;
  }
  static BracketSpec S(cplx kappa, int n, int d) { return s_family(BracketKind::S, kappa, n, d); }
  static BracketSpec AOplus(cplx kappa, int n, int d) { return s_family(BracketKind::AOplus, kappa, n, d); }
  static BracketSpec AOminus(cplx kappa, int n, int d) { return s_family(BracketKind::AOminus, kappa, n, d); }
  static BracketSpec Prime(cplx kappa, int n, int d) { return s_family(BracketKind::Prime, kappa, n, d); }
  static BracketSpec Product(cplx kappa, int n, int d) { return s_family(BracketKind::Product, kappa, n, d); }

  static BracketSpec group(BracketKind kind, cplx kappa, int l) {
    BracketSpec s;
    s.kind = kind;
    s.kappa = kappa;
    s.l = l;
    s.validate();
    return s;
  }
  static BracketSpec GLmult(cplx kappa, int l) { return group(BracketKind::GLmult, kappa, l); }
  static BracketSpec Double(cplx kappa, int l) { return group(BracketKind::Double, kappa, l); }
  static BracketSpec DualGroup(cplx kappa, int l) { return group(BracketKind::DualGroup, kappa, l); }
  static BracketSpec STS(cplx kappa, int l) { return group(BracketKind::STS, kappa, l); }

  static BracketSpec ZakC(cplx kappa, int n, HoloFn1 f, HoloFn1 g) {
    BracketSpec s;
    s.kind = BracketKind::ZakC;
    s.kappa = kappa;
    s.n = n;
    s.F = std::move(f);
    s.G = std::move(g);
    s.validate();
    return s;
  }
  static BracketSpec ZakR(double epsilon, int n, HoloFn1 f, HoloFn1 g) {
    BracketSpec s;
    s.kind = BracketKind::ZakR;
    s.epsilon = epsilon;
    s.n = n;
    s.F = std::move(f);
    s.G = std::move(g);
    s.validate();
    return s;
  }

  void validate() const {
    if (kind == BracketKind::ZakR) {
      if (epsilon == 0.0) throw Error(ErrorCode::InvalidArgument, "epsilon must be nonzero");
    } else if (kappa == cplx(0.0)) {
      throw Error(ErrorCode::InvalidArgument, "kappa must be nonzero");
    }
    require_size(n, "n");
    require_size(d, "d");
    require_size(l, "l");
    if ((kind == BracketKind::ZakC || kind == BracketKind::ZakR) && (!F || !G))
      throw Error(ErrorCode::InvalidArgument, "Zakrzewski brackets need F and G");
  }

  Chart chart() const {
    switch (kind) {
      case BracketKind::S:
      case BracketKind::AOplus:
      case BracketKind::AOminus:
      case BracketKind::Prime: return chart::S(n, d);
      case BracketKind::Product: return chart::Product(n, d);
      case BracketKind::GLmult:
      case BracketKind::STS: return chart::GL(l);
      case BracketKind::Double: return chart::D(l);
      case BracketKind::DualGroup: return chart::GLstar(l);
      case BracketKind::ZakC:
      case BracketKind::ZakR: return chart::C2n(n);
    }
    return {};
  }

  int dim() const {
    switch (kind) {
      case BracketKind::S:
      case BracketKind::AOplus:
      case BracketKind::AOminus:
      case BracketKind::Prime:
      case BracketKind::Product: return 2 * n * d;
      case BracketKind::GLmult:
      case BracketKind::STS:
      case BracketKind::DualGroup: return l * l;
      case BracketKind::Double: return 2 * l * l;
      case BracketKind::ZakC:
      case BracketKind::ZakR: return 2 * n;
    }
    return 0;
  }

  /// Brackets whose entries are polynomials of degree at most 2 in the chart coordinates.
  bool is_quadratic() const {
    return kind != BracketKind::DualGroup && kind != BracketKind::ZakC && kind != BracketKind::ZakR;
  }
};

/// Matrix of coordinate brackets {x_p, x_q} at a point.
struct Bivector {
  Chart chart;
  CMat matrix;
};

namespace detail {

inline double sgn(int x) { return (x > 0) - (x < 0); }

inline void check_dim(const CVec& x, int dim, const char* what) {
  if (x.size() != dim) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": coordinate vector has wrong length");
}

/// Coefficients of the generic covariant quadratic bracket on S(n,d):
///   {A₁,A₂} = c_rAA·r A₁A₂ + c_AAr·A₁A₂ r
///   {B₁,B₂} = c_BBr·B₁B₂ r + c_rBB·r B₁B₂
///   {A₁,B₂} = c_BrA·B₂ r_{s1} A₁ + c_ArB·A₁ r_{s2} B₂ + c_C·C₁₂
struct QuadraticCoeffs {
  cplx rAA, AAr, BBr, rBB, BrA, ArB, C;
  int s1, s2;
};

inline QuadraticCoeffs coeffs_for(BracketKind kind, cplx k) {
  switch (kind) {
    case BracketKind::S:
    case BracketKind::Product: return {-k, -k, -k, -k, k, k, k, +1, +1};
    case BracketKind::AOplus: return {k, -k, k, -k, -k, k, -1.0, +1, -1};
    case BracketKind::Prime: return {k, -k, k, -k, -k, k, k, +1, -1};
    default: throw Error(ErrorCode::InvalidArgument, "not an S-family bracket");
  }
}

/// Componentwise evaluation of the quadratic bracket; fills the upper triangle and mirrors it.
inline CMat quadratic_bracket(const QuadraticCoeffs& c, const CMat& A, const CMat& B) {
  const int n = static_cast<int>(A.rows()), d = static_cast<int>(A.cols());
  const int nd = n * d, N = 2 * nd;
  const CMat BA = B * A;
  const CMat AB = A * B;
  CMat M = CMat::Zero(N, N);

  auto ia = [d](int i, int a) { return i * d + a; };
  auto bi = [n, nd](int a, int i) { return nd + a * n + i; };

  // {A_iα, A_kβ}
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a)
      for (int k = 0; k < n; ++k)
        for (int b = 0; b < d; ++b) {
          const int p = ia(i, a), q = ia(k, b);
          if (p >= q) continue;
          const cplx prod = A(k, a) * A(i, b);
          M(p, q) = 0.5 * (c.rAA * sgn(k - i) + c.AAr * sgn(a - b)) * prod;
        }
  // {B_αi, B_βk}
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < n; ++k) {
          const int p = bi(a, i), q = bi(b, k);
          if (p >= q) continue;
          const cplx prod = B(a, k) * B(b, i);
          M(p, q) = 0.5 * (c.BBr * sgn(i - k) + c.rBB * sgn(b - a)) * prod;
        }
  // {A_iα, B_βk}
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < n; ++k) {
          cplx v = 0.0;
          if (i == k) {
            cplx part = 0.5 * c.s1 * BA(b, a);
            for (int m = i + 1; m < n; ++m) part += 0.5 * B(b, m) * A(m, a);
            for (int m = 0; m < i; ++m) part -= 0.5 * B(b, m) * A(m, a);
            v += c.BrA * part;
          }
          if (a == b) {
            cplx part = 0.5 * c.s2 * AB(i, k);
            for (int m = 0; m < a; ++m) part += 0.5 * A(i, m) * B(m, k);
            for (int m = a + 1; m < d; ++m) part -= 0.5 * A(i, m) * B(m, k);
            v += c.ArB * part;
            if (i == k) v += c.C;
          }
          M(ia(i, a), bi(b, k)) = v;
        }
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) M(q, p) = -M(p, q);
  return M;
}

/// Index permutation of the chart of S(n,d) induced by (A, B) -> (Aη, ηB).
inline std::vector<int> eta_permutation(int n, int d) {
  std::vector<int> perm(static_cast<std::size_t>(2 * n * d));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) perm[static_cast<std::size_t>(i * d + a)] = i * d + (d - 1 - a);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(n * d + a * n + i)] = n * d + (d - 1 - a) * n + i;
  return perm;
}

inline CMat s_family(BracketKind kind, cplx kappa, const SPoint& p) {
  if (kind == BracketKind::AOminus) {
    // {,}⁻ at (A,B) is the pullback of {,}⁺ along (A,B) -> (Aη, ηB).
    const auto perm = eta_permutation(p.n(), p.d());
    const CMat plus = quadratic_bracket(coeffs_for(BracketKind::AOplus, kappa), p.A * eta(p.d()), eta(p.d()) * p.B);
    const auto N = static_cast<int>(perm.size());
    CMat M(N, N);
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s) M(r, s) = plus(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(s)]);
    return M;
  }
  return quadratic_bracket(coeffs_for(kind, kappa), p.A, p.B);
}

/// {g_ij, g_kl} for κ[g₁g₂, r].
inline cplx gl_entry(cplx kappa, const CMat& g, int i, int j, int k, int l) {
  return 0.5 * kappa * (sgn(j - l) - sgn(k - i)) * g(i, l) * g(k, j);
}

/// {u_ij, v_kl} for κ[u₁v₂, r₊].
inline cplx double_uv_entry(cplx kappa, const CMat& u, const CMat& v, int i, int j, int k, int l) {
  return 0.5 * kappa * ((sgn(j - l) + 1.0) * u(i, l) * v(k, j) - (sgn(k - i) + 1.0) * u(k, j) * v(i, l));
}

inline CMat gl_mult(cplx kappa, const CMat& g) {
  const int l = static_cast<int>(g.rows());
  const int N = l * l;
  CMat M = CMat::Zero(N, N);
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      M(p, q) = gl_entry(kappa, g, p / l, p % l, q / l, q % l);
      M(q, p) = -M(p, q);
    }
  return M;
}

inline CMat double_bracket(cplx kappa, const CMat& u, const CMat& v) {
  const int l = static_cast<int>(u.rows());
  const int L = l * l, N = 2 * L;
  CMat M = CMat::Zero(N, N);
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      const int i = (p % L) / l, j = (p % L) % l, k = (q % L) / l, m = (q % L) % l;
      if (p < L && q < L) M(p, q) = gl_entry(kappa, u, i, j, k, m);
      else if (p >= L) M(p, q) = gl_entry(kappa, v, i, j, k, m);
      else M(p, q) = double_uv_entry(kappa, u, v, i, j, k, m);
      M(q, p) = -M(p, q);
    }
  return M;
}

/// An entry of h₊ (plus = true) or h₋ at 0-based (i, j).
struct DualEntry {
  bool plus;
  int i;
  int j;
};

inline std::vector<DualEntry> dual_entries(int l) {
  std::vector<DualEntry> e;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) e.push_back({true, i, j});
  for (int i = 0; i < l; ++i) e.push_back({true, i, i});
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < i; ++j) e.push_back({false, i, j});
  return e;
}

/// Bracket of two matrix entries read directly off the dual-group formulas.
inline cplx dual_entry_direct(cplx kappa, const CMat& hp, const CMat& hm, DualEntry x, DualEntry y) {
  if (x.plus && y.plus) return gl_entry(kappa, hp, x.i, x.j, y.i, y.j);
  if (!x.plus && !y.plus) return gl_entry(kappa, hm, x.i, x.j, y.i, y.j);
  if (x.plus) return double_uv_entry(kappa, hp, hm, x.i, x.j, y.i, y.j);
  return -double_uv_entry(kappa, hp, hm, y.i, y.j, x.i, x.j);
}
inline cplx dual_entry_direct(cplx kappa, const DualPair& h, DualEntry x, DualEntry y) {
  return dual_entry_direct(kappa, h.hplus, h.hminus, x, y);
}

inline CMat sts(cplx kappa, const CMat& h) {
  const int l = static_cast<int>(h.rows());
  const int N = l * l;
  const CMat h2 = h * h;
  CMat M = CMat::Zero(N, N);
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      const int i = p / l, j = p % l, k = q / l, m = q % l;
      cplx v = -0.5 * (sgn(j - m) + sgn(k - i)) * h(i, m) * h(k, j);
      if (j == k) {  // h₁ r₋ h₂
        cplx part = -0.5 * h2(i, m);
        for (int s = 0; s < j; ++s) part += 0.5 * h(i, s) * h(s, m);
        for (int s = j + 1; s < l; ++s) part -= 0.5 * h(i, s) * h(s, m);
        v += part;
      }
      if (i == m) {  // h₂ r₊ h₁
        cplx part = 0.5 * h2(k, j);
        for (int s = i + 1; s < l; ++s) part += 0.5 * h(k, s) * h(s, j);
        for (int s = 0; s < i; ++s) part -= 0.5 * h(k, s) * h(s, j);
        v += part;
      }
      M(p, q) = kappa * v;
      M(q, p) = -M(p, q);
    }
  return M;
}

/// Complex Zakrzewski bracket with prefactor c = κ/2 on coordinates (a, b).
inline CMat zakrzewski(cplx c, const HoloFn1& F, const HoloFn1& G, const CVec& a, const CVec& b) {
  const int n = static_cast<int>(a.size());
  cplx t = 0.0;
  for (int r = 0; r < n; ++r) t += a(r) * b(r);
  const cplx Fv = F(t), Gv = G(t);
  if (!std::isfinite(Fv.real()) || !std::isfinite(Fv.imag()) || !std::isfinite(Gv.real()) ||
      !std::isfinite(Gv.imag()))
    throw Error(ErrorCode::EvaluationFailure, "F or G is not finite at t");
  CMat M = CMat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      M(i, j) = c * sgn(i - j) * a(i) * a(j);
      M(n + i, n + j) = -c * sgn(i - j) * b(i) * b(j);
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cplx v = -c * Gv * a(i) * b(k);
      if (i == k) {
        v += c * Fv;
        for (int r = 0; r < n; ++r) v += c * sgn(r - i) * a(r) * b(r);
      }
      M(i, n + k) = v;
    }
  for (int p = 0; p < 2 * n; ++p)
    for (int q = p + 1; q < 2 * n; ++q) M(q, p) = -M(p, q);
  return M;
}

/// Real Zakrzewski bracket on (u, ū) treated as independent coordinates.
inline CMat zakrzewski_real(double epsilon, const HoloFn1& F, const HoloFn1& G, const CVec& u, const CVec& ubar) {
  const int n = static_cast<int>(u.size());
  const cplx ie(0.0, epsilon);
  cplx t = 0.0;
  for (int r = 0; r < n; ++r) t += u(r) * ubar(r);
  const cplx Fv = F(t), Gv = G(t);
  CMat M = CMat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      M(i, j) = -ie * sgn(i - j) * u(i) * u(j);
      M(n + i, n + j) = ie * sgn(i - j) * ubar(i) * ubar(j);
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cplx v = ie * Gv * u(i) * ubar(k);
      if (i == k) {
        v -= ie * Fv;
        for (int r = 0; r < n; ++r) v -= ie * sgn(r - i) * u(r) * ubar(r);
      }
      M(i, n + k) = v;
    }
  for (int p = 0; p < 2 * n; ++p)
    for (int q = p + 1; q < 2 * n; ++q) M(q, p) = -M(p, q);
  return M;
}

inline CMat product(cplx kappa, const SpinTuple& t) {
  const int n = t.n(), d = t.d(), w = 2 * n;
  CMat M = CMat::Zero(w * d, w * d);
  const auto c = coeffs_for(BracketKind::S, kappa);
  for (int a = 0; a < d; ++a) {
    CMat A(n, 1), B(1, n);
    A.col(0) = t[a].a;
    B.row(0) = t[a].b.transpose();
    M.block(w * a, w * a, w, w) = quadratic_bracket(c, A, B);
  }
  return M;
}

/// Dual-group bracket with the diagonal of hm taken as given rather than as 1/diag(hp).
/// Every entry is then a polynomial of degree 2 in the entries of (hp, hm).
inline CMat dual_group(cplx kappa, const CMat& hp, const CMat& hm) {
  const auto entries = dual_entries(static_cast<int>(hp.rows()));
  const auto N = static_cast<int>(entries.size());
  CMat M = CMat::Zero(N, N);
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      M(p, q) = dual_entry_direct(kappa, hp, hm, entries[static_cast<std::size_t>(p)], entries[static_cast<std::size_t>(q)]);
      M(q, p) = -M(p, q);
    }
  return M;
}
inline CMat dual_group(cplx kappa, const DualPair& h) { return dual_group(kappa, h.hplus, h.hminus); }

}  // namespace detail

/// Raw bracket matrix of `spec` at chart coordinates `x`.
inline CMat evaluate(const BracketSpec& spec, const CVec& x) {
  detail::check_dim(x, spec.dim(), to_string(spec.kind));
  switch (spec.kind) {
    case BracketKind::S:
    case BracketKind::AOplus:
    case BracketKind::AOminus:
    case BracketKind::Prime: return detail::s_family(spec.kind, spec.kappa, spoint_from(x, spec.n, spec.d));
    case BracketKind::Product: return detail::product(spec.kappa, tuple_from(x, spec.n, spec.d));
    case BracketKind::GLmult: return detail::gl_mult(spec.kappa, matrix_from(x, spec.l, spec.l));
    case BracketKind::STS: return detail::sts(spec.kappa, matrix_from(x, spec.l, spec.l));
    case BracketKind::Double: {
      const int L = spec.l * spec.l;
      return detail::double_bracket(spec.kappa, matrix_from(x.head(L), spec.l, spec.l),
                                    matrix_from(x.tail(L), spec.l, spec.l));
    }
    case BracketKind::DualGroup: return detail::dual_group(spec.kappa, dual_from(x, spec.l));
    case BracketKind::ZakC: return detail::zakrzewski(0.5 * spec.kappa, *spec.F, *spec.G, x.head(spec.n), x.tail(spec.n));
    case BracketKind::ZakR: return detail::zakrzewski_real(spec.epsilon, *spec.F, *spec.G, x.head(spec.n), x.tail(spec.n));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown bracket kind");
}

inline Bivector bivector(const BracketSpec& spec, const CVec& x) { return {spec.chart(), evaluate(spec, x)}; }

// Typed entry points.

inline Bivector bivector_S(const BracketSpec& spec, const SPoint& p) {
  if (spec.kind != BracketKind::S) throw Error(ErrorCode::InvalidArgument, "bivector_S needs an S spec");
  if (p.n() != spec.n || p.d() != spec.d) throw Error(ErrorCode::DimensionMismatch, "point does not match (n,d)");
  return {spec.chart(), detail::s_family(BracketKind::S, spec.kappa, p)};
}

inline Bivector bivector_S1_product(cplx kappa, const SpinTuple& t) {
  return {chart::Product(t.n(), t.d()), detail::product(kappa, t)};
}

inline Bivector bivector_AO(const BracketSpec& spec, const SPoint& p) {
  if (spec.kind != BracketKind::AOplus && spec.kind != BracketKind::AOminus && spec.kind != BracketKind::Prime)
    throw Error(ErrorCode::InvalidArgument, "bivector_AO needs an AOplus, AOminus or Prime spec");
  if (p.n() != spec.n || p.d() != spec.d) throw Error(ErrorCode::DimensionMismatch, "point does not match (n,d)");
  return {spec.chart(), detail::s_family(spec.kind, spec.kappa, p)};
}

inline Bivector bivector_GLmult(cplx kappa, int l, const CMat& g) {
  if (g.rows() != l || g.cols() != l) throw Error(ErrorCode::DimensionMismatch, "g must be ℓ×ℓ");
  return {chart::GL(l), detail::gl_mult(kappa, g)};
}

inline Bivector bivector_double(cplx kappa, int l, const CMat& u, const CMat& v) {
  if (u.rows() != l || u.cols() != l || v.rows() != l || v.cols() != l)
    throw Error(ErrorCode::DimensionMismatch, "u and v must be ℓ×ℓ");
  return {chart::D(l), detail::double_bracket(kappa, u, v)};
}

inline Bivector bivector_dual(cplx kappa, int l, const DualPair& pair) {
  if (pair.size() != l) throw Error(ErrorCode::DimensionMismatch, "pair must be ℓ×ℓ");
  return {chart::GLstar(l), detail::dual_group(kappa, pair)};
}

inline Bivector bivector_STS(cplx kappa, int l, const CMat& h) {
  if (h.rows() != l || h.cols() != l) throw Error(ErrorCode::DimensionMismatch, "h must be ℓ×ℓ");
  return {chart::GL(l), detail::sts(kappa, h)};
}

inline Bivector bivector_zak_complex(cplx kappa, const HoloFn1& F, const HoloFn1& G, const SpinPoint& p) {
  return {chart::C2n(p.n()), detail::zakrzewski(0.5 * kappa, F, G, p.a, p.b)};
}

inline Bivector bivector_zak_real(double epsilon, const HoloFn1& F, const HoloFn1& G, const CVec& u) {
  return {chart::C2n(static_cast<int>(u.size())), detail::zakrzewski_real(epsilon, F, G, u, u.conjugate())};
}

/// Bracket of any two entries of (h₊, h₋), including the dependent diagonal of h₋:
/// {x, (h₋)_jj} = -{x, (h₊)_jj} / (h₊)_jj² since (h₋)_jj = 1/(h₊)_jj.
inline cplx dual_entry_bracket(cplx kappa, const DualPair& h, detail::DualEntry x, detail::DualEntry y) {
  auto is_dep = [](detail::DualEntry e) { return !e.plus && e.i == e.j; };
  if (is_dep(x)) {
    const cplx hp = h.hplus(x.i, x.i);
    return -dual_entry_bracket(kappa, h, {true, x.i, x.i}, y) / (hp * hp);
  }
  if (is_dep(y)) {
    const cplx hp = h.hplus(y.i, y.i);
    return -dual_entry_bracket(kappa, h, x, {true, y.i, y.i}) / (hp * hp);
  }
  return detail::dual_entry_direct(kappa, h, x, y);
}

/// Dual bases T^a = (X^a, X^a) of gl_δ and T_a = (Z_a, W_a) of gl*_δ under ⟨,⟩_κ.
struct DualBases {
  std::vector<std::pair<CMat, CMat>> upper;  // (X^a, X^a)
  std::vector<std::pair<CMat, CMat>> lower;  // (Z_a, W_a)
  cplx kappa;
};

/// ⟨(U,V),(X,Y)⟩_κ = (tr UX - tr VY)/κ.
inline cplx pairing(cplx kappa, const std::pair<CMat, CMat>& lhs, const std::pair<CMat, CMat>& rhs) {
  return ((lhs.first * rhs.first).trace() - (lhs.second * rhs.second).trace()) / kappa;
}

inline DualBases dual_bases(int l, cplx kappa) {
  require_size(l, "l");
  if (kappa == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be nonzero");
  DualBases db{{}, {}, kappa};
  for (int j = 1; j <= l; ++j)
    for (int k = 1; k <= l; ++k) {
      const CMat X = elementary(l, j, k);
      db.upper.emplace_back(X, X);
      const CMat Ekj = elementary(l, k, j);
      const CMat zero = CMat::Zero(l, l);
      if (k < j) db.lower.emplace_back(kappa * Ekj, zero);
      else if (k > j) db.lower.emplace_back(zero, -kappa * Ekj);
      else db.lower.emplace_back(0.5 * kappa * Ekj, -0.5 * kappa * Ekj);
    }
  return db;
}

}  // namespace plie
