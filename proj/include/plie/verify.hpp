#pragma once

#include <array>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "plie/brackets.hpp"
#include "plie/decoupling.hpp"

namespace plie {

/// Central differences along one complex axis, optionally with one Richardson level.
struct DiffScheme {
  enum class Direction { RealAxis, ImagAxis };

  double step = 1e-5;
  bool richardson = true;
  Direction direction = Direction::RealAxis;

  void validate() const {
    if (!(step >= 1e-9 && step <= 1e-2)) throw Error(ErrorCode::InvalidArgument, "fd step must lie in [1e-9, 1e-2]");
  }
};

/// Linear maps are differentiated by evaluating on basis vectors; quadratic ones by a central
/// difference with unit step, which is exact for polynomials of degree two.
enum class MapKind { General, Linear, Quadratic };

/// A holomorphic map between two charts.
struct HoloMap {
  std::function<CVec(const CVec&)> f;
  MapKind kind = MapKind::General;
};

using ScalarFn = std::function<cplx(const CVec&)>;
using MatFn = std::function<CMat(const CVec&)>;

/// Entries of a matrix-valued function, row-major, as a map into flat coordinates.
inline HoloMap entries_of(MatFn f, MapKind kind = MapKind::General) {
  return {[f = std::move(f)](const CVec& x) { return coords(f(x)); }, kind};
}

namespace detail {

template <class F>
auto probe(const F& f, const CVec& x) {
  try {
    return f(x);
  } catch (const Error& e) {
    throw Error(ErrorCode::DomainEscape, std::string("probe point left the domain: ") + e.what());
  }
}

template <class F>
auto central(const F& f, const CVec& x, int q, cplx h) {
  using R = std::decay_t<decltype(f(x))>;
  CVec xp = x, xm = x;
  xp(q) += h;
  xm(q) -= h;
  R d = (probe(f, xp) - probe(f, xm)) / (2.0 * h);
  return d;
}

template <class F>
auto partial(const F& f, const CVec& x, int q, const DiffScheme& s) {
  using R = std::decay_t<decltype(f(x))>;
  const cplx h = s.direction == DiffScheme::Direction::RealAxis ? cplx(s.step, 0.0) : cplx(0.0, s.step);
  R d1 = central(f, x, q, h);
  if (!s.richardson) return d1;
  R d2 = central(f, x, q, 0.5 * h);
  R r = (4.0 * d2 - d1) / 3.0;
  return r;
}

template <class F>
auto partial_exact_quadratic(const F& f, const CVec& x, int q) {
  return central(f, x, q, cplx(1.0, 0.0));
}

}  // namespace detail

/// Jacobian ∂f_p/∂x_q of a map at x.
inline CMat jacobian(const HoloMap& map, const CVec& x, const DiffScheme& s) {
  const CVec y = map.f(x);
  const auto N = x.size();
  CMat J(y.size(), N);
  if (map.kind == MapKind::Linear) {
    const CVec y0 = map.f(CVec::Zero(N));
    for (Eigen::Index q = 0; q < N; ++q) J.col(q) = map.f(CVec::Unit(N, q)) - y0;
    return J;
  }
  if (map.kind == MapKind::General) s.validate();
  for (Eigen::Index q = 0; q < N; ++q) {
    const int qi = static_cast<int>(q);
    J.col(q) = map.kind == MapKind::Quadratic ? CVec(detail::partial_exact_quadratic(map.f, x, qi))
                                               : CVec(detail::partial(map.f, x, qi, s));
  }
  return J;
}

/// ∂Π/∂x_l for every coordinate l. Degree-≤2 brackets are differentiated exactly; the dual
/// group is differentiated on the chart where diag(h₋) is independent, followed by the chain rule.
inline std::vector<CMat> bracket_partials(const BracketSpec& spec, const CVec& x, const DiffScheme& s) {
  const int N = spec.dim();
  detail::check_dim(x, N, to_string(spec.kind));
  std::vector<CMat> out(static_cast<std::size_t>(N));
  auto pi = [&spec](const CVec& y) { return evaluate(spec, y); };
  if (spec.is_quadratic()) {
    for (int l = 0; l < N; ++l) out[static_cast<std::size_t>(l)] = detail::partial_exact_quadratic(pi, x, l);
    return out;
  }
  if (spec.kind == BracketKind::DualGroup) {
    const int l = spec.l;
    const DualPair h = dual_from(x, l);
    // extended coordinates: the free chart followed by diag(h₋)
    auto ext = [&spec, l](const CVec& y) {
      DualPair base = dual_from(y.head(l * l), l);
      CMat hm = base.hminus;
      for (int j = 0; j < l; ++j) hm(j, j) = y(l * l + j);
      return detail::dual_group(spec.kappa, base.hplus, hm);
    };
    CVec y(l * l + l);
    y.head(l * l) = x;
    for (int j = 0; j < l; ++j) y(l * l + j) = h.hminus(j, j);
    const int diag0 = l * (l - 1) / 2;
    for (int q = 0; q < N; ++q) {
      CMat d = detail::partial_exact_quadratic(ext, y, q);
      if (q >= diag0 && q < diag0 + l) {
        const int j = q - diag0;
        const cplx hp = h.hplus(j, j);
        d += detail::partial_exact_quadratic(ext, y, l * l + j) * (-1.0 / (hp * hp));
      }
      out[static_cast<std::size_t>(q)] = std::move(d);
    }
    return out;
  }
  s.validate();
  for (int q = 0; q < N; ++q) out[static_cast<std::size_t>(q)] = detail::partial(pi, x, q, s);
  return out;
}

/// max over i<j<k of |Σ_l Π^{il}∂_lΠ^{jk} + cyclic|.
inline double jacobi_residual(const BracketSpec& spec, const CVec& x, const DiffScheme& s) {
  const CMat P = evaluate(spec, x);
  const auto dP = bracket_partials(spec, x, s);
  const int N = spec.dim();
  double r = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int k = j + 1; k < N; ++k) {
        cplx v = 0.0;
        for (int l = 0; l < N; ++l) {
          const auto& D = dP[static_cast<std::size_t>(l)];
          v += P(i, l) * D(j, k) + P(j, l) * D(k, i) + P(k, l) * D(i, j);
        }
        r = std::max(r, std::abs(v));
      }
  return r;
}

/// ‖J Π_src(x) Jᵀ − Π_tgt(map(x))‖_max.
inline double poisson_map_residual(const BracketSpec& src, const BracketSpec& tgt, const HoloMap& map, const CVec& x,
                                   const DiffScheme& s) {
  const CVec y = map.f(x);
  const CMat J = jacobian(map, x, s);
  return max_abs(J * evaluate(src, x) * J.transpose() - evaluate(tgt, y));
}

/// ‖J Π(x) Jᵀ + Π(map(x))‖_max.
inline double anti_poisson_residual(const BracketSpec& spec, const HoloMap& map, const CVec& x, const DiffScheme& s) {
  const CVec y = map.f(x);
  const CMat J = jacobian(map, x, s);
  return max_abs(J * evaluate(spec, x) * J.transpose() + evaluate(spec, y));
}

using Action = std::function<CVec(const CMat&, const CVec&)>;

/// Poisson property of G × M -> M with the product structure on the source.
inline double action_residual(const BracketSpec& group, const BracketSpec& space, const Action& action, const CMat& g,
                              const CVec& x, const DiffScheme& s) {
  const int l = group.l;
  if (g.rows() != l || g.cols() != l) throw Error(ErrorCode::DimensionMismatch, "g does not match the group spec");
  if (!Eigen::FullPivLU<CMat>(g).isInvertible()) throw Error(ErrorCode::InvalidArgument, "g is singular");
  const int L = l * l, M = space.dim();
  detail::check_dim(x, M, "action point");
  CVec z(L + M);
  z << coords(g), x;
  HoloMap joint{[&action, l, L, M](const CVec& w) { return action(matrix_from(w.head(L), l, l), w.tail(M)); },
                MapKind::General};
  CMat P = CMat::Zero(L + M, L + M);
  P.topLeftCorner(L, L) = evaluate(group, z.head(L));
  P.bottomRightCorner(M, M) = evaluate(space, x);
  const CMat J = jacobian(joint, z, s);
  return max_abs(J * P * J.transpose() - evaluate(space, joint.f(z)));
}

/// {x_p, f}(x) = Σ_c Π^{pc} ∂_c f.
inline cplx bracket_coord_fn(const BracketSpec& spec, const CVec& x, int p, const ScalarFn& f, const DiffScheme& s,
                             MapKind kind = MapKind::General) {
  if (p < 0 || p >= spec.dim()) throw Error(ErrorCode::IndexOutOfRange, "coordinate index out of range", p + 1);
  const CMat P = evaluate(spec, x);
  const HoloMap m{[&f](const CVec& y) {
                    CVec v(1);
                    v(0) = f(y);
                    return v;
                  },
                  kind};
  const CMat J = jacobian(m, x, s);
  return P.row(p).cwiseProduct(J.row(0)).sum();
}

/// Rows of the identity selecting chart coordinates [first, first+count).
inline CMat selection(int dim, int first, int count) {
  CMat J = CMat::Zero(count, dim);
  for (int k = 0; k < count; ++k) J(k, first + k) = 1.0;
  return J;
}

/// {X₁, Y₂} as a Tensor4 from Jacobians of the row-major entries of X (r1×c1) and Y (r2×c2).
inline Tensor4 bracket_tensor(const CMat& P, const CMat& JX, int r1, int c1, const CMat& JY, int r2, int c2) {
  const CMat M = JX * P * JY.transpose();
  Tensor4 t(r1, c1, r2, c2);
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < c1; ++j)
      for (int k = 0; k < r2; ++k)
        for (int l = 0; l < c2; ++l) t(i, j, k, l) = M(i * c1 + j, k * c2 + l);
  return t;
}

inline double diff_max(const Tensor4& a, const Tensor4& b) { return (a - b).max_abs(); }

/// κ(h₁ r₋ h₂ + h₂ r₊ h₁ − h₁h₂ r − r h₁h₂).
inline Tensor4 sts_tensor(cplx kappa, const CMat& h) {
  const int l = static_cast<int>(h.rows());
  const Tensor4 r = dj_r(l);
  const Tensor4 t = leg1_left(h, leg2_right(r_pm(l, -1), h)) + leg2_left(h, leg1_right(r_pm(l, +1), h)) -
                    leg1_left(h, leg2_left(h, r)) - leg1_right(leg2_right(r, h), h);
  return kappa * t;
}

/// κ(Γ₂ r₊ − r₋ Γ₂) A₁ and κ B₁ (r₋ Γ₂ − Γ₂ r₊).
inline Tensor4 a_gamma_tensor(cplx kappa, const CMat& gam, const CMat& A) {
  const int n = static_cast<int>(gam.rows());
  return kappa * leg1_right(leg2_left(gam, r_pm(n, +1)) - leg2_right(r_pm(n, -1), gam), A);
}
inline Tensor4 b_gamma_tensor(cplx kappa, const CMat& gam, const CMat& B) {
  const int n = static_cast<int>(gam.rows());
  return kappa * leg1_left(B, leg2_right(r_pm(n, -1), gam) - leg2_left(gam, r_pm(n, +1)));
}

struct MomentResiduals {
  double ga1 = 0.0;
  double ga2 = 0.0;
  double mom1 = 0.0;        // (g₊, g₋) on the first copy S(n,1)
  double mom1_gamma = 0.0;  // (Γ₊, Γ₋) on S(n,d)
  double ga1prime = 0.0;
  double ga2prime = 0.0;

  double max() const { return std::max({ga1, ga2, mom1, mom1_gamma, ga1prime, ga2prime}); }
};

namespace detail {

/// Max deviation of {A₁, φ±₂} and {B₁, φ±₂} from −κ r∓ A₁ φ±₂ and κ B₁ r∓ φ±₂.
inline double moment_condition(cplx kappa, const CMat& P, int n, int d, const CVec& x, const std::function<DualPair(const CVec&)>& phi,
                               const DiffScheme& s) {
  const int N = 2 * n * d;
  const SPoint p = spoint_from(x, n, d);
  const DualPair ph = phi(x);
  const CMat JA = selection(N, 0, n * d), JB = selection(N, n * d, n * d);
  const CMat Jp = jacobian(entries_of([&phi](const CVec& y) { return phi(y).hplus; }), x, s);
  const CMat Jm = jacobian(entries_of([&phi](const CVec& y) { return phi(y).hminus; }), x, s);
  const CMat Jmi = jacobian(entries_of([&phi](const CVec& y) { return lower_inverse(phi(y).hminus); }), x, s);
  const CMat gmi = lower_inverse(ph.hminus);
  const Tensor4 rp = r_pm(n, +1), rm = r_pm(n, -1);
  double r = 0.0;
  r = std::max(r, diff_max(bracket_tensor(P, JA, n, d, Jp, n, n), -kappa * leg1_right(leg2_right(rm, ph.hplus), p.A)));
  r = std::max(r, diff_max(bracket_tensor(P, JA, n, d, Jm, n, n), -kappa * leg1_right(leg2_right(rp, ph.hminus), p.A)));
  r = std::max(r, diff_max(bracket_tensor(P, JB, d, n, Jp, n, n), kappa * leg1_left(p.B, leg2_right(rm, ph.hplus))));
  r = std::max(r, diff_max(bracket_tensor(P, JB, d, n, Jm, n, n), kappa * leg1_left(p.B, leg2_right(rp, ph.hminus))));
  // the same relations written for g₋⁻¹
  r = std::max(r, diff_max(bracket_tensor(P, JA, n, d, Jmi, n, n), kappa * leg2_left(gmi, leg1_right(rp, p.A))));
  r = std::max(r, diff_max(bracket_tensor(P, JB, d, n, Jmi, n, n), -kappa * leg1_left(p.B, leg2_left(gmi, rp))));
  return r;
}

}  // namespace detail

/// Moment-map relations at p: Γ = 1 + AB under {,}_κ, Γ̂ = 1 − AB under {,}'_κ (same point read as
/// (Â, B̂)), and the moment conditions for (g₊, g₋) and (Γ₊, Γ₋).
inline MomentResiduals moment_residuals(cplx kappa, const SPoint& p, const DiffScheme& s) {
  const int n = p.n(), d = p.d(), N = 2 * n * d;
  const CVec x = coords(p);
  const CMat JA = selection(N, 0, n * d), JB = selection(N, n * d, n * d);
  MomentResiduals out;

  const CMat P = evaluate(BracketSpec::S(kappa, n, d), x);
  const CMat JG = jacobian(entries_of([n, d](const CVec& y) { return gamma(spoint_from(y, n, d)); }, MapKind::Quadratic), x, s);
  const CMat G = gamma(p);
  out.ga1 = diff_max(bracket_tensor(P, JG, n, n, JG, n, n), sts_tensor(kappa, G));
  out.ga2 = std::max(diff_max(bracket_tensor(P, JA, n, d, JG, n, n), a_gamma_tensor(kappa, G, p.A)),
                     diff_max(bracket_tensor(P, JB, d, n, JG, n, n), b_gamma_tensor(kappa, G, p.B)));

  const CMat Pp = evaluate(BracketSpec::Prime(kappa, n, d), x);
  auto hat = [n, d](const CVec& y) {
    const SPoint q = spoint_from(y, n, d);
    return CMat(identity(n) - q.A * q.B);
  };
  const CMat JH = jacobian(entries_of(hat, MapKind::Quadratic), x, s);
  const CMat H = hat(x);
  out.ga1prime = diff_max(bracket_tensor(Pp, JH, n, n, JH, n, n), -1.0 * sts_tensor(kappa, H));
  out.ga2prime = std::max(diff_max(bracket_tensor(Pp, JA, n, d, JH, n, n), -1.0 * a_gamma_tensor(kappa, H, p.A)),
                          diff_max(bracket_tensor(Pp, JB, d, n, JH, n, n), -1.0 * b_gamma_tensor(kappa, H, p.B)));

  const SpinPoint first(p.A.col(0), p.B.row(0).transpose());
  const CVec xs = coords(first);
  const CMat Ps = evaluate(BracketSpec::S(kappa, n, 1), xs);
  out.mom1 = detail::moment_condition(kappa, Ps, n, 1, xs, [](const CVec& y) { return g_pm(spin_from(y)); }, s);
  out.mom1_gamma =
      detail::moment_condition(kappa, P, n, d, x, [n, d](const CVec& y) { return gamma_pm(spoint_from(y, n, d)); }, s);
  return out;
}

struct Lemma4Residuals {
  std::array<double, 4> l41{};  // {a,h₊}, {b,h₊}, {a,h₋}, {b,h₋}
  std::array<double, 3> l42{};  // {h₊,h₊} (α≤β), {h₊,h₋} (α≤β), {h₊,h₋} (α≥β)

  double max() const {
    double r = 0.0;
    for (double v : l41) r = std::max(r, v);
    for (double v : l42) r = std::max(r, v);
    return r;
  }
};

/// Brackets of a^α, b^α and h±^β = products of the per-copy factors, against their closed forms.
inline Lemma4Residuals lemma4_residuals(cplx kappa, const SpinTuple& t, const DiffScheme& s) {
  const int n = t.n(), d = t.d(), N = 2 * n * d;
  const CVec x = coords(t);
  const CMat P = evaluate(BracketSpec::Product(kappa, n, d), x);
  const CopyFactors f = CopyFactors::of(t, d);
  const Tensor4 r = dj_r(n), rp = r_pm(n, +1), rm = r_pm(n, -1);

  std::vector<CMat> Jhp(static_cast<std::size_t>(d + 1)), Jhm(static_cast<std::size_t>(d + 1));
  for (int b = 1; b <= d; ++b) {
    Jhp[static_cast<std::size_t>(b)] = jacobian(
        entries_of([n, d, b](const CVec& y) { return CopyFactors::of(tuple_from(y, n, d), b).h_plus(1, b); }), x, s);
    Jhm[static_cast<std::size_t>(b)] = jacobian(
        entries_of([n, d, b](const CVec& y) { return CopyFactors::of(tuple_from(y, n, d), b).h_minus(1, b); }), x, s);
  }
  auto hp = [&f](int a, int b) { return f.h_plus(a, b); };
  auto hm = [&f](int a, int b) { return f.h_minus(a, b); };
  auto Jp = [&Jhp](int b) -> const CMat& { return Jhp[static_cast<std::size_t>(b)]; };
  auto Jm = [&Jhm](int b) -> const CMat& { return Jhm[static_cast<std::size_t>(b)]; };

  Lemma4Residuals out;
  auto upd = [](double& slot, const Tensor4& lhs, const Tensor4& rhs) { slot = std::max(slot, diff_max(lhs, rhs)); };
  for (int a = 1; a <= d; ++a) {
    const CMat av = t[a - 1].a, bv = t[a - 1].b.transpose();
    const CMat Ja = selection(N, 2 * n * (a - 1), n), Jb = selection(N, 2 * n * (a - 1) + n, n);
    for (int b = 1; b <= d; ++b) {
      const bool le = a <= b;
      const Tensor4 zero(n, 1, n, n), zerob(1, n, n, n);
      upd(out.l41[0], bracket_tensor(P, Ja, n, 1, Jp(b), n, n),
          le ? -kappa * leg2_left(hp(1, a - 1), leg1_right(leg2_right(rm, hp(a, b)), av)) : zero);
      upd(out.l41[1], bracket_tensor(P, Jb, 1, n, Jp(b), n, n),
          le ? kappa * leg2_left(hp(1, a - 1), leg1_left(bv, leg2_right(rm, hp(a, b)))) : zerob);
      upd(out.l41[2], bracket_tensor(P, Ja, n, 1, Jm(b), n, n),
          le ? kappa * leg2_left(hm(a, b), leg1_right(leg2_right(rp, hm(1, a - 1)), av)) : zero);
      upd(out.l41[3], bracket_tensor(P, Jb, 1, n, Jm(b), n, n),
          le ? -kappa * leg1_left(bv, leg2_left(hm(a, b), leg2_right(rp, hm(1, a - 1)))) : zerob);

      const CMat Ha = hp(1, a), Hb = hp(1, b), Hma = hm(1, a), Hmb = hm(1, b);
      if (le) {
        upd(out.l42[0], bracket_tensor(P, Jp(a), n, n, Jp(b), n, n),
            kappa * (leg1_left(Ha, leg2_left(Ha, leg2_right(r, hp(a + 1, b)))) - leg1_right(leg2_right(r, Hb), Ha)));
        upd(out.l42[1], bracket_tensor(P, Jp(a), n, n, Jm(b), n, n),
            kappa * (leg2_left(Hmb, leg1_right(rp, Ha)) - leg1_left(Ha, leg2_left(hm(a + 1, b), leg2_right(rp, Hma)))));
      }
      if (a >= b) {
        upd(out.l42[2], bracket_tensor(P, Jp(a), n, n, Jm(b), n, n),
            kappa * (leg2_left(Hmb, leg1_right(rp, Ha)) - leg1_left(Hb, leg1_right(leg2_right(rp, Hmb), hp(b + 1, a)))));
      }
    }
  }
  return out;
}

/// Matrix Ω of the symplectic form on S(n,1), chart order (a₁..a_n, b₁..b_n), ω = ½ Σ Ω_pq dx_p ∧ dx_q.
inline CMat symplectic_matrix(cplx kappa, const SpinPoint& p) {
  if (kappa == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be nonzero");
  const int n = p.n();
  const auto G = g_functions(p);
  for (int i = 1; i <= n; ++i)
    if (std::abs(G[static_cast<std::size_t>(i)]) <= 1e-14) throw Error(ErrorCode::ZeroG, "G_i vanishes", i);
  CMat W = CMat::Zero(2 * n, 2 * n);
  auto wedge = [&W](const CVec& al, const CVec& be, cplx c) {
    for (Eigen::Index u = 0; u < al.size(); ++u)
      for (Eigen::Index v = 0; v < be.size(); ++v) {
        const cplx z = c * al(u) * be(v);
        W(u, v) += z;
        W(v, u) -= z;
      }
  };
  for (int i = 0; i < n; ++i) {
    const cplx Gi = G[static_cast<std::size_t>(i + 1)];
    W(i, n + i) += -1.0 / (kappa * Gi);
    W(n + i, i) -= -1.0 / (kappa * Gi);
    CVec al = CVec::Zero(2 * n);
    al(i) = p.b(i);
    al(n + i) = -p.a(i);
    const cplx c = 1.0 / (2.0 * kappa * Gi * G[static_cast<std::size_t>(i + 2)]);
    for (int s = i + 1; s < n; ++s) {
      CVec be = CVec::Zero(2 * n);
      be(s) = p.b(s);
      be(n + s) = p.a(s);
      wedge(al, be, c);
    }
  }
  return W;
}

/// ‖Ω Π − I‖_max with Π the bracket of S(n,1).
inline double symplectic_inversion_residual(cplx kappa, const SpinPoint& p) {
  const CMat W = symplectic_matrix(kappa, p);
  const CMat P = evaluate(BracketSpec::S(kappa, p.n(), 1), coords(p));
  return max_abs(W * P - identity(2 * p.n()));
}

/// Number of singular values above sv_tolerance·max(σ_max, 1).
inline int rank_at(const BracketSpec& spec, const CVec& x, double sv_tolerance) {
  const CMat P = evaluate(spec, x);
  const Eigen::JacobiSVD<CMat> svd(P);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > sv_tolerance * scale) ++rank;
  return rank;
}

/// |F F′ + G (F − F′ t) − t|.
inline double zak_condition_residual(const HoloFn1& F, const HoloFn1& G, cplx t) {
  const cplx f = F(t), fp = F.derivative(t), g = G(t);
  return std::abs(f * fp + g * (f - fp * t) - t);
}

}  // namespace plie
