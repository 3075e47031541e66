#pragma once

#include <string>
#include <vector>

#include "plie/factorization.hpp"

namespace plie {

/// Rejects copies with ‖a‖·‖b‖ ≥ 0.9, which keeps every G_j in the right half-plane.
inline void guard_copy(const SpinPoint& p, int alpha) {
  if (p.a.norm() * p.b.norm() >= 0.9)
    throw Error(ErrorCode::OutsideDomain, "copy " + std::to_string(alpha) + " has ‖a‖·‖b‖ >= 0.9", alpha);
}

/// g₊ and g₋⁻¹ of every copy of a tuple.
struct CopyFactors {
  std::vector<CMat> gplus;
  std::vector<CMat> gminus_inv;
  int n = 0;

  static CopyFactors of(const SpinTuple& t, int copies) {
    CopyFactors f;
    f.n = t.n();
    for (int a = 0; a < copies; ++a) {
      guard_copy(t[a], a + 1);
      DualPair g;
      try {
        g = g_pm(t[a]);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("copy ") + std::to_string(a + 1) + ": " + e.what(), a + 1);
      }
      f.gplus.push_back(g.hplus);
      f.gminus_inv.push_back(keep_lower(lower_inverse(g.hminus)));
    }
    return f;
  }

  /// h₊^{α;γ} = g₊,α ··· g₊,γ (1-based, identity when γ < α).
  CMat h_plus(int alpha, int gamma) const {
    CMat h = identity(n);
    for (int c = alpha; c <= gamma; ++c) h = h * gplus[static_cast<std::size_t>(c - 1)];
    return h;
  }
  /// h₋^{α;γ} = g₋,γ⁻¹ ··· g₋,α⁻¹ (1-based, identity when γ < α).
  CMat h_minus(int alpha, int gamma) const {
    CMat h = identity(n);
    for (int c = gamma; c >= alpha; --c) h = h * gminus_inv[static_cast<std::size_t>(c - 1)];
    return h;
  }
};

/// m: S(n,1)^×d -> S(n,d), A^α = g₊(1)···g₊(α-1) a^α, B^α = b^α g₋(α-1)⁻¹···g₋(1)⁻¹.
inline SPoint map_m(const SpinTuple& t) {
  const int n = t.n(), d = t.d();
  const CopyFactors f = CopyFactors::of(t, d - 1);
  CMat A(n, d), B(d, n);
  CMat hp = identity(n), hm = identity(n);
  for (int a = 0; a < d; ++a) {
    A.col(a) = hp * t[a].a;
    B.row(a) = t[a].b.transpose() * hm;
    if (a + 1 < d) {
      hp = hp * f.gplus[static_cast<std::size_t>(a)];
      hm = f.gminus_inv[static_cast<std::size_t>(a)] * hm;
    }
  }
  return {std::move(A), std::move(B)};
}

/// Inductive inverse of m; each g±,α is recomputed from the recovered copy α.
inline SpinTuple map_m_inverse(const SPoint& p) {
  const int n = p.n(), d = p.d();
  std::vector<SpinPoint> copies;
  CMat hp_inv = identity(n), hm = identity(n);
  for (int a = 0; a < d; ++a) {
    SpinPoint c(hp_inv * p.A.col(a), (p.B.row(a) * hm).transpose());
    if (a + 1 < d) {
      guard_copy(c, a + 1);
      DualPair g;
      try {
        g = g_pm(c);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("copy ") + std::to_string(a + 1) + ": " + e.what(), a + 1);
      }
      hp_inv = upper_inverse(g.hplus) * hp_inv;
      hm = hm * g.hminus;
    }
    copies.push_back(std::move(c));
  }
  return SpinTuple(std::move(copies));
}

/// F: S(n,1)^×d -> S(n,d), Â^α = g₊(d)⁻¹···g₊(α)⁻¹ a^α, B̂^α = b^α g₋(α)···g₋(d).
inline SPoint map_F(const SpinTuple& t) {
  const int n = t.n(), d = t.d();
  const CopyFactors f = CopyFactors::of(t, d);
  CMat A(n, d), B(d, n);
  CMat left = identity(n), right = identity(n);
  for (int a = d - 1; a >= 0; --a) {
    left = left * upper_inverse(f.gplus[static_cast<std::size_t>(a)]);
    right = lower_inverse(f.gminus_inv[static_cast<std::size_t>(a)]) * right;
    A.col(a) = left * t[a].a;
    B.row(a) = t[a].b.transpose() * right;
  }
  return {std::move(A), std::move(B)};
}

/// Local inverse of F: solves 1 - P Â^α B̂^α Q = ĝ₊,α⁻¹ ĝ₋,α for α = d..1 on the principal branch.
inline SpinTuple map_F_inverse(const SPoint& p) {
  const int n = p.n(), d = p.d();
  std::vector<SpinPoint> copies(static_cast<std::size_t>(d));
  CMat P = identity(n), Q = identity(n);
  for (int a = d - 1; a >= 0; --a) {
    const CMat M = identity(n) - P * p.A.col(a) * p.B.row(a) * Q;
    DualPair k;
    try {
      k = chi_inverse_local(M);  // M = k₊ k₋⁻¹ with (k₊, k₋) = (ĝ₊⁻¹, ĝ₋⁻¹)
    } catch (const Error& e) {
      throw Error(e.code(), std::string("iteration ") + std::to_string(a + 1) + ": " + e.what(), a + 1);
    }
    const CMat ghat_plus = upper_inverse(k.hplus);
    copies[static_cast<std::size_t>(a)] = SpinPoint(ghat_plus * P * p.A.col(a), (p.B.row(a) * Q * k.hminus).transpose());
    P = ghat_plus * P;
    Q = Q * k.hminus;
  }
  return SpinTuple(std::move(copies));
}

/// ν: S(n,d) -> S(d,n), (A,B) -> (η^d B η^n, η^n A η^d).
inline SPoint map_nu(const SPoint& p) {
  const CMat en = eta(p.n()), ed = eta(p.d());
  return {ed * p.B * en, en * p.A * ed};
}

/// The instance S(d,n) -> S(n,d); the formula is the same with the roles of the sizes exchanged.
inline SPoint map_nu_back(const SPoint& p) { return map_nu(p); }

inline void require_product(cplx x, cplx y, cplx kappa, const char* what) {
  const cplx target = -1.0 / kappa;
  if (std::abs(x * y - target) > 1e-12 * std::abs(target))
    throw Error(ErrorCode::ConstraintViolated, std::string(what) + " constants must multiply to -1/kappa");
}

/// ξ: (A,B) -> (ξ_A A η^d, ξ_B η^d B) with ξ_A ξ_B = -1/κ.
inline SPoint map_xi(const SPoint& p, cplx xi_a, cplx xi_b, cplx kappa) {
  require_product(xi_a, xi_b, kappa, "xi");
  const CMat ed = eta(p.d());
  return {xi_a * p.A * ed, xi_b * ed * p.B};
}

/// θ: (Â,B̂) -> (θ_A Â, θ_B B̂) with θ_A θ_B = -1/κ.
inline SPoint map_theta(const SPoint& p, cplx theta_a, cplx theta_b, cplx kappa) {
  require_product(theta_a, theta_b, kappa, "theta");
  return {theta_a * p.A, theta_b * p.B};
}

/// ι: (a^α, b^α) -> ((b^α)ᵀ, (a^α)ᵀ) on every copy.
inline SpinTuple iota(const SpinTuple& t) {
  std::vector<SpinPoint> copies;
  for (const auto& c : t.copies()) copies.emplace_back(c.b, c.a);
  return SpinTuple(std::move(copies));
}

}  // namespace plie
