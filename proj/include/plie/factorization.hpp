#pragma once

#include <vector>

#include "plie/charts.hpp"

namespace plie {

/// g = upper · diag · lower with unit-triangular outer factors.
struct GaussFactors {
  CMat upper;  // g_>
  CMat diag;   // g_0
  CMat lower;  // g_<
};

/// Gauss decomposition g = g_> g_0 g_<. Eliminates from the bottom-right corner, so the
/// pivots are ratios of trailing principal minors; a pivot below 1e-12·‖g‖_max raises
/// SingularMinor(k) for the trailing k×k minor.
inline GaussFactors gauss(const CMat& g) {
  const int l = static_cast<int>(g.rows());
  if (l < 1 || g.cols() != l) throw Error(ErrorCode::DimensionMismatch, "gauss needs a square matrix");
  require_finite(g, "g");
  const double tol = 1e-12 * max_abs(g);
  CMat work = g;
  GaussFactors f{identity(l), CMat::Zero(l, l), identity(l)};
  for (int k = l - 1; k >= 0; --k) {
    const cplx pivot = work(k, k);
    if (std::abs(pivot) <= tol) throw Error(ErrorCode::SingularMinor, "vanishing trailing principal minor", l - k);
    f.diag(k, k) = pivot;
    for (int i = 0; i < k; ++i) f.upper(i, k) = work(i, k) / pivot;
    for (int j = 0; j < k; ++j) f.lower(k, j) = work(k, j) / pivot;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) work(i, j) -= f.upper(i, k) * pivot * f.lower(k, j);
  }
  return f;
}

/// Inverse of a lower or upper triangular matrix.
inline CMat lower_inverse(const CMat& m) {
  return m.triangularView<Eigen::Lower>().solve(identity(static_cast<int>(m.rows())));
}
inline CMat upper_inverse(const CMat& m) {
  return m.triangularView<Eigen::Upper>().solve(identity(static_cast<int>(m.rows())));
}

/// Zeroes the entries outside the triangle so triangularity holds exactly.
inline CMat keep_lower(CMat m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) m(i, j) = 0.0;
  return m;
}
inline CMat keep_upper(CMat m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) m(i, j) = 0.0;
  return m;
}

/// χ(h₊, h₋) = h₊ h₋⁻¹.
inline CMat chi(const DualPair& pair) {
  for (int j = 0; j < pair.size(); ++j)
    if (pair.hminus(j, j) == cplx(0.0)) throw Error(ErrorCode::EvaluationFailure, "singular h-", j + 1);
  return pair.hplus * lower_inverse(pair.hminus);
}

/// Group inverse in GL(ℓ)*: (h₊⁻¹, h₋⁻¹).
inline DualPair dual_inverse(const DualPair& pair) {
  return {keep_upper(upper_inverse(pair.hplus)), keep_lower(lower_inverse(pair.hminus))};
}

/// Componentwise product in GL(ℓ)*.
inline DualPair dual_product(const DualPair& x, const DualPair& y) {
  return {keep_upper(x.hplus * y.hplus), keep_lower(x.hminus * y.hminus)};
}

/// Treats z as lying on the negative real axis when its phase is within 1e-14 of π.
inline bool on_branch_cut(cplx z) {
  return z.real() < 0.0 && std::abs(z.imag()) <= 1e-14 * std::abs(z);
}

/// Principal-branch preimage of h under χ, continuous at the identity.
inline DualPair chi_inverse_local(const CMat& h) {
  const GaussFactors f = gauss(h);
  const int l = static_cast<int>(h.rows());
  CMat root = CMat::Zero(l, l);
  for (int j = 0; j < l; ++j) {
    if (on_branch_cut(f.diag(j, j))) throw Error(ErrorCode::BranchCut, "Gauss diagonal entry is a negative real", j + 1);
    root(j, j) = std::sqrt(f.diag(j, j));
  }
  CMat hplus = keep_upper(f.upper * root);
  CMat hminus_inv = keep_lower(root * f.lower);
  CMat hminus = keep_lower(lower_inverse(hminus_inv));
  for (int j = 0; j < l; ++j) hminus(j, j) = 1.0 / hplus(j, j);
  return {std::move(hplus), std::move(hminus)};
}

/// G_0, G_1, …, G_{n+1} with G_j = 1 + Σ_{k≥j} a_k b_k and G_0 = G_{n+1} = 1.
inline std::vector<cplx> g_functions(const SpinPoint& p) {
  const int n = p.n();
  std::vector<cplx> G(static_cast<std::size_t>(n + 2), cplx(1.0));
  cplx acc = 1.0;
  for (int j = n; j >= 1; --j) {
    acc += p.a(j - 1) * p.b(j - 1);
    G[static_cast<std::size_t>(j)] = acc;
  }
  return G;
}

/// Closed-form local moment map (g₊, g₋) on S(n,1). Square roots s_j = √G_j are taken once per
/// index (principal branch), which makes 1 + ab = g₊ g₋⁻¹ hold algebraically.
inline DualPair g_pm(const SpinPoint& p) {
  const int n = p.n();
  const auto G = g_functions(p);
  std::vector<cplx> s(static_cast<std::size_t>(n + 2), cplx(1.0));
  for (int j = 1; j <= n; ++j) {
    const cplx Gj = G[static_cast<std::size_t>(j)];
    if (Gj == cplx(0.0)) throw Error(ErrorCode::ZeroG, "G_j vanishes", j);
    if (on_branch_cut(Gj)) throw Error(ErrorCode::BranchCut, "G_j is a negative real", j);
    s[static_cast<std::size_t>(j)] = std::sqrt(Gj);
  }
  auto S = [&s](int j) { return s[static_cast<std::size_t>(j)]; };
  CMat gp = CMat::Zero(n, n), gm_inv = CMat::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    gp(j - 1, j - 1) = S(j) / S(j + 1);
    gm_inv(j - 1, j - 1) = S(j) / S(j + 1);
    for (int k = j + 1; k <= n; ++k) gp(j - 1, k - 1) = p.a(j - 1) * p.b(k - 1) / (S(k) * S(k + 1));
    for (int k = 1; k < j; ++k) gm_inv(j - 1, k - 1) = p.a(j - 1) * p.b(k - 1) / (S(j) * S(j + 1));
  }
  CMat gm = keep_lower(lower_inverse(gm_inv));
  for (int j = 0; j < n; ++j) gm(j, j) = 1.0 / gp(j, j);
  return {std::move(gp), std::move(gm)};
}

/// Γ(A,B) = 1 + AB.
inline CMat gamma(const SPoint& p) { return identity(p.n()) + p.A * p.B; }

/// Local moment map (Γ₊, Γ₋) with Γ₊Γ₋⁻¹ = Γ and Γ±(0) = 1.
inline DualPair gamma_pm(const SPoint& p) { return chi_inverse_local(gamma(p)); }

/// 𝒢± = g±(1)···g±(d).
inline DualPair calG_pm(const SpinTuple& t) {
  DualPair acc = g_pm(t[0]);
  for (int a = 1; a < t.d(); ++a) acc = dual_product(acc, g_pm(t[a]));
  return acc;
}

}  // namespace plie
