#include <gtest/gtest.h>

#include "plie/sampling.hpp"
#include "plie/factorization.hpp"

using namespace plie;

namespace {

CMat mat2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

bool strictly_lower_zero(const CMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (m(i, j) != cplx(0.0)) return false;
  return true;
}

bool strictly_upper_zero(const CMat& m) { return strictly_lower_zero(m.transpose()); }

}  // namespace

TEST(Gauss, Identity) {
  const GaussFactors f = gauss(identity(3));
  EXPECT_EQ(max_abs(f.upper - identity(3)), 0.0);
  EXPECT_EQ(max_abs(f.diag - identity(3)), 0.0);
  EXPECT_EQ(max_abs(f.lower - identity(3)), 0.0);
}

TEST(Gauss, TwoByTwoByHand) {
  // eliminate the (2,2) pivot first: g_> = [[1,1/2],[0,1]], g_0 = diag(-1/2, 4), g_< = [[1,0],[3/4,1]]
  const GaussFactors f = gauss(mat2(1, 2, 3, 4));
  EXPECT_LT(max_abs(f.upper - mat2(1, 0.5, 0, 1)), 1e-15);
  EXPECT_LT(max_abs(f.diag - mat2(-0.5, 0, 0, 4)), 1e-15);
  EXPECT_LT(max_abs(f.lower - mat2(1, 0, 0.75, 1)), 1e-15);
}

TEST(Gauss, SingularMinor) {
  try {
    gauss(mat2(0, 1, 1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMinor);
    EXPECT_EQ(e.index(), 1);
  }
  // trailing 2x2 minor [[1,1],[1,1]]
  CMat m = CMat::Ones(3, 3);
  m(0, 0) = 2.0;
  try {
    gauss(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMinor);
    EXPECT_EQ(e.index(), 2);
  }
  EXPECT_THROW(gauss(CMat::Zero(2, 3)), Error);
}

TEST(Gauss, RandomReassembly) {
  for (int l = 1; l <= 5; ++l)
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng g(31, i);
      const CMat m = identity(l) + g.matrix(l, l, 0.5);
      const GaussFactors f = gauss(m);
      EXPECT_LT(max_abs(f.upper * f.diag * f.lower - m), 1e-13);
      EXPECT_TRUE(strictly_lower_zero(f.upper));
      EXPECT_TRUE(strictly_upper_zero(f.lower));
      for (int j = 0; j < l; ++j) {
        EXPECT_EQ(f.upper(j, j), cplx(1.0));
        EXPECT_EQ(f.lower(j, j), cplx(1.0));
      }
    }
}

TEST(Chi, ScalarAndIdentity) {
  EXPECT_EQ(max_abs(chi(DualPair::identity(3)) - identity(3)), 0.0);
  CMat hp(1, 1), hm(1, 1);
  hp << std::sqrt(2.0);
  hm << 1.0 / std::sqrt(2.0);
  EXPECT_LT(std::abs(chi({hp, hm})(0, 0) - 2.0), 1e-15);
}

TEST(Chi, SignFlipInvariance) {
  Rng g(32, 0);
  const DualPair h = sample_dual(g, 3, 0.5);
  CMat tau = identity(3);
  tau(1, 1) = -1.0;
  const DualPair flipped(h.hplus * tau, h.hminus * tau);
  EXPECT_LT(max_abs(chi(flipped) - chi(h)), 1e-15);
}

TEST(Chi, LocalInverseRoundTrip) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng g(33, i);
    const int l = 1 + static_cast<int>(i % 4);
    const CMat h = identity(l) + g.matrix(l, l, 0.3 / l);
    const DualPair p = chi_inverse_local(h);
    EXPECT_LT(max_abs(chi(p) - h), 1e-10);
    EXPECT_TRUE(strictly_lower_zero(p.hplus));
    EXPECT_TRUE(strictly_upper_zero(p.hminus));
  }
  const DualPair id = chi_inverse_local(identity(2));
  EXPECT_EQ(max_abs(id.hplus - identity(2)), 0.0);
  EXPECT_EQ(max_abs(id.hminus - identity(2)), 0.0);
}

TEST(Chi, BranchCut) {
  CMat h = identity(2);
  h(1, 1) = -1.0;
  try {
    chi_inverse_local(h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BranchCut);
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(GFunctions, Values) {
  const auto z = g_functions(SpinPoint::zero(3));
  ASSERT_EQ(z.size(), 5u);
  for (cplx v : z) EXPECT_EQ(v, cplx(1.0));
  CVec one(1);
  one << 1.0;
  const auto G = g_functions({one, one});
  EXPECT_EQ(G[1], cplx(2.0));
  EXPECT_EQ(G[2], cplx(1.0));

  Rng g(34, 0);
  const SpinPoint p = sample_spin(g, 4, 0.5);
  const auto H = g_functions(p);
  for (int j = 1; j <= 4; ++j) EXPECT_LT(std::abs(H[j] - H[j + 1] - p.a(j - 1) * p.b(j - 1)), 1e-15);
}

TEST(GPm, ScalarAndZero) {
  const DualPair z = g_pm(SpinPoint::zero(3));
  EXPECT_EQ(max_abs(z.hplus - identity(3)), 0.0);
  EXPECT_EQ(max_abs(z.hminus - identity(3)), 0.0);
  CVec one(1);
  one << 1.0;
  const DualPair s = g_pm({one, one});
  EXPECT_LT(std::abs(s.hplus(0, 0) - std::sqrt(2.0)), 1e-15);
  EXPECT_LT(std::abs(s.hminus(0, 0) - 1.0 / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(std::abs(chi(s)(0, 0) - 2.0), 1e-15);
}

TEST(GPm, FactorizationIdentity) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng g(35, i);
      const SpinPoint p = sample_spin(g, n, 0.3);
      const DualPair f = g_pm(p);
      const CMat lhs = identity(n) + p.a * p.b.transpose();
      EXPECT_LT(max_abs(lhs - chi(f)), 1e-12);
      // same branch as the Gauss route
      const DualPair viaGauss = chi_inverse_local(lhs);
      EXPECT_LT(max_abs(viaGauss.hplus - f.hplus), 1e-12);
      EXPECT_LT(max_abs(viaGauss.hminus - f.hminus), 1e-12);
    }
}

TEST(GPm, ZeroG) {
  CVec a(2), b(2);
  a << 0.5, 1.0;
  b << 0.5, -1.0;
  try {
    g_pm({a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroG);
    EXPECT_EQ(e.index(), 2);
  }
  a << 0.0, 1.0;
  b << 0.0, -2.0;
  EXPECT_THROW(g_pm({a, b}), Error);
}

TEST(Gamma, Basics) {
  EXPECT_EQ(max_abs(gamma(SPoint::zero(3, 2)) - identity(3)), 0.0);
  Rng g(36, 0);
  for (int n = 1; n <= 4; ++n) {
    const SpinPoint p = sample_spin(g, n, 0.5);
    const SPoint q(CMat(p.a), CMat(p.b.transpose()));
    EXPECT_LT(max_abs(gamma(q) - identity(n) - p.a * p.b.transpose()), 1e-15);
    // matrix determinant lemma: det(1 + ab) = G₁
    const auto G = g_functions(p);
    EXPECT_LT(std::abs(gamma(q).determinant() - G[1]), 1e-13);
  }
}

TEST(GammaPm, MomentMapFactors) {
  const DualPair z = gamma_pm(SPoint::zero(2, 3));
  EXPECT_EQ(max_abs(z.hplus - identity(2)), 0.0);
  EXPECT_EQ(max_abs(z.hminus - identity(2)), 0.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng g(37, i);
    const SPoint p = sample_spoint(g, 3, 2, 0.3);
    EXPECT_LT(max_abs(chi(gamma_pm(p)) - gamma(p)), 1e-10);
  }
}

TEST(CalGPm, ProductIdentity) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= 4; ++d) {
      Rng g(38, static_cast<std::uint64_t>(n * 10 + d));
      const SpinTuple t = sample_tuple(g, n, d, 0.3);
      const DualPair G = calG_pm(t);
      CMat prod = identity(n);
      CMat hp = identity(n), hm = identity(n);
      for (int a = 0; a < d; ++a) {
        const DualPair f = g_pm(t[a]);
        hp = hp * f.hplus;
        hm = hm * f.hminus;
        prod = prod * (identity(n) + t[a].a * t[a].b.transpose());
      }
      EXPECT_LT(max_abs(G.hplus - hp), 1e-14);
      EXPECT_LT(max_abs(G.hminus - hm), 1e-14);
      if (d == 1) EXPECT_LT(max_abs(chi(G) - prod), 1e-12);
    }
  const DualPair z = calG_pm(SpinTuple::zero(3, 2));
  EXPECT_EQ(max_abs(z.hplus - identity(3)), 0.0);
}

TEST(DualGroupOps, InverseAndProduct) {
  Rng g(39, 0);
  const DualPair x = sample_dual(g, 3, 0.5), y = sample_dual(g, 3, 0.5);
  const DualPair xy = dual_product(x, y);
  EXPECT_LT(max_abs(xy.hplus - x.hplus * y.hplus), 1e-15);
  const DualPair e = dual_product(x, dual_inverse(x));
  EXPECT_LT(max_abs(e.hplus - identity(3)), 1e-14);
  EXPECT_LT(max_abs(e.hminus - identity(3)), 1e-14);
  // χ(xy) = x₊ χ(y) x₋⁻¹
  EXPECT_LT(max_abs(chi(xy) - x.hplus * chi(y) * lower_inverse(x.hminus)), 1e-13);
}
