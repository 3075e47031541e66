#include <gtest/gtest.h>

#include "plie/decoupling.hpp"
#include "plie/sampling.hpp"
#include "plie/verify.hpp"

using namespace plie;

namespace {

const DiffScheme kScheme;

CVec vec(std::initializer_list<cplx> v) {
  CVec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (cplx z : v) x(i++) = z;
  return x;
}

}  // namespace

TEST(Jacobian, LinearQuadraticGeneral) {
  Rng g(51, 0);
  const CMat M = g.matrix(3, 4, 1.0);
  const CVec x = g.vector(4, 0.5);
  const HoloMap lin{[M](const CVec& y) { return CVec(M * y); }, MapKind::Linear};
  EXPECT_LT(max_abs(jacobian(lin, x, kScheme) - M), 1e-15);

  const HoloMap sq{[](const CVec& y) { return CVec(y.cwiseProduct(y)); }, MapKind::Quadratic};
  EXPECT_LT(max_abs(jacobian(sq, x, kScheme) - CMat(2.0 * x.asDiagonal())), 1e-15);

  const HoloMap ex{[](const CVec& y) { return CVec(y.array().exp()); }, MapKind::General};
  const CMat exact = CMat(x.array().exp().matrix().asDiagonal());
  EXPECT_LT(max_abs(jacobian(ex, x, kScheme) - exact), 1e-9);
  DiffScheme imag;
  imag.direction = DiffScheme::Direction::ImagAxis;
  EXPECT_LT(max_abs(jacobian(ex, x, imag) - exact), 1e-9);
  DiffScheme plain;
  plain.richardson = false;
  plain.step = 1e-3;
  const double coarse = max_abs(jacobian(ex, x, plain) - exact);
  plain.richardson = true;
  EXPECT_LT(max_abs(jacobian(ex, x, plain) - exact), coarse);
}

TEST(Jacobian, SchemeAndDomain) {
  DiffScheme bad;
  bad.step = 0.1;
  const HoloMap id{[](const CVec& y) { return y; }, MapKind::General};
  EXPECT_THROW(jacobian(id, vec({0.0}), bad), Error);
  bad.step = 1e-10;
  EXPECT_THROW(jacobian(id, vec({0.0}), bad), Error);

  const HoloMap edge{[](const CVec& y) {
                       if (y(0).real() > 0.5) throw Error(ErrorCode::OutsideDomain, "x > 1/2");
                       return y;
                     },
                     MapKind::General};
  try {
    jacobian(edge, vec({0.5 - 1e-6}), kScheme);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainEscape);
  }
}

TEST(Jacobi, DegreeTwoBrackets) {
  Rng g(52, 0);
  EXPECT_LT(jacobi_residual(BracketSpec::S(1.0, 2, 2), g.vector(8, 1.0), kScheme), 1e-10);
  EXPECT_LT(jacobi_residual(BracketSpec::AOminus({0.0, 1.0}, 2, 3), g.vector(12, 1.0), kScheme), 1e-10);
  EXPECT_LT(jacobi_residual(BracketSpec::STS({2.0, -1.0}, 3), g.vector(9, 1.0), kScheme), 1e-10);
  EXPECT_LT(jacobi_residual(BracketSpec::DualGroup(1.0, 3), coords(sample_dual(g, 3, 1.0)), kScheme), 1e-10);
}

TEST(Jacobi, ZakrzewskiCases) {
  Rng g(53, 0);
  const HoloFn1 one = HoloFn1::constant(1.0), zero = HoloFn1::constant(0.0);
  EXPECT_GT(jacobi_residual(BracketSpec::ZakC(1.0, 2, one, zero), g.vector(4, 0.5), kScheme), 1e-3);
  EXPECT_LT(jacobi_residual(BracketSpec::ZakC(1.0, 1, one, zero), g.vector(2, 0.5), kScheme), 1e-12);
}

TEST(PoissonMap, ScalingIsNotPoisson) {
  Rng g(54, 0);
  const int n = 2, d = 2;
  const auto S = BracketSpec::S(1.0, n, d);
  const HoloMap twice{[=](const CVec& x) {
                        const SPoint p = spoint_from(x, n, d);
                        return coords(SPoint(2.0 * p.A, p.B));
                      },
                      MapKind::Linear};
  EXPECT_GT(poisson_map_residual(S, S, twice, g.vector(8, 0.5), kScheme), 0.5);
  const HoloMap id{[](const CVec& x) { return x; }, MapKind::Linear};
  EXPECT_EQ(poisson_map_residual(S, S, id, g.vector(8, 0.5), kScheme), 0.0);
}

TEST(PoissonMap, SpinMomentMapIntoDualGroup) {
  Rng g(55, 0);
  const int n = 3;
  const cplx k(1.0, -0.5);
  const HoloMap gpm{[](const CVec& x) { return coords(g_pm(spin_from(x))); }, MapKind::General};
  const SpinPoint p = sample_spin(g, n, 0.3);
  EXPECT_LT(poisson_map_residual(BracketSpec::S(k, n, 1), BracketSpec::DualGroup(k, n), gpm, coords(p), kScheme), 1e-7);
}

TEST(AntiPoisson, IdentityAndIota) {
  Rng g(56, 0);
  const auto S = BracketSpec::S(1.0, 2, 1);
  const CVec x = g.vector(4, 0.5);
  const HoloMap id{[](const CVec& y) { return y; }, MapKind::Linear};
  EXPECT_LT(std::abs(anti_poisson_residual(S, id, x, kScheme) - 2.0 * max_abs(evaluate(S, x))), 1e-15);

  const auto zak = BracketSpec::ZakC(1.0, 3, HoloFn1::affine(2.0, 1.0), HoloFn1::constant(-1.0));
  const HoloMap io{[](const CVec& y) { return coords(iota(tuple_from(y, 3, 1))); }, MapKind::Linear};
  EXPECT_LT(anti_poisson_residual(zak, io, g.vector(6, 0.5), kScheme), 1e-10);
}

TEST(Action, BothGroups) {
  Rng g(57, 0);
  const int n = 2, d = 3;
  const cplx k(1.5, 0.5);
  const auto S = BracketSpec::S(k, n, d);
  const Action left = [=](const CMat& m, const CVec& x) {
    const SPoint p = spoint_from(x, n, d);
    return coords(SPoint(m * p.A, p.B * m.inverse()));
  };
  const Action right = [=](const CMat& m, const CVec& x) {
    const SPoint p = spoint_from(x, n, d);
    return coords(SPoint(p.A * m.inverse(), m * p.B));
  };
  const CVec x = g.vector(2 * n * d, 0.3);
  EXPECT_LT(action_residual(BracketSpec::GLmult(k, n), S, left, identity(n) + g.matrix(n, n, 0.1), x, kScheme), 1e-7);
  EXPECT_LT(action_residual(BracketSpec::GLmult(k, d), S, right, identity(d) + g.matrix(d, d, 0.1), x, kScheme), 1e-7);
  EXPECT_LT(action_residual(BracketSpec::GLmult(k, n), S, left, identity(n), x, kScheme), 1e-9);
  // wrong sign of κ on the group factor
  EXPECT_GT(action_residual(BracketSpec::GLmult(-k, d), S, right, identity(d) + g.matrix(d, d, 0.3), x, kScheme), 1e-4);
  EXPECT_THROW(action_residual(BracketSpec::GLmult(k, n), S, left, CMat::Zero(n, n), x, kScheme), Error);
}

TEST(BracketCoordFn, ConstantsCoordinatesLeibniz) {
  Rng g(58, 0);
  const int n = 2, d = 3, N = 2 * n * d;
  const cplx k(0.5, 1.0);
  const auto S = BracketSpec::S(k, n, d);
  const CVec x = g.vector(N, 0.5);
  const CMat P = evaluate(S, x);
  EXPECT_EQ(bracket_coord_fn(S, x, 3, [](const CVec&) { return cplx(2.5); }, kScheme), cplx(0.0));
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      const cplx v = bracket_coord_fn(S, x, p, [q](const CVec& y) { return y(q); }, kScheme, MapKind::Linear);
      EXPECT_LT(std::abs(v - P(p, q)), 1e-15);
    }
  const SPoint pt = spoint_from(x, n, d);
  for (int p = 0; p < N; ++p)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        auto Gjm = [=](const CVec& y) { return gamma(spoint_from(y, n, d))(j, m); };
        const cplx via = bracket_coord_fn(S, x, p, Gjm, kScheme, MapKind::Quadratic);
        cplx leibniz = 0.0;
        for (int b = 0; b < d; ++b)
          leibniz += P(p, j * d + b) * pt.B(b, m) + pt.A(j, b) * P(p, n * d + b * n + m);
        EXPECT_LT(std::abs(via - leibniz), 1e-14);
      }
  EXPECT_THROW(bracket_coord_fn(S, x, N, [](const CVec&) { return cplx(0.0); }, kScheme), Error);
}

TEST(Moment, ZeroAndRandom) {
  const MomentResiduals z = moment_residuals(1.0, SPoint::zero(2, 2), kScheme);
  EXPECT_LT(z.ga1, 1e-12);
  EXPECT_LT(z.ga2, 1e-12);
  Rng g(59, 0);
  const MomentResiduals r = moment_residuals({2.0, -1.0}, sample_spoint(g, 2, 2, 0.3), kScheme);
  EXPECT_LT(r.ga1, 1e-10);
  EXPECT_LT(r.ga2, 1e-10);
  EXPECT_LT(r.ga1prime, 1e-10);
  EXPECT_LT(r.ga2prime, 1e-10);
  EXPECT_LT(r.mom1_gamma, 1e-7);
  const MomentResiduals s = moment_residuals(1.0, sample_spoint(g, 3, 1, 0.3), kScheme);
  EXPECT_LT(s.mom1, 1e-7);
}

TEST(Moment, DetectsWrongKappa) {
  // relations written for κ must fail when the bracket uses 2κ
  Rng g(60, 0);
  const SPoint p = sample_spoint(g, 2, 2, 0.3);
  const int n = 2;
  const CVec x = coords(p);
  const CMat P2 = evaluate(BracketSpec::S(2.0, n, 2), x);
  const CMat JG = jacobian(entries_of([](const CVec& y) { return gamma(spoint_from(y, 2, 2)); }, MapKind::Quadratic), x,
                           kScheme);
  const CMat P1 = evaluate(BracketSpec::S(1.0, n, 2), x);
  EXPECT_LT(diff_max(bracket_tensor(P1, JG, n, n, JG, n, n), sts_tensor(1.0, gamma(p))), 1e-12);
  EXPECT_GT(diff_max(bracket_tensor(P2, JG, n, n, JG, n, n), sts_tensor(1.0, gamma(p))), 1e-3);
}

TEST(CopyBrackets, ZeroAndRandom) {
  const Lemma4Residuals z = lemma4_residuals(1.0, SpinTuple::zero(2, 3), kScheme);
  EXPECT_LT(z.max(), 1e-12);
  Rng g(61, 0);
  const Lemma4Residuals r = lemma4_residuals({1.0, 1.0}, sample_tuple(g, 2, 3, 0.3), kScheme);
  EXPECT_LT(r.max(), 1e-6);
}

TEST(Symplectic, HandValues) {
  CVec one(1);
  one << 1.0;
  const SpinPoint p(one, one);
  const CMat W = symplectic_matrix(2.0, p);
  EXPECT_LT(std::abs(W(0, 1) + 0.25), 1e-16);
  EXPECT_LT(std::abs(W(1, 0) - 0.25), 1e-16);
  EXPECT_LT(symplectic_inversion_residual(2.0, p), 1e-14);

  const cplx k(0.0, 2.0);
  const CMat W0 = symplectic_matrix(k, SpinPoint::zero(3));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(W0(i, 3 + i), -1.0 / k);
    EXPECT_EQ(W0(3 + i, i), 1.0 / k);
  }
  EXPECT_EQ(max_abs(W0) , std::abs(1.0 / k));
  EXPECT_LT(symplectic_inversion_residual(k, SpinPoint::zero(3)), 1e-15);
}

TEST(Symplectic, InverseOfBivector) {
  for (int n = 1; n <= 6; ++n) {
    Rng g(62, static_cast<std::uint64_t>(n));
    const SpinPoint p = sample_spin(g, n, 0.3);
    const cplx k(1.0, 1.0);
    const CMat P = evaluate(BracketSpec::S(k, n, 1), coords(p));
    // Ω is the inverse of Π and is antisymmetric
    const CMat W = symplectic_matrix(k, p);
    EXPECT_LT(max_abs(W - CMat(P.inverse())), 1e-10);
    EXPECT_LT(max_abs(W + W.transpose()), 1e-15);
  }
}

TEST(Symplectic, ZeroG) {
  CVec a(3), b(3);
  a << 0.5, 1.0, 0.0;
  b << 0.5, -1.0, 0.0;
  try {
    symplectic_matrix(1.0, {a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroG);
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Rank, OriginDegenerateZeroG) {
  for (int n = 2; n <= 4; ++n)
    for (int d = 2; d <= 4; ++d) {
      const auto S = BracketSpec::S(1.0, n, d);
      EXPECT_EQ(rank_at(S, CVec::Zero(2 * n * d), 1e-8), 2 * n * d);
      SPoint p = SPoint::zero(n, d);
      p.A(n - 1, 0) = 1.0;
      p.B(0, n - 1) = -1.0;
      EXPECT_EQ(rank_at(S, coords(p), 1e-8), 2 * (n - 1) * (d - 1));
    }
  CVec a(2), b(2);
  a << 0.5, 1.0;
  b << 0.5, -1.0;
  EXPECT_LT(rank_at(BracketSpec::S(1.0, 2, 1), coords(SpinPoint(a, b)), 1e-8), 4);
}

TEST(ZakCondition, Values) {
  EXPECT_LT(zak_condition_residual(HoloFn1::affine(2.0, 1.0), HoloFn1::constant(-1.0), 0.7), 1e-15);
  for (cplx t : {cplx(0.3), cplx(-1.0, 2.0)})
    EXPECT_EQ(zak_condition_residual(HoloFn1::affine(0.0, 1.0), HoloFn1::constant(0.0), t), 0.0);
  EXPECT_EQ(zak_condition_residual(HoloFn1::constant(1.0), HoloFn1::constant(0.0), 0.5), 0.5);
}
