#include <gtest/gtest.h>

#include "plie/sampling.hpp"

using namespace plie;

namespace {

CMat random_matrix(int r, int c, std::uint64_t idx) {
  Rng g(7, idx);
  return g.matrix(r, c, 1.0);
}

// (X⊗Y) flattened is the Kronecker product
CMat kron_dense(const CMat& x, const CMat& y) {
  CMat k(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return k;
}

}  // namespace

TEST(Tensor4, FlattenMatchesKronecker) {
  const CMat x = random_matrix(2, 3, 0), y = random_matrix(3, 2, 1);
  EXPECT_LT(max_abs(kron(x, y).flatten() - kron_dense(x, y)), 1e-15);
  const Tensor4 t = kron(x, y);
  EXPECT_EQ(Tensor4::unflatten(t.flatten(), 2, 3, 3, 2), t);
  EXPECT_THROW(Tensor4::unflatten(t.flatten(), 2, 2, 3, 2), Error);
}

TEST(Tensor4, LegMultiplicationIsKroneckerProduct) {
  const CMat x = random_matrix(2, 3, 2), y = random_matrix(3, 2, 3);
  const CMat m1 = random_matrix(4, 2, 4), m2 = random_matrix(2, 3, 5);
  const CMat r1 = random_matrix(3, 3, 6), r2 = random_matrix(2, 4, 7);
  const Tensor4 t = kron(x, y);
  EXPECT_LT(max_abs(leg1_left(m1, t).flatten() - kron_dense(m1 * x, y)), 1e-14);
  EXPECT_LT(max_abs(leg2_left(m2, t).flatten() - kron_dense(x, m2 * y)), 1e-14);
  EXPECT_LT(max_abs(leg1_right(t, r1).flatten() - kron_dense(x * r1, y)), 1e-14);
  EXPECT_LT(max_abs(leg2_right(t, r2).flatten() - kron_dense(x, y * r2)), 1e-14);
  EXPECT_THROW(leg1_left(m2, t), Error);
}

TEST(Tensor4, ComposeIsOperatorProduct) {
  const Tensor4 a = kron(random_matrix(2, 2, 8), random_matrix(3, 3, 9)) + kron(random_matrix(2, 2, 10), random_matrix(3, 3, 11));
  const Tensor4 b = kron(random_matrix(2, 2, 12), random_matrix(3, 3, 13));
  EXPECT_LT(max_abs(compose(a, b).flatten() - a.flatten() * b.flatten()), 1e-14);
}

TEST(Tensor4, SwapAndAct) {
  const CMat x = random_matrix(2, 3, 14), y = random_matrix(4, 2, 15);
  EXPECT_EQ(swap_legs(kron(x, y)), kron(y, x));
  const CMat v = random_matrix(3, 2, 16);
  // (X⊗Y) v = X v Yᵀ
  EXPECT_LT(max_abs(act(kron(x, y), v) - x * v * y.transpose()), 1e-14);
}

TEST(Elementary, OneBasedAndChecked) {
  const CMat e = elementary(3, 1, 3);
  EXPECT_EQ(e(0, 2), cplx(1.0));
  EXPECT_EQ(max_abs(e), 1.0);
  EXPECT_EQ(elementary(2, 3, 2, 3)(1, 2), cplx(1.0));
  EXPECT_THROW(elementary(3, 0, 1), Error);
  EXPECT_THROW(elementary(3, 1, 4), Error);
  try {
    elementary(0, 1, 1);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InvalidArgument);
  }
}

TEST(RMatrix, DrinfeldJimboShape) {
  for (int l = 1; l <= 4; ++l) {
    const Tensor4 r = dj_r(l);
    // antisymmetric
    EXPECT_EQ((r + swap_legs(r)).max_abs(), 0.0);
    // r± = r ± ½I and r₊ − r₋ = I
    EXPECT_EQ((r_pm(l, +1) - r_pm(l, -1) - casimir(l)).max_abs(), 0.0);
    EXPECT_EQ((r_pm(l, +1) + swap_legs(r_pm(l, -1))).max_abs(), 0.0);
  }
  Tensor4 expect(2, 2, 2, 2);
  expect(0, 1, 1, 0) = 0.5;
  expect(1, 0, 0, 1) = -0.5;
  EXPECT_EQ(dj_r(2), expect);
  EXPECT_THROW(r_pm(2, 0), Error);
}

TEST(RMatrix, ClassicalYangBaxter) {
  // r₊ solves the classical Yang-Baxter equation; r itself the modified one
  const int l = 3, L = l * l * l;
  const CMat r = dj_r(l).flatten(), rp = r_pm(l, +1).flatten();
  const CMat I = CMat::Identity(l, l);
  auto embed12 = [&](const CMat& m) { return kron_dense(m, I); };
  auto embed23 = [&](const CMat& m) { return kron_dense(I, m); };
  CMat P23 = CMat::Zero(L, L);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      for (int c = 0; c < l; ++c) P23((a * l + c) * l + b, (a * l + b) * l + c) = 1.0;
  const CMat r12 = embed12(r), r23 = embed23(r), r13 = P23 * r12 * P23;
  auto br = [](const CMat& a, const CMat& b) -> CMat { return a * b - b * a; };
  const CMat flip = casimir(l).flatten();
  const CMat i12 = embed12(flip), i13 = P23 * i12 * P23;
  const CMat cybe = br(r12, r13) + br(r12, r23) + br(r13, r23);
  EXPECT_LT(max_abs(cybe + 0.25 * br(i12, i13)), 1e-14);
  const CMat p12 = embed12(rp), p23 = embed23(rp), p13 = P23 * p12 * P23;
  EXPECT_LT(max_abs(br(p12, p13) + br(p12, p23) + br(p13, p23)), 1e-14);
}

TEST(C12, Entries) {
  const Tensor4 c = c12(2, 3);
  EXPECT_EQ(c.dims(), (std::array<int, 4>{2, 3, 3, 2}));
  EXPECT_EQ(c(1, 2, 2, 1), cplx(1.0));
  EXPECT_EQ(c(1, 2, 1, 1), cplx(0.0));
  double sum = 0.0;
  for (const auto& z : c.entries()) sum += z.real();
  EXPECT_EQ(sum, 6.0);
}

TEST(Eta, Involution) {
  for (int l = 1; l <= 5; ++l) {
    const CMat e = eta(l);
    EXPECT_EQ(max_abs(e * e - identity(l)), 0.0);
    EXPECT_EQ(e(0, l - 1), cplx(1.0));
  }
}

TEST(Finite, Guards) {
  CMat a = CMat::Zero(2, 2);
  EXPECT_TRUE(all_finite(a));
  a(1, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_FALSE(all_finite(a));
  EXPECT_THROW(require_finite(a, "a"), Error);
  EXPECT_THROW(Tensor4(2, 0, 1, 1), Error);
}
