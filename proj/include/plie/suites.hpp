#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "plie/sampling.hpp"
#include "plie/verify.hpp"

namespace plie {

/// Invalid user configuration (sizes, tolerances, suite name, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An evaluation error inside a suite, tagged with the failing sample.
class SuiteError : public std::runtime_error {
 public:
  SuiteError(const std::string& what, std::uint64_t index, std::string digest)
      : std::runtime_error(what), index_(index), digest_(std::move(digest)) {}
  std::uint64_t index() const noexcept { return index_; }
  const std::string& digest() const noexcept { return digest_; }

 private:
  std::uint64_t index_;
  std::string digest_;
};

struct RunConfig {
  std::string suite = "jacobi";
  int n = 2;
  int d = 2;
  int l = 2;
  cplx kappa{1.0, 0.0};
  std::uint64_t seed = 42;
  std::uint64_t samples = 25;
  double radius = 0.0;  // 0 selects the suite default
  double tol_exact = 1e-10;
  double tol_fd = 1e-7;
  double fd_step = 1e-5;
  std::string out;  // empty: stdout
  unsigned threads = 0;  // 0: hardware parallelism

  void validate() const {
    if (n < 1) throw ConfigError("n must be ≥ 1");
    if (d < 1) throw ConfigError("d must be ≥ 1");
    if (l < 1) throw ConfigError("l must be ≥ 1");
    if (samples < 1) throw ConfigError("samples must be ≥ 1");
    if (radius < 0.0 || !std::isfinite(radius)) throw ConfigError("radius must be > 0");
    if (!(tol_exact > 0.0) || !(tol_fd > 0.0)) throw ConfigError("tolerances must be > 0");
    if (!(fd_step >= 1e-9 && fd_step <= 1e-2)) throw ConfigError("fd-step must lie in [1e-9, 1e-2]");
    if (kappa == cplx(0.0) || !std::isfinite(kappa.real()) || !std::isfinite(kappa.imag()))
      throw ConfigError("kappa must be nonzero");
  }

  double radius_or(double fallback) const { return radius > 0.0 ? radius : fallback; }
  DiffScheme scheme() const { return {fd_step, true, DiffScheme::Direction::RealAxis}; }
};

struct Failure {
  std::uint64_t index = 0;
  double residual = 0.0;
  std::string digest;
};

struct VerificationReport {
  std::string suite;
  std::string spec;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = true;
  std::vector<Failure> failures;
  std::vector<std::pair<std::string, double>> metrics;
};

inline constexpr double kFactidTolerance = 1e-12;
inline constexpr double kZakTolerance = 1e-8;
inline constexpr double kRankSvTolerance = 1e-8;

struct CheckDef {
  std::string name;
  double tolerance;
};

inline std::string kappa_str(cplx k) {
  std::ostringstream os;
  os.precision(17);
  os << k.real() << (k.imag() < 0 ? "-" : "+") << std::abs(k.imag()) << "i";
  return os.str();
}

inline std::uint64_t name_salt(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Runs fn(rng, digest) for every sample index and turns the residual vectors into one report per
/// check. Samples run in parallel; aggregation is by index.
template <class Fn>
std::vector<VerificationReport> sweep(const RunConfig& cfg, const std::string& group, const std::string& spec,
                                      const std::vector<CheckDef>& checks, std::uint64_t samples, Fn fn) {
  const auto N = static_cast<std::size_t>(samples);
  std::vector<std::vector<double>> res(N);
  std::vector<std::string> digests(N);
  std::vector<std::optional<std::string>> errors(N);
  std::atomic<std::size_t> next{0};
  const std::uint64_t salt = cfg.seed ^ name_salt(group);

  auto worker = [&] {
    for (std::size_t i = next++; i < N; i = next++) {
      try {
        Rng rng(salt, i);
        res[i] = fn(rng, digests[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  unsigned T = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  T = static_cast<unsigned>(std::min<std::size_t>(T, N));
  if (T <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < T; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < N; ++i)
    if (errors[i]) throw SuiteError(group + ": sample " + std::to_string(i) + ": " + *errors[i], i, digests[i]);

  std::vector<VerificationReport> out;
  for (std::size_t c = 0; c < checks.size(); ++c) {
    VerificationReport r;
    r.suite = group + "/" + checks[c].name;
    r.spec = spec;
    r.seed = cfg.seed;
    r.samples = samples;
    r.tolerance = checks[c].tolerance;
    for (std::size_t i = 0; i < N; ++i) {
      double v = res[i].at(c);
      if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
      r.max_residual = std::max(r.max_residual, v);
      if (!(v <= r.tolerance)) r.failures.push_back({i, v, digests[i]});
    }
    r.pass = r.failures.empty();
    out.push_back(std::move(r));
  }
  return out;
}

namespace suites {

using Reports = std::vector<VerificationReport>;

inline void append(Reports& to, Reports from) {
  for (auto& r : from) to.push_back(std::move(r));
}

inline std::string sizes(const RunConfig& c) {
  return "n=" + std::to_string(c.n) + ",d=" + std::to_string(c.d) + ",kappa=" + kappa_str(c.kappa);
}

inline Reports jacobi(const RunConfig& c) {
  const double rad = c.radius_or(1.0);
  const DiffScheme s = c.scheme();
  Reports out;
  auto one = [&](const BracketSpec& spec, const std::string& label, auto sample) {
    append(out, sweep(c, "jacobi", label, {{to_string(spec.kind), c.tol_exact}}, c.samples,
                      [&](Rng& g, std::string& dig) {
                        const CVec x = sample(g);
                        dig = digest(x);
                        return std::vector<double>{jacobi_residual(spec, x, s)};
                      }));
  };
  const std::string nd = sizes(c), ls = "l=" + std::to_string(c.l) + ",kappa=" + kappa_str(c.kappa);
  for (auto kind : {BracketKind::S, BracketKind::AOplus, BracketKind::AOminus, BracketKind::Prime, BracketKind::Product}) {
    const auto spec = BracketSpec::s_family(kind, c.kappa, c.n, c.d);
    one(spec, nd, [&](Rng& g) { return g.vector(spec.dim(), rad); });
  }
  for (auto kind : {BracketKind::GLmult, BracketKind::Double, BracketKind::STS}) {
    const auto spec = BracketSpec::group(kind, c.kappa, c.l);
    one(spec, ls, [&](Rng& g) { return g.vector(spec.dim(), rad); });
  }
  one(BracketSpec::DualGroup(c.kappa, c.l), ls, [&](Rng& g) { return coords(sample_dual(g, c.l, rad)); });
  return out;
}

inline double rel(const CMat& a, const CMat& b) { return max_abs(a - b) / std::max(1.0, max_abs(b)); }

inline double tuple_diff(const SpinTuple& a, const SpinTuple& b) {
  return max_abs(coords(a) - coords(b)) / std::max(1.0, max_abs(coords(b)));
}

inline Reports decouple_m(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n, d = c.d;
  const auto src = BracketSpec::Product(c.kappa, n, d), tgt = BracketSpec::S(c.kappa, n, d);
  const HoloMap m{[n, d](const CVec& x) { return coords(map_m(tuple_from(x, n, d))); }, MapKind::General};
  return sweep(c, "decouple-m", sizes(c), {{"poisson", c.tol_fd}, {"round-trip", c.tol_exact}}, c.samples,
               [&](Rng& g, std::string& dig) {
                 const SpinTuple t = sample_tuple(g, n, d, rad);
                 const CVec x = coords(t);
                 dig = digest(x);
                 const SPoint p = map_m(t);
                 const double rt = std::max(tuple_diff(map_m_inverse(p), t),
                                            rel(coords(map_m(map_m_inverse(p))), coords(p)));
                 return std::vector<double>{poisson_map_residual(src, tgt, m, x, s), rt};
               });
}

inline Reports decouple_F(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n, d = c.d;
  const cplx k = c.kappa;
  const auto src = BracketSpec::Product(k, n, d);
  const auto prime = BracketSpec::Prime(k, n, d), plus = BracketSpec::AOplus(k, n, d);
  const cplx thA = 1.0, thB = -1.0 / k;
  const HoloMap F{[n, d](const CVec& x) { return coords(map_F(tuple_from(x, n, d))); }, MapKind::General};
  const HoloMap thF{[n, d, thA, thB, k](const CVec& x) { return coords(map_theta(map_F(tuple_from(x, n, d)), thA, thB, k)); },
                    MapKind::General};
  return sweep(c, "decouple-F", sizes(c),
               {{"poisson-prime", c.tol_fd}, {"poisson-theta", c.tol_fd}, {"round-trip", c.tol_exact},
                {"aores", c.tol_exact}, {"hatother", c.tol_exact}},
               c.samples, [&](Rng& g, std::string& dig) {
                 const SpinTuple t = sample_tuple(g, n, d, rad);
                 const CVec x = coords(t);
                 dig = digest(x);
                 const SPoint p = map_F(t);
                 const double rt = std::max(tuple_diff(map_F_inverse(p), t), rel(coords(map_F(map_F_inverse(p))), coords(p)));
                 const SPoint q = map_theta(p, thA, thB, k);
                 const DualPair G = calG_pm(t);
                 const double aores =
                     rel(identity(n) + k * q.A * q.B, upper_inverse(G.hplus) * G.hminus);
                 const CopyFactors f = CopyFactors::of(t, d);
                 double hat = 0.0;
                 for (int a = 1; a <= d; ++a) {
                   const CMat lhs = identity(n) - f.h_plus(a + 1, d) * p.A.col(a - 1) * p.B.row(a - 1) *
                                                      f.h_minus(a + 1, d);
                   const CMat rhs = upper_inverse(f.gplus[static_cast<std::size_t>(a - 1)]) *
                                    lower_inverse(f.gminus_inv[static_cast<std::size_t>(a - 1)]);
                   hat = std::max(hat, rel(lhs, rhs));
                 }
                 return std::vector<double>{poisson_map_residual(src, prime, F, x, s),
                                            poisson_map_residual(src, plus, thF, x, s), rt, aores, hat};
               });
}

inline Reports factorization(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const int n = c.n, d = c.d;
  return sweep(c, "factorization", sizes(c),
               {{"factid1", kFactidTolerance},
                {"factid2", kFactidTolerance},
                {"gauss", c.tol_exact},
                {"chi-round-trip", c.tol_exact},
                {"gamma-vs-gpm", c.tol_exact},
                {"iotagg", c.tol_exact},
                {"iotahh", c.tol_exact}},
               c.samples, [&](Rng& g, std::string& dig) {
                 const SpinTuple t = sample_tuple(g, n, d, rad);
                 dig = digest(coords(t));
                 double f1 = 0.0;
                 for (const auto& q : t.copies()) {
                   const DualPair gp = g_pm(q);
                   const CMat lhs = identity(n) + q.a * q.b.transpose();
                   f1 = std::max(f1, max_abs(lhs - gp.hplus * lower_inverse(gp.hminus)) / (1.0 + q.a.norm() * q.b.norm()));
                 }
                 const SPoint p = map_m(t);
                 const DualPair G = calG_pm(t);
                 const double f2 = max_abs(gamma(p) - G.hplus * lower_inverse(G.hminus)) / (1.0 + p.A.norm() * p.B.norm());

                 const CMat M = identity(n) + g.matrix(n, n, rad / n);
                 const GaussFactors gf = gauss(M);
                 const double ga = rel(gf.upper * gf.diag * gf.lower, M);

                 const DualPair h = sample_dual(g, n, rad);
                 const CMat hm = chi(h);
                 const DualPair back = chi_inverse_local(hm);
                 const double chi_rt = std::max({rel(chi(back), hm), rel(back.hplus, h.hplus), rel(back.hminus, h.hminus)});

                 const SpinPoint& q0 = t[0];
                 const DualPair viaG = gamma_pm(SPoint(CMat(q0.a), CMat(q0.b.transpose())));
                 const DualPair direct = g_pm(q0);
                 const double gvg = std::max(rel(viaG.hplus, direct.hplus), rel(viaG.hminus, direct.hminus));

                 const SpinTuple it = iota(t);
                 double igg = 0.0;
                 for (int a = 0; a < d; ++a) {
                   const DualPair x = g_pm(t[a]), y = g_pm(it[a]);
                   igg = std::max({igg, rel(y.hplus, lower_inverse(x.hminus).transpose()),
                                   rel(lower_inverse(y.hminus), x.hplus.transpose())});
                 }
                 const CopyFactors fx = CopyFactors::of(t, d), fy = CopyFactors::of(it, d);
                 double ihh = 0.0;
                 for (int a = 1; a <= d; ++a)
                   for (int b = a; b <= d; ++b)
                     ihh = std::max({ihh, rel(fy.h_plus(a, b), fx.h_minus(a, b).transpose()),
                                     rel(fy.h_minus(a, b), fx.h_plus(a, b).transpose())});
                 return std::vector<double>{f1, f2, ga, chi_rt, gvg, igg, ihh};
               });
}

inline Reports ao_maps(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n, d = c.d;
  const cplx k = c.kappa;
  const auto S = BracketSpec::S(k, n, d);
  const auto prod = BracketSpec::Product(k, n, d);
  const auto zak = BracketSpec::ZakC(k, n, HoloFn1::affine(2.0, 1.0), HoloFn1::constant(-1.0));
  const cplx xiA = 1.0, xiB = -1.0 / k, thA = 2.0, thB = -1.0 / (2.0 * k);
  const HoloMap xi{[=](const CVec& x) { return coords(map_xi(spoint_from(x, n, d), xiA, xiB, k)); }, MapKind::Linear};
  const HoloMap nu{[=](const CVec& x) { return coords(map_nu(spoint_from(x, n, d))); }, MapKind::Linear};
  const HoloMap th{[=](const CVec& x) { return coords(map_theta(spoint_from(x, n, d), thA, thB, k)); }, MapKind::Linear};
  const HoloMap et{[=](const CVec& x) {
                     const SPoint p = spoint_from(x, n, d);
                     return coords(SPoint(p.A * eta(d), eta(d) * p.B));
                   },
                   MapKind::Linear};
  const HoloMap io{[=](const CVec& x) { return coords(iota(tuple_from(x, n, d))); }, MapKind::Linear};
  const HoloMap io1{[=](const CVec& x) { return coords(iota(tuple_from(x, n, 1))); }, MapKind::Linear};
  return sweep(c, "ao-maps", sizes(c),
               {{"xi", c.tol_exact},
                {"nu", c.tol_exact},
                {"theta", c.tol_exact},
                {"eta-minus", c.tol_exact},
                {"iota-product", c.tol_exact},
                {"iota-zak", c.tol_exact}},
               c.samples, [&](Rng& g, std::string& dig) {
                 const CVec x = g.vector(2 * n * d, rad);
                 const CVec z = g.vector(2 * n, rad);
                 dig = digest(x);
                 return std::vector<double>{
                     poisson_map_residual(S, BracketSpec::AOplus(-k, n, d), xi, x, s),
                     poisson_map_residual(S, BracketSpec::S(-k, d, n), nu, x, s),
                     poisson_map_residual(BracketSpec::Prime(k, n, d), BracketSpec::AOplus(k, n, d), th, x, s),
                     poisson_map_residual(BracketSpec::AOminus(k, n, d), BracketSpec::AOplus(k, n, d), et, x, s),
                     anti_poisson_residual(prod, io, x, s),
                     anti_poisson_residual(zak, io1, z, s)};
               });
}

inline Reports moment(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n, d = c.d;
  const cplx k = c.kappa;
  const auto S = BracketSpec::S(k, n, d), S1 = BracketSpec::S(k, n, 1), prod = BracketSpec::Product(k, n, d);
  const auto dual = BracketSpec::DualGroup(k, n), sts = BracketSpec::STS(k, n);
  const HoloMap gpm{[](const CVec& x) { return coords(g_pm(spin_from(x))); }, MapKind::General};
  const HoloMap cG{[n, d](const CVec& x) { return coords(calG_pm(tuple_from(x, n, d))); }, MapKind::General};
  const HoloMap Gpm{[n, d](const CVec& x) { return coords(gamma_pm(spoint_from(x, n, d))); }, MapKind::General};
  const HoloMap Gam{[n, d](const CVec& x) { return coords(gamma(spoint_from(x, n, d))); }, MapKind::Quadratic};
  const HoloMap ch{[n](const CVec& x) { return coords(chi(dual_from(x, n))); }, MapKind::General};
  return sweep(c, "moment", sizes(c),
               {{"ga1", c.tol_exact},
                {"ga2", c.tol_exact},
                {"ga1prime", c.tol_exact},
                {"ga2prime", c.tol_exact},
                {"mom1-gpm", c.tol_fd},
                {"mom1-gamma", c.tol_fd},
                {"gpm-dual", c.tol_fd},
                {"calG-dual", c.tol_fd},
                {"gammapm-dual", c.tol_fd},
                {"gamma-sts", c.tol_exact},
                {"chi-sts", c.tol_fd}},
               c.samples, [&](Rng& g, std::string& dig) {
                 const SpinTuple t = sample_tuple(g, n, d, rad);
                 const SPoint p = sample_spoint(g, n, d, rad);
                 const DualPair h = sample_dual(g, n, rad);
                 dig = digest(coords(p));
                 const MomentResiduals m = moment_residuals(k, p, s);
                 return std::vector<double>{m.ga1,
                                            m.ga2,
                                            m.ga1prime,
                                            m.ga2prime,
                                            m.mom1,
                                            m.mom1_gamma,
                                            poisson_map_residual(S1, dual, gpm, coords(t[0]), s),
                                            poisson_map_residual(prod, dual, cG, coords(t), s),
                                            poisson_map_residual(S, dual, Gpm, coords(p), s),
                                            poisson_map_residual(S, sts, Gam, coords(p), s),
                                            poisson_map_residual(dual, sts, ch, coords(h), s)};
               });
}

inline Reports lemma4(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  return sweep(c, "lemma4", sizes(c),
               {{"a-hplus", c.tol_fd},
                {"b-hplus", c.tol_fd},
                {"a-hminus", c.tol_fd},
                {"b-hminus", c.tol_fd},
                {"hplus-hplus", c.tol_fd},
                {"hplus-hminus-le", c.tol_fd},
                {"hplus-hminus-ge", c.tol_fd}},
               c.samples, [&](Rng& g, std::string& dig) {
                 const SpinTuple t = sample_tuple(g, c.n, c.d, rad);
                 dig = digest(coords(t));
                 const Lemma4Residuals r = lemma4_residuals(c.kappa, t, s);
                 return std::vector<double>{r.l41[0], r.l41[1], r.l41[2], r.l41[3], r.l42[0], r.l42[1], r.l42[2]};
               });
}

/// The point a₁ = b₁ = 1/2, a₂ = 1, b₂ = −1 (other entries 0) of S(n,1), n ≥ 2: G₂ = 0, G₁ = 1/4.
inline SpinPoint zero_g_point(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "needs n >= 2");
  CVec a = CVec::Zero(n), b = CVec::Zero(n);
  a(0) = 0.5;
  b(0) = 0.5;
  a(1) = 1.0;
  b(1) = -1.0;
  return {a, b};
}

/// A(n,1) = 1, B(1,n) = −1, all other entries 0.
inline SPoint degenerate_point(int n, int d) {
  SPoint p = SPoint::zero(n, d);
  p.A(n - 1, 0) = 1.0;
  p.B(0, n - 1) = -1.0;
  return p;
}

inline Reports symplectic(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  Reports out = sweep(c, "symplectic", "n=" + std::to_string(c.n) + ",kappa=" + kappa_str(c.kappa),
                      {{"inversion", c.tol_exact}}, c.samples, [&](Rng& g, std::string& dig) {
                        const SpinPoint p = sample_spin(g, c.n, rad);
                        dig = digest(coords(p));
                        return std::vector<double>{symplectic_inversion_residual(c.kappa, p)};
                      });
  if (c.n >= 2) {
    append(out, sweep(c, "symplectic", "n=" + std::to_string(c.n), {{"zero-g", 0.0}}, 1, [&](Rng&, std::string& dig) {
             const SpinPoint p = zero_g_point(c.n);
             dig = digest(coords(p));
             try {
               symplectic_matrix(c.kappa, p);
             } catch (const Error& e) {
               if (e.code() == ErrorCode::ZeroG && e.index() == 2) return std::vector<double>{0.0};
             }
             return std::vector<double>{1.0};
           }));
  }
  return out;
}

inline Reports rank(const RunConfig& c) {
  const int n = c.n, d = c.d;
  const auto S = BracketSpec::S(c.kappa, n, d);
  Reports out;
  auto check = [&](const std::string& name, const std::string& spec, const BracketSpec& b, const CVec& x, int expected,
                   bool drop_only) {
    const int rk = rank_at(b, x, kRankSvTolerance);
    VerificationReport r;
    r.suite = "rank/" + name;
    r.spec = spec;
    r.seed = c.seed;
    r.samples = 1;
    r.tolerance = 0.0;
    r.max_residual = drop_only ? (rk < expected ? 0.0 : 1.0) : std::abs(rk - expected);
    r.pass = r.max_residual <= r.tolerance;
    if (!r.pass) r.failures.push_back({0, r.max_residual, digest(x)});
    r.metrics = {{"rank", rk}, {drop_only ? "full_rank" : "expected", expected}};
    out.push_back(std::move(r));
  };
  check("degenerate", sizes(c), S, coords(degenerate_point(n, d)), 2 * (n - 1) * (d - 1), false);
  check("origin", sizes(c), S, coords(SPoint::zero(n, d)), 2 * n * d, false);
  if (n >= 2)
    check("zero-g", "n=" + std::to_string(n) + ",d=1", BracketSpec::S(c.kappa, n, 1), coords(zero_g_point(n)), 2 * n,
          true);
  return out;
}

inline Reports zakrzewski(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n;
  const HoloFn1 F1 = HoloFn1::affine(2.0, 1.0), G1 = HoloFn1::constant(-1.0);
  const HoloFn1 F2 = HoloFn1::affine(0.0, 1.0), G2 = HoloFn1::constant(0.0);
  const HoloFn1 F3 = HoloFn1::constant(1.0), G3 = HoloFn1::constant(0.0);
  const auto c1 = BracketSpec::ZakC(c.kappa, n, F1, G1), c2 = BracketSpec::ZakC(c.kappa, n, F2, G2);
  const auto r1 = BracketSpec::ZakR(1.0, n, F1, G1), r2 = BracketSpec::ZakR(1.0, n, F2, G2);
  const auto bad = BracketSpec::ZakC(c.kappa, n, F3, G3);
  std::vector<CheckDef> checks = {{"complex-2+t", kZakTolerance}, {"complex-t", kZakTolerance},
                                  {"real-2+t", kZakTolerance},    {"real-t", kZakTolerance},
                                  {"condition", kFactidTolerance}};
  // the constant pair (1, 0) violates the condition; its Jacobi residual must exceed 1e-4,
  // reported as the ratio 1e-4 / residual against tolerance 1
  if (n >= 2) checks.push_back({"non-poisson-margin", 1.0});
  return sweep(c, "zakrzewski", "n=" + std::to_string(n) + ",kappa=" + kappa_str(c.kappa), checks, c.samples,
               [&](Rng& g, std::string& dig) {
                 const CVec x = g.vector(2 * n, rad);
                 const CVec u = g.vector(n, rad);
                 CVec ru(2 * n);
                 ru << u, u.conjugate();
                 const cplx t = g.disk(1.0);
                 dig = digest(x);
                 std::vector<double> v{jacobi_residual(c1, x, s), jacobi_residual(c2, x, s), jacobi_residual(r1, ru, s),
                                       jacobi_residual(r2, ru, s),
                                       std::max(zak_condition_residual(F1, G1, t), zak_condition_residual(F2, G2, t))};
                 if (n >= 2) v.push_back(1e-4 / jacobi_residual(bad, x, s));
                 return v;
               });
}

inline Reports actions(const RunConfig& c) {
  const double rad = c.radius_or(0.3);
  const DiffScheme s = c.scheme();
  const int n = c.n, d = c.d;
  const auto S = BracketSpec::S(c.kappa, n, d);
  const Action left = [n, d](const CMat& g, const CVec& x) {
    const SPoint p = spoint_from(x, n, d);
    return coords(SPoint(g * p.A, p.B * g.inverse()));
  };
  const Action right = [n, d](const CMat& g, const CVec& x) {
    const SPoint p = spoint_from(x, n, d);
    return coords(SPoint(p.A * g.inverse(), g * p.B));
  };
  return sweep(c, "actions", sizes(c), {{"gl-n", c.tol_fd}, {"gl-d", c.tol_fd}}, c.samples,
               [&](Rng& g, std::string& dig) {
                 const CVec x = g.vector(2 * n * d, rad);
                 const CMat gn = identity(n) + g.matrix(n, n, rad / n);
                 const CMat gd = identity(d) + g.matrix(d, d, rad / d);
                 dig = digest(x);
                 return std::vector<double>{action_residual(BracketSpec::GLmult(c.kappa, n), S, left, gn, x, s),
                                            action_residual(BracketSpec::GLmult(c.kappa, d), S, right, gd, x, s)};
               });
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"jacobi", "decouple-m", "decouple-F", "factorization",
                                                 "ao-maps", "moment",     "lemma4",     "symplectic",
                                                 "rank",    "zakrzewski", "actions",    "all"};
  return names;
}

/// Every check of the named suite; "all" concatenates the others in list order.
inline std::vector<VerificationReport> run_checks(const RunConfig& c) {
  c.validate();
  const std::string& s = c.suite;
  if (s == "jacobi") return suites::jacobi(c);
  if (s == "decouple-m") return suites::decouple_m(c);
  if (s == "decouple-F") return suites::decouple_F(c);
  if (s == "factorization") return suites::factorization(c);
  if (s == "ao-maps") return suites::ao_maps(c);
  if (s == "moment") return suites::moment(c);
  if (s == "lemma4") return suites::lemma4(c);
  if (s == "symplectic") return suites::symplectic(c);
  if (s == "rank") return suites::rank(c);
  if (s == "zakrzewski") return suites::zakrzewski(c);
  if (s == "actions") return suites::actions(c);
  if (s == "all") {
    std::vector<VerificationReport> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      RunConfig sub = c;
      sub.suite = name;
      suites::append(all, run_checks(sub));
    }
    return all;
  }
  throw ConfigError("unknown suite '" + s + "'");
}

}  // namespace plie
