#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>
#include <string>

#include "plie/charts.hpp"

namespace plie {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-sample generator: the stream for (seed, index) does not depend on how samples are scheduled.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index) : eng_(mix64(seed ^ mix64(index + 0x5bd1e995ULL))) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in the closed disk |z| ≤ radius.
  cplx disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double phi = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, phi);
  }

  CMat matrix(int rows, int cols, double radius) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = disk(radius);
    return m;
  }

  CVec vector(int size, double radius) {
    CVec v(size);
    for (int i = 0; i < size; ++i) v(i) = disk(radius);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

inline SPoint sample_spoint(Rng& g, int n, int d, double radius) {
  CMat A = g.matrix(n, d, radius);
  CMat B = g.matrix(d, n, radius);
  return {std::move(A), std::move(B)};
}

inline SpinPoint sample_spin(Rng& g, int n, double radius) {
  CVec a = g.vector(n, radius);
  CVec b = g.vector(n, radius);
  return {std::move(a), std::move(b)};
}

inline SpinTuple sample_tuple(Rng& g, int n, int d, double radius) {
  std::vector<SpinPoint> copies;
  for (int a = 0; a < d; ++a) copies.push_back(sample_spin(g, n, radius));
  return SpinTuple(std::move(copies));
}

/// Off-diagonal entries in the disk of the given radius; diagonal of h₊ with modulus in
/// [1/2, 1] and argument in (−π/2, π/2) so that h₊h₋⁻¹ stays on the principal branch.
inline DualPair sample_dual(Rng& g, int l, double radius) {
  CMat hp = CMat::Zero(l, l), hm = CMat::Zero(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) hp(i, j) = g.disk(radius);
  for (int i = 0; i < l; ++i) {
    const double mod = 0.5 + 0.5 * g.uniform();
    const double arg = (g.uniform() - 0.5) * 0.9 * std::numbers::pi;
    hp(i, i) = std::polar(mod, arg);
    hm(i, i) = 1.0 / hp(i, i);
  }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < i; ++j) hm(i, j) = g.disk(radius);
  return {std::move(hp), std::move(hm)};
}

/// FNV-1a over the real and imaginary parts, as 16 hex digits.
inline std::string digest(const CVec& x) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    feed(x(i).real());
    feed(x(i).imag());
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) s[static_cast<std::size_t>(k)] = hex[h & 0xf];
  return s;
}

}  // namespace plie
