#ifndef SPECNET_RNG_HPP
#define SPECNET_RNG_HPP

// Counter-based random streams. Every sample is a pure function of
// (seed, stream id, position), so replications can run in any order or in
// parallel and still reproduce bit-for-bit.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "specnet/error.hpp"

namespace specnet {

namespace detail {
__extension__ using u128 = unsigned __int128;
}  // namespace detail

/// Philox4x64-10 block function (Salmon et al., Random123).
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static constexpr void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                                std::uint64_t& lo) noexcept {
    const detail::u128 p = static_cast<detail::u128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  static constexpr Counter single_round(const Counter& c, const Key& k) noexcept {
    std::uint64_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A reproducible random stream identified by (seed, stream id). The Philox key
/// is a hash of both; the counter walks 0, 1, 2, ... Not thread-safe: give each
/// thread its own stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {
    key_[0] = mix64(seed);
    key_[1] = mix64(stream_id ^ mix64(key_[0]));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Independent child stream; depends only on (seed, stream id, sub), never on
  /// how much of this stream has been consumed.
  RngStream derive(std::uint64_t sub) const noexcept {
    return RngStream(mix64(key_[0] ^ mix64(key_[1] + 0x632BE59BD9B4E019ULL)), sub);
  }

  std::uint64_t next_u64() noexcept {
    if (used_ == 4) {
      buffer_ = Philox4x64::block({counter_, 0, 0, 0}, key_);
      ++counter_;
      used_ = 0;
    }
    return buffer_[used_++];
  }

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("RngStream::below: empty range");
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = next_u64();
    detail::u128 m = static_cast<detail::u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<detail::u128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double exponential(double rate) noexcept { return -std::log(uniform()) / rate; }

  /// Zero-mean Laplace with the given scale (variance 2 scale^2).
  double laplace(double scale) noexcept {
    const double u = uniform() - 0.5;
    const double mag = -std::log(1.0 - 2.0 * std::abs(u));
    return u < 0 ? -scale * mag : scale * mag;
  }

  /// Gamma(shape, scale) by Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape, double scale) noexcept {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0, 1.0);
      return scale * g * std::pow(uniform(), 1.0 / shape);
    }
    const double dd = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * dd);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return scale * dd * v;
      if (std::log(u) < 0.5 * x * x + dd * (1.0 - v + std::log(v))) return scale * dd * v;
    }
  }

  bool bernoulli(double q) noexcept { return uniform() < q; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  Philox4x64::Key key_{};
  std::uint64_t counter_ = 0;
  Philox4x64::Counter buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace specnet

#endif  // SPECNET_RNG_HPP
