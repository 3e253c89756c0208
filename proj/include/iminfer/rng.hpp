#pragma once

#include <array>
#include <cstdint>

namespace iminfer {

/// Philox4x32-10 block function: maps a 128-bit counter under a 64-bit key
/// to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator. The output sequence is a pure function of
/// (seed, stream), so stream i of a parallel run can be rebuilt anywhere
/// without replaying other streams.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent child stream identified by `tag`.
  StreamRng substream(std::uint64_t tag) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();

  /// Standard normal by inversion, so draws do not depend on any
  /// standard-library distribution implementation.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);

  double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// SplitMix64 finalizer; used to derive stream identifiers.
std::uint64_t mix64(std::uint64_t x);

}  // namespace iminfer
