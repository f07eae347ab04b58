#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gprates {

/// Mixes a base seed with stream tags (replicate index, ladder n, ...) so that
/// every replicate owns an independent, order-free random stream.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// Seeded generator with platform-independent uniform and normal draws
/// (std:: distributions are implementation-defined, the engine is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double student_t(double df);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gprates
