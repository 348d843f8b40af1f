#pragma once

#include <cstdint>
#include <random>

namespace bidlab {

// Seeded uniform stream.
//
// The engine is std::mt19937_64 seeded through std::seed_seq with the words
// {seed low 32 bits, seed high 32 bits, stream id}. Both are fully specified
// by the C++ standard, and doubles are formed from the top 53 bits of each
// 64-bit output, so a (seed, stream) pair yields the same sequence on every
// conforming platform. std::uniform_real_distribution is deliberately not
// used because its algorithm is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint32_t stream = 0);

  // Uniform on [0, 1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint32_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
  std::mt19937_64 engine_;
};

// Sub-seed for replication `rep` of an experiment: master XOR rep.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint64_t rep) {
  return master ^ rep;
}

}  // namespace bidlab
