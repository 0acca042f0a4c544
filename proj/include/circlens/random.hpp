#ifndef CIRCLENS_RANDOM_HPP
#define CIRCLENS_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace circlens {

// Philox4x32-10 (Salmon et al., Random123).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

// Stream (seed, replicate): key = seed, counter = (block_lo, block_hi, rep_lo, rep_hi).
// Distinct replicates never share a counter, so streams are independent and
// can be generated in any order.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t replicate);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  PhiloxKey key_;
  std::uint64_t replicate_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
};

}  // namespace circlens

#endif  // CIRCLENS_RANDOM_HPP
