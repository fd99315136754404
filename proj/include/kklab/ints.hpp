#pragma once
// Shared exact-arithmetic base: arbitrary-precision integers and the
// library-wide structured error type.
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <cstdint>

namespace kklab {

using Int = mpz_class;

inline Int ipow(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// All recoverable failures carry a short machine-checkable code plus a
// human message, e.g. Error("E_NOT_REGULAR", "...").
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Deterministic RNG for sampled checks (seed-stable across platforms).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    // xorshift64*; enough for test sampling, stable everywhere.
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1DULL;
  }
  // uniform in [lo, hi] inclusive
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t s_;
};

}  // namespace kklab
