#pragma once

#include <cstdint>
#include <random>

namespace bilin {

using Elem = std::uint32_t;
using Rng = std::mt19937_64;

// Arithmetic in GF(q) for a prime q < 2^31. Elements are kept in [0, q).
class FieldCtx {
 public:
  explicit FieldCtx(std::uint64_t q);

  std::uint32_t q() const noexcept { return q_; }

  Elem reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(q_);
    return static_cast<Elem>(r < 0 ? r + q_ : r);
  }
  Elem add(Elem a, Elem b) const noexcept {
    std::uint32_t s = a + b;  // a, b < 2^31
    return s >= q_ ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + (q_ - b); }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
  }
  // a + b*c
  Elem fma(Elem a, Elem b, Elem c) const noexcept {
    return static_cast<Elem>((a + static_cast<std::uint64_t>(b) * c) % q_);
  }

  Elem inv(Elem a) const;  // throws std::domain_error on 0
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem rand_elem(Rng& rng) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n);

}  // namespace bilin
