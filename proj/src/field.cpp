#include "bilin/field.hpp"

#include <stdexcept>
#include <string>

namespace bilin {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldCtx::FieldCtx(std::uint64_t q) {
  if (q >= (std::uint64_t{1} << 31))
    throw std::invalid_argument("field modulus must be below 2^31, got " + std::to_string(q));
  if (!is_prime(q))
    throw std::invalid_argument("field modulus must be prime, got " + std::to_string(q));
  q_ = static_cast<std::uint32_t>(q);
}

Elem FieldCtx::inv(Elem a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
  std::int64_t r0 = q_, r1 = a % q_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t t = r0 / r1;
    std::int64_t r2 = r0 - t * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - t * s1;
    s0 = s1;
    s1 = s2;
  }
  return reduce(s0);
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const noexcept {
  std::uint64_t base = a % q_, acc = 1 % q_;
  while (e) {
    if (e & 1) acc = acc * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<Elem>(acc);
}

Elem FieldCtx::rand_elem(Rng& rng) const {
  std::uniform_int_distribution<std::uint32_t> dist(0, q_ - 1);
  return dist(rng);
}

}  // namespace bilin
