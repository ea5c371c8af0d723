#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace hallforge {

/// GF(q) for a prime power q, with elements encoded as 0..q-1 (base-p digits
/// of the polynomial representative). Addition and multiplication go through
/// precomputed tables; q is small at desk scale.
class Field {
 public:
  explicit Field(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const { return inv_[a]; }

  /// Image of an integer under Z -> F_p -> F_q.
  int from_int(long long v) const;

  /// Shared instance per order; construction validates that q is a prime power.
  static std::shared_ptr<const Field> get(int q);

 private:
  int q_, p_, k_;
  std::vector<std::uint8_t> add_, mul_;
  std::vector<std::uint8_t> neg_, inv_;
};

/// True iff q = p^k for a prime p and k >= 1.
bool is_prime_power(int q);

/// Ascending prime powers starting at 2: 2,3,4,5,7,8,9,11,13,16,17,...
std::vector<int> prime_powers_up_to(int limit);

}  // namespace hallforge
