#include "hallforge/field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "hallforge/errors.hpp"

namespace hallforge {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p of degree < k encoded as base-p integers.
std::vector<int> digits(int a, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int encode(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

}  // namespace

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (q % p != 0) ++p;
  if (!is_prime(p)) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::vector<int> prime_powers_up_to(int limit) {
  std::vector<int> out;
  for (int q = 2; q <= limit; ++q)
    if (is_prime_power(q)) out.push_back(q);
  return out;
}

Field::Field(int q) : q_(q) {
  if (!is_prime_power(q) || q > 256)
    throw PreconditionError("field order must be a prime power <= 256, got " +
                            std::to_string(q));
  p_ = 2;
  while (q % p_ != 0) ++p_;
  k_ = 0;
  for (int t = q; t > 1; t /= p_) ++k_;

  add_.assign(static_cast<std::size_t>(q) * q, 0);
  mul_.assign(static_cast<std::size_t>(q) * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);

  for (int a = 0; a < q; ++a) {
    auto da = digits(a, p_, k_);
    std::vector<int> dn(k_);
    for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(encode(dn, p_));
    for (int b = 0; b < q; ++b) {
      auto db = digits(b, p_, k_);
      std::vector<int> ds(k_);
      for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<std::uint8_t>(encode(ds, p_));
    }
  }

  // Search monic modulus x^k + c(x) until the quotient ring has no zero divisors.
  for (int c = 0; c < q; ++c) {
    auto mod = digits(c, p_, k_);  // x^k == -mod(x)
    bool ok = true;
    for (int a = 0; a < q && ok; ++a) {
      auto da = digits(a, p_, k_);
      for (int b = 0; b < q; ++b) {
        auto db = digits(b, p_, k_);
        std::vector<int> prod(2 * k_, 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int deg = 2 * k_ - 1; deg >= k_; --deg) {
          int lead = prod[deg];
          if (lead == 0) continue;
          prod[deg] = 0;
          for (int i = 0; i < k_; ++i)
            prod[deg - k_ + i] = ((prod[deg - k_ + i] - lead * mod[i]) % p_ + p_) % p_;
        }
        prod.resize(k_);
        int r = encode(prod, p_);
        if (a != 0 && b != 0 && r == 0) {
          ok = false;
          break;
        }
        mul_[a * q + b] = static_cast<std::uint8_t>(r);
      }
    }
    if (!ok) continue;
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (mul_[a * q + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
    return;
  }
  throw InvariantViolation("no irreducible modulus found for q=" + std::to_string(q));
}

int Field::from_int(long long v) const {
  long long r = ((v % p_) + p_) % p_;
  return static_cast<int>(r);  // constants embed as degree-0 digits
}

std::shared_ptr<const Field> Field::get(int q) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const Field>(q);
  registry.emplace(q, f);
  return f;
}

}  // namespace hallforge
