#pragma once

#include <optional>
#include <span>
#include <vector>

#include "diffield/mpoly.hpp"

namespace diffield {

/// Reduced rational function num/den over Q.
///
/// Canonical form: gcd(num, den) = 1 and den has leading coefficient 1 in the
/// term order of MPoly. Two RatFuns are equal as functions iff they are
/// structurally equal.
class RatFun {
 public:
  RatFun() : num_(0), den_(MPoly::constant(0, 1)) {}
  explicit RatFun(MPoly num);

  /// Reduces num/den to canonical form. Throws ZeroDenominator.
  static RatFun normalize(MPoly num, MPoly den);
  static RatFun constant(std::size_t nvars, const Rat& c);
  static RatFun variable(std::size_t nvars, std::size_t var);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  std::size_t nvars() const noexcept { return num_.nvars(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  Rat constant_value() const;

  bool uses(std::size_t var) const { return num_.uses(var) || den_.uses(var); }
  std::vector<bool> support() const;
  /// Highest-index variable that occurs, if any.
  std::optional<std::size_t> main_variable() const;

  RatFun inverse() const;
  RatFun pow(int n) const;
  RatFun scaled(const Rat& c) const;
  RatFun partial(std::size_t var) const;

  /// Value at a point, or nullopt when the denominator vanishes there.
  std::optional<Rat> evaluate(std::span<const Rat> point) const;
  RatFun remap(std::size_t nvars, std::span<const std::size_t> target) const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
  RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
  RatFun& operator*=(const RatFun& b) { return *this = *this * b; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.nvars() == b.nvars() && a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  RatFun(MPoly num, MPoly den, int) : num_(std::move(num)), den_(std::move(den)) {}
  // num and den already coprime; only makes den monic.
  static RatFun coprime(MPoly num, MPoly den);

  MPoly num_;
  MPoly den_;
};

/// Simultaneous substitution x_i -> images[i]; the result lives in
/// `target_nvars` variables.
RatFun substitute(const MPoly& p, std::span<const RatFun> images, std::size_t target_nvars);
RatFun substitute(const RatFun& u, std::span<const RatFun> images, std::size_t target_nvars);

}  // namespace diffield
