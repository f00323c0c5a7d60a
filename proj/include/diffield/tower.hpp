#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffield/ratfun.hpp"

namespace diffield {

/// Declared generator: name and the text of its derivative.
struct GeneratorSpec {
  std::string name;
  std::string derivative;
};

/// Unvalidated tower Q(z) ⊂ Q(z, g1) ⊂ ... with D(z) = 1.
struct TowerSpec {
  std::string base = "z";
  std::vector<GeneratorSpec> generators;
};

/// A validated antiderivative tower. Variable 0 is the base z; variable i is
/// the i-th declared generator, whose derivative only involves variables < i.
class Tower {
 public:
  /// Throws DuplicateName, UnknownSymbol or ForwardReference.
  static Tower validate(const TowerSpec& spec);

  /// Number of variables including z.
  std::size_t size() const noexcept { return names_.size(); }
  std::size_t generator_count() const noexcept { return names_.size() - 1; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  const RatFun& derivative_of(std::size_t var) const { return derivation_[var]; }
  std::span<const RatFun> derivation() const noexcept { return derivation_; }

  RatFun var(std::size_t i) const { return RatFun::variable(size(), i); }
  RatFun constant(const Rat& c) const { return RatFun::constant(size(), c); }
  RatFun parse(std::string_view text) const;
  std::string print(const RatFun& u) const;

  /// Every generator derivative lies in Q(z).
  bool is_flat() const;
  /// Tower of the first `nvars` variables.
  Tower prefix(std::size_t nvars) const;
  const TowerSpec& spec() const noexcept { return spec_; }

 private:
  TowerSpec spec_;
  std::vector<std::string> names_;
  std::vector<RatFun> derivation_;
};

/// Differential generators of a subfield K = Q<g1, ..., gs>.
struct SubfieldSpec {
  std::string name;
  std::vector<RatFun> generators;
};

/// Applies the derivation given by the images of the variables.
RatFun differentiate(const RatFun& u, std::span<const RatFun> derivation);
RatFun differentiate(const RatFun& u, const Tower& tower);
RatFun nth_derivative(const RatFun& u, const Tower& tower, unsigned n);

/// True for rational numbers, false when D(u) != 0. Throws
/// InvalidTowerConstant when D(u) = 0 but u is not a rational number.
bool is_constant(const RatFun& u, const Tower& tower);

/// True when u only involves variables whose flag is set.
bool only_involves(const RatFun& u, const std::vector<bool>& allowed);

}  // namespace diffield
