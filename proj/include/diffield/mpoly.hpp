#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace diffield {

using Int = mpz_class;
using Rat = mpq_class;
using Exponents = boost::container::small_vector<std::uint32_t, 8>;

// Term order: lexicographic with the LAST variable most significant. This is
// the order of the recursive representation in the main variable (the
// highest-index variable), and it is the order used for printing and for
// choosing leading coefficients.
int compare_exponents(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exps;
  Rat coeff;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept sorted in descending term order with no zero coefficients.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Rat& c);
  static MPoly variable(std::size_t nvars, std::size_t var, std::uint32_t power = 1);
  static MPoly monomial(const Exponents& exps, const Rat& c);
  /// Sorts, merges equal exponents and drops zero coefficients.
  static MPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rat constant_value() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Term& leading_term() const { return terms_.front(); }
  const Rat& leading_coeff() const { return terms_.front().coeff; }

  std::uint32_t degree(std::size_t var) const;
  std::uint32_t total_degree() const;
  bool uses(std::size_t var) const;
  /// Highest-index variable that occurs, if any.
  std::optional<std::size_t> main_variable() const;
  std::vector<bool> support() const;

  /// Coefficients as polynomials in the other variables, indexed by degree.
  std::vector<MPoly> coefficients_in(std::size_t var) const;
  static MPoly from_coefficients(const std::vector<MPoly>& coeffs, std::size_t var);

  MPoly derivative(std::size_t var) const;
  Rat evaluate(std::span<const Rat> point) const;
  /// Substitutes point[i] for every variable i != keep.
  MPoly evaluate_except(std::size_t keep, std::span<const Rat> point) const;
  /// Re-embeds into `nvars` variables, variable i going to target[i].
  MPoly remap(std::size_t nvars, std::span<const std::size_t> target) const;

  MPoly monic() const;
  MPoly scaled(const Rat& c) const;
  MPoly pow(unsigned n) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const MPoly& other);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);

  friend bool operator==(const MPoly& a, const MPoly& b);

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
/// Quotient that must be exact; throws otherwise.
MPoly divexact(const MPoly& a, const MPoly& b);

/// Pseudo-remainder of a by b with respect to `var`.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var);

/// Content with respect to `var`: monic gcd of the coefficients in `var`.
MPoly content_in(const MPoly& p, std::size_t var);

/// Monic greatest common divisor; gcd(p, 0) = monic(p), gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

}  // namespace diffield
