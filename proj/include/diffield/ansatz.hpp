#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diffield/linsolve.hpp"
#include "diffield/tower.hpp"

namespace diffield {

/// Search bounds for undetermined-coefficient searches.
struct Bounds {
  unsigned max_num_degree = 8;
  unsigned max_den_degree = 8;
  unsigned max_derivative_order = 4;
  /// Multipliers tried, in order, after the base bounds fail.
  std::vector<unsigned> escalation = {2};
  /// Hard cap on rows * columns of any linear system.
  std::size_t max_cells = default_max_cells();

  /// DIFFIELD_MAX_CELLS when set, else 25 million.
  static std::size_t default_max_cells();
  Bounds scaled(unsigned factor) const;
  /// The base bounds followed by each escalation step.
  std::vector<Bounds> ladder() const;
};

/// Linear equations sum_j c_j * coefficients[j] = rhs in unknown c in Q^n,
/// where every coefficient is a rational function. Each equation holds as an
/// identity in all tower variables.
struct LinearEquation {
  std::vector<RatFun> coefficients;
  RatFun rhs;
};

struct LinearAnsatz {
  std::size_t unknowns = 0;
  std::vector<LinearEquation> equations;
};

/// Clears denominators, matches the coefficient of every monomial and solves
/// the resulting system over Q. Throws BoundsExceeded above the cell cap.
LinearSolution solve_linear_ansatz(const LinearAnsatz& ansatz, const Bounds& bounds);

/// Polynomial identity version: sum_j c_j * columns[j] = rhs.
LinearSolution solve_polynomial_ansatz(const std::vector<MPoly>& columns, const MPoly& rhs,
                                       const Bounds& bounds);

/// An element substituted for a formal variable.
struct FormalGenerator {
  RatFun value;
  std::string meaning;
};

/// R(x0..xn) with R(arguments) = target, checked on construction.
class Witness {
 public:
  /// Throws std::logic_error when the substitution does not reproduce target.
  Witness(std::vector<std::string> names, std::vector<FormalGenerator> arguments, RatFun expression,
          RatFun target);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<FormalGenerator>& arguments() const noexcept { return arguments_; }
  const RatFun& expression() const noexcept { return expression_; }
  const RatFun& target() const noexcept { return target_; }
  std::string to_string() const;
  /// Substitutes the arguments into the expression.
  RatFun evaluate() const;

 private:
  std::vector<std::string> names_;
  std::vector<FormalGenerator> arguments_;
  RatFun expression_;
  RatFun target_;
};

/// Found(value) or NoSolutionWithinBounds. A missing value never asserts that
/// no solution exists unless `certified_absent` is set by an exact argument.
template <class T>
struct SearchOutcome {
  std::optional<T> value;
  Bounds bounds;
  bool certified_absent = false;
  std::string note;

  bool found() const noexcept { return value.has_value(); }
};

using MembershipOutcome = SearchOutcome<Witness>;

/// Transcendence degree over Q of Q(elems), from the rank of the Jacobian at
/// deterministic rational points. The value never exceeds the true degree.
std::size_t algebraic_rank(const std::vector<RatFun>& elems);

/// Generators g and their derivatives up to `order`, skipping rational
/// numbers, repeats, and elements already rational in the pure-variable
/// generators listed before them. Named x0, x1, ... in that order.
std::vector<FormalGenerator> derivative_closure(const SubfieldSpec& k, const Tower& tower,
                                                unsigned order);

/// Smallest order whose closure already generates Q<K> as a field, capped.
unsigned saturation_order(const SubfieldSpec& k, const Tower& tower, unsigned cap);

/// Membership of u in Q(generators) with the generators fixed.
MembershipOutcome field_membership(const RatFun& u, const std::vector<FormalGenerator>& gens,
                                   const std::vector<std::string>& names, const Bounds& bounds);

/// Membership of u in the differential field generated by K (plus optional
/// extra elements already known to lie in it, named by `extra_names`).
MembershipOutcome subfield_membership(const RatFun& u, const SubfieldSpec& k, const Tower& tower,
                                      const Bounds& bounds,
                                      const std::vector<FormalGenerator>& extra = {},
                                      const std::vector<std::string>& extra_names = {});

/// w with D(w) = f + g*w (w != 0 when f = 0). For g = 0 the additive
/// constant is fixed by setting the constant coefficient to zero.
SearchOutcome<RatFun> solve_first_order(const RatFun& f, const RatFun& g, const Tower& tower,
                                        const Bounds& bounds);

/// Formal variable names x0..x{n-1}.
std::vector<std::string> formal_names(std::size_t n, const std::string& prefix = "x");

}  // namespace diffield
