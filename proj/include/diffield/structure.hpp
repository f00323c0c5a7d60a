#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffield/ansatz.hpp"

namespace diffield {

/// sum_j alpha_j * w_j = remainder, with the remainder over the subfield.
struct Relation {
  std::vector<Rat> alpha;
  RatFun remainder;
};

/// Tower variables making up K. K must be listed as tower variables; the
/// variables their derivatives need are added when K provably contains them.
/// Throws Unsupported otherwise.
std::vector<bool> subfield_symbols(const SubfieldSpec& k, const Tower& tower, const Bounds& bounds);

/// nullopt when the antiderivatives are algebraically independent over K.
/// alpha is the lexicographically least kernel vector with leading entry 1.
/// Throws NotAntiderivative or Unsupported.
std::optional<Relation> ostrowski_relation(const std::vector<RatFun>& ws, const SubfieldSpec& k,
                                           const Tower& tower, const Bounds& bounds);

/// g = sum alpha_i * zeta_i + a with a in Q(z), over a flat tower. alpha has
/// one entry per generator. Throws NotFlat, NotAntiderivative,
/// MalformedAntiderivative.
Relation antiderivative_decompose(const RatFun& g, const Tower& tower);

struct NormalTower {
  bool complete = true;
  /// levels[0] is empty (the constants Q). levels[j] holds the generators
  /// adjoined at step j, as expressions in the tower variables.
  std::vector<std::vector<RatFun>> levels;
  /// Derivative of each listed generator in the same order as `levels`.
  std::vector<std::vector<RatFun>> derivatives;
  std::vector<RatFun> unplaced;
};

/// Iterated antiderivative closures E_0 = Q, E_1, ... inside the tower.
NormalTower normal_tower(const Tower& tower, const Bounds& bounds);

struct CompositumBasis {
  bool complete = true;
  std::vector<std::size_t> chosen;
  /// Witness for every tower variable not chosen, over K and the chosen ones.
  std::vector<std::pair<std::size_t, std::optional<Witness>>> witnesses;
  std::string note;
};

/// Greedy smallest-index choice of tower variables outside the growing field
/// K(eta_1, ...).
CompositumBasis compositum_basis(const SubfieldSpec& k, const Tower& tower, const Bounds& bounds);

/// zeta_t + a_{n-1}/(n a_n) read from the component of u that involves
/// variable `top`. Throws AlreadyInBase when u does not involve it.
RatFun minimal_shift(const RatFun& u, const Tower& tower, std::size_t top);

struct StructureGenerator {
  RatFun value;
  /// D(value) over the previously found generators.
  std::optional<Witness> derivative;
  /// value over the closure of K and the previously found generators.
  std::optional<Witness> membership;
};

struct StructureReport {
  bool resolved = false;
  std::vector<StructureGenerator> generators;
  /// Every generator of K over the found generators, in input order.
  std::vector<std::optional<Witness>> inputs;
  std::string note;
};

/// Greedy antiderivative ascent from Q towards K.
StructureReport subfield_structure(const SubfieldSpec& k, const Tower& tower, const Bounds& bounds);

struct ConstantCheck {
  /// Flat generators checked exactly by residues.
  std::size_t exact = 0;
  /// Other generators, checked by a bounded search for an antiderivative of
  /// their derivative one level down.
  std::size_t bounded = 0;
};

/// Throws InvalidTowerConstant naming a new constant when one is found.
ConstantCheck check_no_new_constants(const Tower& tower, const Bounds& bounds);

/// Names eta1, eta2, ... used for found generators inside witnesses.
std::vector<std::string> eta_names(std::size_t n);

}  // namespace diffield
