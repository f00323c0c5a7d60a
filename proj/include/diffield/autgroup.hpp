#pragma once

#include <vector>

#include "diffield/tower.hpp"

namespace diffield {

/// Field endomorphism of a tower given by the images of all its variables
/// (z included). Verified maps come from the constructors below.
class AutMap {
 public:
  /// Raw assignments, not checked against the derivation.
  static AutMap unverified(std::vector<RatFun> images) { return AutMap(std::move(images), false); }

  const std::vector<RatFun>& images() const noexcept { return images_; }
  std::size_t size() const noexcept { return images_.size(); }
  bool verified() const noexcept { return verified_; }

 private:
  friend AutMap verify_differential(const std::vector<RatFun>&, const Tower&, unsigned);
  friend AutMap compose(const AutMap&, const AutMap&);
  friend AutMap inverse(const AutMap&);
  AutMap(std::vector<RatFun> images, bool verified)
      : images_(std::move(images)), verified_(verified) {}

  std::vector<RatFun> images_;
  bool verified_ = false;
};

/// sigma(z) = z, sigma(zeta_i) = zeta_i + alpha_i. Throws NotFlat.
AutMap make_translation_aut(const Tower& tower, const std::vector<Rat>& alpha);

RatFun apply(const AutMap& sigma, const RatFun& u);

/// Checks D(sigma(y)) = sigma(D(y)) for every variable y, then on `samples`
/// random expressions, and that sigma is invertible. Throws NotDifferential or
/// InvalidArgument.
AutMap verify_differential(const std::vector<RatFun>& images, const Tower& tower,
                           unsigned samples = 20);

/// (a o b)(u) = a(b(u)).
AutMap compose(const AutMap& a, const AutMap& b);

/// Inverse of a triangular map. Throws NotTriangular.
AutMap inverse(const AutMap& sigma);

/// True when every sigma fixes u.
bool fixed_field_probe(const std::vector<AutMap>& sigmas, const RatFun& u);

/// sigma(y_i) = delta_i * y_i + shift_i with shift_i over the variables < i.
struct TriangularData {
  std::vector<Rat> delta;
  std::vector<RatFun> shift;
};

/// Throws NotTriangular.
TriangularData verify_triangular(const AutMap& sigma, const Tower& tower);

}  // namespace diffield
