#pragma once

#include <random>
#include <string>
#include <vector>

#include "diffield/ratfun.hpp"
#include "diffield/tower.hpp"

namespace diffield::testing {

// Small reproducible generators for property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rat small_rat(int range = 5) {
    int n = uniform(-range, range);
    int d = uniform(1, 3);
    Rat r(n, d);
    r.canonicalize();
    return r;
  }

  Rat nonzero_rat(int range = 5) {
    Rat r = 0;
    while (r == 0) r = small_rat(range);
    return r;
  }

  MPoly poly(std::size_t nvars, int max_terms, int max_deg) {
    std::vector<Term> terms;
    int nterms = uniform(1, max_terms);
    for (int k = 0; k < nterms; ++k) {
      Exponents e(nvars, 0);
      int budget = uniform(0, max_deg);
      for (int j = 0; j < budget; ++j) e[uniform(0, static_cast<int>(nvars) - 1)] += 1;
      terms.push_back(Term{e, nonzero_rat()});
    }
    return MPoly::from_terms(nvars, std::move(terms));
  }

  MPoly nonzero_poly(std::size_t nvars, int max_terms, int max_deg) {
    MPoly p = poly(nvars, max_terms, max_deg);
    while (p.is_zero()) p = poly(nvars, max_terms, max_deg);
    return p;
  }

  RatFun ratfun(std::size_t nvars, int max_terms, int max_deg) {
    return RatFun::normalize(poly(nvars, max_terms, max_deg), nonzero_poly(nvars, max_terms, max_deg));
  }

  // Up to `depth` generators, each derivative a random element of the field
  // below it. New constants are not excluded.
  Tower tower(int depth, int max_deg = 2) {
    TowerSpec spec;
    int n = uniform(1, depth);
    for (int i = 0; i < n; ++i) {
      Tower below = Tower::validate(spec);
      RatFun d;
      while (d.is_zero()) d = ratfun(below.size(), 2, max_deg);
      spec.generators.push_back({"g" + std::to_string(i + 1), below.print(d)});
    }
    return Tower::validate(spec);
  }

  std::vector<Rat> point(std::size_t nvars) {
    std::vector<Rat> p(nvars);
    for (auto& x : p) {
      x = Rat(uniform(-40, 40), uniform(1, 7));
      x.canonicalize();
    }
    return p;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace diffield::testing
