#ifndef DELTAKIN_TESTS_SUPPORT_HPP
#define DELTAKIN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <vector>

#include "deltakin/mpoly.hpp"
#include "deltakin/rng.hpp"

namespace deltakin::testing {

/// Random sparse polynomial in the first `nvars` of {x, y, z}, total degree
/// <= max_degree, with small integer (optionally sqrt3) coefficients.
inline MPoly random_poly(SplitMix64& rng, int nvars, int max_degree,
                         int max_terms, bool with_sqrt3 = false) {
  std::vector<MPoly::Term> terms;
  const int nterms = 1 + static_cast<int>(rng.below(max_terms));
  for (int t = 0; t < nterms; ++t) {
    ExpVec e{};
    int budget = max_degree;
    for (int v = 0; v < nvars; ++v) {
      const int d = static_cast<int>(rng.below(budget + 1));
      e[v] = static_cast<std::uint16_t>(d);
      budget -= d;
    }
    const long num = static_cast<long>(rng.below(19)) - 9;
    mpq_class rat(num, 1 + static_cast<long>(rng.below(3)));
    rat.canonicalize();
    mpq_class s3(0);
    if (with_sqrt3 && rng.below(2) == 0) {
      s3 = mpq_class(static_cast<long>(rng.below(19)) - 9);
    }
    terms.push_back({e, Scalar(rat, s3)});
  }
  return MPoly::from_terms(std::move(terms));
}

/// Random polynomial guaranteed to have positive degree in v.
inline MPoly random_poly_in(SplitMix64& rng, Var v, int nvars, int max_degree,
                            int max_terms) {
  for (;;) {
    MPoly p = random_poly(rng, nvars, max_degree, max_terms);
    ExpVec e{};
    e[v] = static_cast<std::uint16_t>(1 + rng.below(std::max(max_degree, 1)));
    p += MPoly::monomial(e, Scalar(1 + static_cast<long>(rng.below(5))));
    if (p.degree_in(v) >= 1) return p;
  }
}

inline std::array<double, kNumVars> random_point(SplitMix64& rng,
                                                 double radius = 1.0) {
  std::array<double, kNumVars> pt{};
  for (auto& x : pt) x = rng.uniform(-radius, radius);
  return pt;
}

}  // namespace deltakin::testing

#endif
