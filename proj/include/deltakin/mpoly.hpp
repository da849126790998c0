#ifndef DELTAKIN_MPOLY_HPP
#define DELTAKIN_MPOLY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltakin/scalar.hpp"

namespace deltakin {

/// The fixed variable set. Exponent vectors, JSON output and per-variable
/// statistics always use this positional order.
enum Var : int { VX = 0, VY = 1, VZ = 2, VR1 = 3, VR2 = 4, VR3 = 5, VL = 6 };

inline constexpr int kNumVars = 7;
inline constexpr const char* kVarName[kNumVars] = {"x", "y", "z", "rho1",
                                                   "rho2", "rho3", "L"};

using ExpVec = std::array<std::uint16_t, kNumVars>;

inline int exp_total(const ExpVec& e) {
  int t = 0;
  for (int k = 0; k < kNumVars; ++k) t += e[k];
  return t;
}

/// Graded-lexicographic comparison used both to canonicalize term lists and
/// to render text. Ties are broken with the joint variables first
/// (rho1, rho2, rho3, x, y, z, L), which is how the determinants of this
/// robot family are conventionally written.
bool term_less(const ExpVec& a, const ExpVec& b);

/// Sparse multivariate polynomial over Q(sqrt3) in the seven fixed variables.
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients and no duplicate exponent vectors.
class MPoly {
 public:
  using Term = std::pair<ExpVec, Scalar>;

  MPoly() = default;  // zero polynomial

  static MPoly constant(Scalar c);
  static MPoly variable(Var v, int power = 1);
  static MPoly monomial(const ExpVec& e, Scalar c);
  static MPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && exp_total(terms_[0].first) == 0);
  }
  /// Constant term (zero if absent).
  Scalar constant_value() const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Var v) const;
  /// Max exponent per variable (all zero for the zero polynomial).
  ExpVec max_exponents() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly scaled(const Scalar& c) const;
  MPoly times_monomial(const ExpVec& e, const Scalar& c = Scalar(1)) const;

  /// Formal partial derivative.
  MPoly derivative(Var v) const;

  /// Numeric evaluation with sqrt(3) expanded to double.
  double eval(const std::array<double, kNumVars>& point) const;
  /// Exact evaluation in Q(sqrt3).
  Scalar eval(const std::array<Scalar, kNumVars>& point) const;

  /// Substitutes an exact value for one variable.
  MPoly substituted(Var v, const Scalar& value) const;

  /// Coefficients of powers of v: result[k] is the coefficient of v^k as a
  /// polynomial free of v. Empty for the zero polynomial.
  std::vector<MPoly> coefficients_in(Var v) const;

  /// Positive rational c such that (1/c) * poly has integer coefficient
  /// parts with overall gcd 1. Zero for the zero polynomial.
  mpq_class integer_content() const;
  /// Divides out integer_content(); sign of every term is preserved.
  MPoly primitive_part(mpq_class* removed = nullptr) const;

  /// Componentwise minimum of all exponent vectors (the largest monomial
  /// dividing every term). All zero for the zero polynomial.
  ExpVec monomial_content() const;
  MPoly divided_by_monomial(const ExpVec& m) const;

  /// Exact division: requires d != 0 and d | *this, which callers guarantee
  /// (fraction-free elimination). Throws std::domain_error otherwise.
  MPoly divided_exact(const MPoly& d) const;

  /// Formal square root by leading-term long division: returns q with
  /// q*q == *this (positive leading coefficient), or nullopt when the
  /// polynomial is not a perfect square over Q(sqrt3).
  std::optional<MPoly> square_root() const;

  /// Leading term w.r.t. the canonical order.
  const Term& leading_term() const;

  /// Deterministic text form, e.g. "8*rho1*z+8*rho2*z-16*rho3*z".
  std::string text() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Statistics mirroring the reported polynomial characteristics: total
/// degree, per-variable degrees as a pose (x,y,z) or joint (rho1,rho2,rho3)
/// triple, number of terms, and the maximum bit length over all coefficient
/// numerators once denominators are cleared.
struct PolyStats {
  int total_degree = 0;
  std::array<int, 3> per_var{0, 0, 0};
  bool pose_triple = true;  // false: per_var refers to (rho1, rho2, rho3)
  long num_terms = 0;
  int coeff_bitsize = 0;

  friend bool operator==(const PolyStats&, const PolyStats&) = default;
};

/// Chooses the pose triple when the polynomial involves x, y or z, otherwise
/// the joint triple.
PolyStats poly_stats(const MPoly& p);
PolyStats poly_stats(const MPoly& p, bool pose_triple);

}  // namespace deltakin

#endif
