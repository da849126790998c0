#include "deltakin/mpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace deltakin {

namespace {

constexpr int kDisplayOrder[kNumVars] = {VR1, VR2, VR3, VX, VY, VZ, VL};

struct TermGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    return term_less(b, a);
  }
};

}  // namespace

bool term_less(const ExpVec& a, const ExpVec& b) {
  const int da = exp_total(a), db = exp_total(b);
  if (da != db) return da < db;
  for (int v : kDisplayOrder) {
    if (a[v] != b[v]) return a[v] < b[v];
  }
  return false;
}

MPoly MPoly::constant(Scalar c) {
  MPoly p;
  if (!c.is_zero()) p.terms_.push_back({ExpVec{}, std::move(c)});
  return p;
}

MPoly MPoly::variable(Var v, int power) {
  if (power < 0) throw std::invalid_argument("negative exponent");
  if (power == 0) return constant(Scalar(1));
  MPoly p;
  ExpVec e{};
  e[v] = static_cast<std::uint16_t>(power);
  p.terms_.push_back({e, Scalar(1)});
  return p;
}

MPoly MPoly::monomial(const ExpVec& e, Scalar c) {
  MPoly p;
  if (!c.is_zero()) p.terms_.push_back({e, std::move(c)});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  MPoly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return term_less(b.first, a.first); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

Scalar MPoly::constant_value() const {
  if (terms_.empty()) return Scalar(0);
  const Term& last = terms_.back();
  if (exp_total(last.first) == 0) return last.second;
  return Scalar(0);
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return exp_total(terms_.front().first);  // canonical order is graded
}

int MPoly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[v]));
  return terms_.empty() ? -1 : d;
}

ExpVec MPoly::max_exponents() const {
  ExpVec m{};
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < kNumVars; ++k) m[k] = std::max(m[k], e[k]);
  return m;
}

MPoly MPoly::operator-() const {
  MPoly p(*this);
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  // Merge two sorted term lists.
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first == b->first) {
      Scalar c = a->second + b->second;
      if (!c.is_zero()) out.push_back({a->first, std::move(c)});
      ++a;
      ++b;
    } else if (term_less(b->first, a->first)) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  terms_ = std::move(out);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  std::map<ExpVec, Scalar, TermGreater> acc;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      ExpVec e;
      for (int k = 0; k < kNumVars; ++k)
        e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
      auto [it, fresh] = acc.try_emplace(e, Scalar(0));
      it->second += ca * cb;
    }
  }
  MPoly out;
  out.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({e, std::move(c)});
  }
  return out;
}

MPoly MPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return MPoly();
  MPoly p(*this);
  for (auto& [e, coef] : p.terms_) coef *= c;
  return p;
}

MPoly MPoly::times_monomial(const ExpVec& m, const Scalar& c) const {
  if (c.is_zero()) return MPoly();
  MPoly p(*this);
  for (auto& [e, coef] : p.terms_) {
    for (int k = 0; k < kNumVars; ++k)
      e[k] = static_cast<std::uint16_t>(e[k] + m[k]);
    coef *= c;
  }
  return p;
}

MPoly MPoly::derivative(Var v) const {
  MPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    ExpVec d = e;
    d[v] -= 1;
    p.terms_.push_back({d, c * Scalar(e[v])});
  }
  // Dropping a variable can merge or reorder nothing: exponent vectors stay
  // distinct and the graded order with one exponent reduced stays sorted
  // only within the same total degree, so re-normalize.
  p.normalize();
  return p;
}

double MPoly::eval(const std::array<double, kNumVars>& point) const {
  // Cache powers per variable.
  ExpVec maxe = max_exponents();
  std::array<std::vector<double>, kNumVars> pw;
  for (int k = 0; k < kNumVars; ++k) {
    pw[k].resize(maxe[k] + 1);
    pw[k][0] = 1.0;
    for (int i = 1; i <= maxe[k]; ++i) pw[k][i] = pw[k][i - 1] * point[k];
  }
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int k = 0; k < kNumVars; ++k)
      if (e[k]) t *= pw[k][e[k]];
    acc += t;
  }
  return acc;
}

Scalar MPoly::eval(const std::array<Scalar, kNumVars>& point) const {
  ExpVec maxe = max_exponents();
  std::array<std::vector<Scalar>, kNumVars> pw;
  for (int k = 0; k < kNumVars; ++k) {
    pw[k].resize(maxe[k] + 1);
    pw[k][0] = Scalar(1);
    for (int i = 1; i <= maxe[k]; ++i) pw[k][i] = pw[k][i - 1] * point[k];
  }
  Scalar acc(0);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int k = 0; k < kNumVars; ++k)
      if (e[k]) t *= pw[k][e[k]];
    acc += t;
  }
  return acc;
}

MPoly MPoly::substituted(Var v, const Scalar& value) const {
  int maxe = 0;
  for (const auto& [e, c] : terms_) maxe = std::max(maxe, static_cast<int>(e[v]));
  std::vector<Scalar> pw(maxe + 1, Scalar(1));
  for (int i = 1; i <= maxe; ++i) pw[i] = pw[i - 1] * value;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    ExpVec d = e;
    d[v] = 0;
    out.push_back({d, c * pw[e[v]]});
  }
  return from_terms(std::move(out));
}

std::vector<MPoly> MPoly::coefficients_in(Var v) const {
  if (terms_.empty()) return {};
  std::vector<MPoly> out(degree_in(v) + 1);
  for (const auto& [e, c] : terms_) {
    ExpVec d = e;
    d[v] = 0;
    out[e[v]].terms_.push_back({d, c});
  }
  for (auto& p : out) p.normalize();
  return out;
}

mpq_class MPoly::integer_content() const {
  if (terms_.empty()) return mpq_class(0);
  mpz_class num_gcd(0);
  mpz_class den_lcm(1);
  auto feed = [&](const mpq_class& q) {
    if (sgn(q) == 0) return;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
  };
  for (const auto& [e, c] : terms_) {
    feed(c.rat);
    feed(c.sqrt3);
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  return content;
}

MPoly MPoly::primitive_part(mpq_class* removed) const {
  if (terms_.empty()) {
    if (removed) *removed = 0;
    return *this;
  }
  mpq_class c = integer_content();
  if (removed) *removed = c;
  Scalar inv(mpq_class(1) / c);
  return scaled(inv);
}

ExpVec MPoly::monomial_content() const {
  if (terms_.empty()) return ExpVec{};
  ExpVec m = terms_.front().first;
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < kNumVars; ++k) m[k] = std::min(m[k], e[k]);
  return m;
}

MPoly MPoly::divided_by_monomial(const ExpVec& m) const {
  MPoly p(*this);
  for (auto& [e, c] : p.terms_) {
    for (int k = 0; k < kNumVars; ++k) {
      if (e[k] < m[k]) throw std::domain_error("monomial does not divide term");
      e[k] = static_cast<std::uint16_t>(e[k] - m[k]);
    }
  }
  return p;
}

const MPoly::Term& MPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.front();
}

MPoly MPoly::divided_exact(const MPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  MPoly rem(*this);
  MPoly quot;
  const auto& [de, dc] = d.leading_term();
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading_term();
    ExpVec qe;
    for (int k = 0; k < kNumVars; ++k) {
      if (re[k] < de[k]) throw std::domain_error("inexact polynomial division");
      qe[k] = static_cast<std::uint16_t>(re[k] - de[k]);
    }
    Scalar qc = rc / dc;
    quot.terms_.push_back({qe, qc});
    rem -= d.times_monomial(qe, qc);
  }
  quot.normalize();
  return quot;
}

namespace {

// sqrt of a nonnegative rational, when it stays rational.
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den().get_mpz_t());
  return mpq_class(num, den);
}

// Square root within Q(sqrt3): solve (u + v sqrt3)^2 = a + b sqrt3.
std::optional<Scalar> scalar_sqrt(const Scalar& s) {
  if (s.sign() < 0) return std::nullopt;
  if (s.is_zero()) return Scalar(0);
  if (sgn(s.sqrt3) == 0) {
    if (auto u = rational_sqrt(s.rat)) return Scalar(*u);
    if (auto v = rational_sqrt(s.rat / 3)) return Scalar(mpq_class(0), *v);
    return std::nullopt;
  }
  // u^2 + 3 v^2 = a and 2uv = b: u^2 solves t^2 - a t + 3 b^2 / 4 = 0.
  const mpq_class a = s.rat, b = s.sqrt3;
  const auto disc = rational_sqrt(a * a - 3 * b * b);
  if (!disc) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    const mpq_class u2 = (a + (pick == 0 ? *disc : -*disc)) / 2;
    const auto u = rational_sqrt(u2);
    if (!u || sgn(*u) == 0) continue;
    const mpq_class v = b / (2 * *u);
    if (u2 + 3 * v * v == a) {
      Scalar root(*u, v);
      return root.sign() > 0 ? root : -root;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MPoly> MPoly::square_root() const {
  if (is_zero()) return MPoly();
  const auto& [le, lc] = leading_term();
  ExpVec half{};
  for (int k = 0; k < kNumVars; ++k) {
    if (le[k] % 2 != 0) return std::nullopt;
    half[k] = static_cast<std::uint16_t>(le[k] / 2);
  }
  const auto root_c = scalar_sqrt(lc);
  if (!root_c) return std::nullopt;

  MPoly q = MPoly::monomial(half, *root_c);
  const Scalar twice = Scalar(2) * *root_c;
  MPoly residual = *this - q * q;
  // Each correction term cancels the current leading term of the residual,
  // so the residual strictly decreases in the term order.
  const size_t cap = 2 * terms_.size() + 64;
  for (size_t iter = 0; iter < cap; ++iter) {
    if (residual.is_zero()) return q;
    const auto& [re, rc] = residual.leading_term();
    if (!term_less(re, le)) return std::nullopt;
    ExpVec te;
    for (int k = 0; k < kNumVars; ++k) {
      if (re[k] < half[k]) return std::nullopt;
      te[k] = static_cast<std::uint16_t>(re[k] - half[k]);
    }
    const MPoly t = MPoly::monomial(te, rc / twice);
    // (q + t)^2 = q^2 + 2qt + t^2
    residual -= q * t + q * t + t * t;
    q += t;
  }
  return std::nullopt;
}

std::string MPoly::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int v : kDisplayOrder) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += kVarName[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    const bool mixed = sgn(c.rat) != 0 && sgn(c.sqrt3) != 0;
    std::string coef;
    bool negative = false;
    if (mixed) {
      coef = "(" + c.str() + ")";
    } else {
      const Scalar abs = c.sign() < 0 ? -c : c;
      negative = c.sign() < 0;
      if (mono.empty() || abs != Scalar(1)) coef = abs.str();
    }
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? "-" : "+";
    }
    out += coef;
    if (!coef.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

PolyStats poly_stats(const MPoly& p) {
  ExpVec m = p.max_exponents();
  const bool pose = (m[VX] + m[VY] + m[VZ] > 0) || (m[VR1] + m[VR2] + m[VR3] == 0);
  return poly_stats(p, pose);
}

PolyStats poly_stats(const MPoly& p, bool pose_triple) {
  PolyStats s;
  s.pose_triple = pose_triple;
  if (p.is_zero()) return s;
  s.total_degree = p.total_degree();
  s.num_terms = static_cast<long>(p.terms().size());
  ExpVec m = p.max_exponents();
  if (pose_triple) {
    s.per_var = {m[VX], m[VY], m[VZ]};
  } else {
    s.per_var = {m[VR1], m[VR2], m[VR3]};
  }
  // Clear denominators across every coefficient part, then take the maximum
  // bit length of the resulting integers.
  mpz_class den_lcm(1);
  auto feed_den = [&](const mpq_class& q) {
    if (sgn(q) != 0)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
  };
  for (const auto& [e, c] : p.terms()) {
    feed_den(c.rat);
    feed_den(c.sqrt3);
  }
  size_t bits = 0;
  auto feed_num = [&](const mpq_class& q) {
    if (sgn(q) == 0) return;
    mpz_class scaled = q.get_num() * (den_lcm / q.get_den());
    bits = std::max(bits, mpz_sizeinbase(scaled.get_mpz_t(), 2));
  };
  for (const auto& [e, c] : p.terms()) {
    feed_num(c.rat);
    feed_num(c.sqrt3);
  }
  s.coeff_bitsize = static_cast<int>(bits);
  return s;
}

}  // namespace deltakin
