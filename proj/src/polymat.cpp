#include "deltakin/polymat.hpp"

#include <stdexcept>
#include <utility>

namespace deltakin {

MPoly det3(const Mat3& m) {
  MPoly det;
  det += m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  det -= m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
  det += m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return det;
}

MPoly bareiss_det(std::vector<std::vector<MPoly>> m) {
  const size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("matrix not square");
  }
  if (n == 0) return MPoly::constant(Scalar(1));
  bool negate = false;
  MPoly prev = MPoly::constant(Scalar(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MPoly();  // singular
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        MPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num.is_zero() ? MPoly() : num.divided_exact(prev);
      }
      m[i][k] = MPoly();
    }
    prev = m[k][k];
  }
  MPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

namespace {

// Res(p, q) where q = a*v + b is linear in v and deg_v(p) = m >= 1:
//   Res(p, q) = sum_k p_k * b^k * (-a)^(m-k)
// which equals the Sylvester determinant with p's rows first.
MPoly resultant_linear_q(const std::vector<MPoly>& pc, const MPoly& a,
                         const MPoly& b) {
  const int m = static_cast<int>(pc.size()) - 1;
  MPoly neg_a = -a;
  std::vector<MPoly> pow_na(m + 1), pow_b(m + 1);
  pow_na[0] = MPoly::constant(Scalar(1));
  pow_b[0] = MPoly::constant(Scalar(1));
  for (int i = 1; i <= m; ++i) {
    pow_na[i] = pow_na[i - 1] * neg_a;
    pow_b[i] = pow_b[i - 1] * b;
  }
  MPoly acc;
  for (int k = 0; k <= m; ++k) {
    if (pc[k].is_zero()) continue;
    acc += pc[k] * pow_b[k] * pow_na[m - k];
  }
  return acc;
}

// Res(p, q) where p = a*v + b is linear and deg_v(q) = n >= 1:
//   Res(p, q) = lc(p)^n * q(-b/a) = sum_k q_k * (-b)^k * a^(n-k).
MPoly resultant_linear_p(const std::vector<MPoly>& qc, const MPoly& a,
                         const MPoly& b) {
  const int n = static_cast<int>(qc.size()) - 1;
  MPoly neg_b = -b;
  std::vector<MPoly> pow_a(n + 1), pow_nb(n + 1);
  pow_a[0] = MPoly::constant(Scalar(1));
  pow_nb[0] = MPoly::constant(Scalar(1));
  for (int i = 1; i <= n; ++i) {
    pow_a[i] = pow_a[i - 1] * a;
    pow_nb[i] = pow_nb[i - 1] * neg_b;
  }
  MPoly acc;
  for (int k = 0; k <= n; ++k) {
    if (qc[k].is_zero()) continue;
    acc += qc[k] * pow_nb[k] * pow_a[n - k];
  }
  return acc;
}

}  // namespace

MPoly resultant(const MPoly& p, const MPoly& q, Var v) {
  const int m = p.degree_in(v);
  const int n = q.degree_in(v);
  if (m < 1 || n < 1)
    throw std::invalid_argument("resultant: inputs must have positive degree in the eliminated variable");

  const MPoly pp = p.primitive_part();
  const MPoly qp = q.primitive_part();
  const std::vector<MPoly> pc = pp.coefficients_in(v);
  const std::vector<MPoly> qc = qp.coefficients_in(v);

  MPoly det;
  if (n == 1) {
    det = resultant_linear_q(pc, qc[1], qc[0]);
  } else if (m == 1) {
    det = resultant_linear_p(qc, pc[1], pc[0]);
  } else {
    // Sylvester matrix: n rows of p's coefficients, then m rows of q's,
    // highest degree first, each shifted one column right of the previous.
    const size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size));
    for (int r = 0; r < n; ++r)
      for (int k = 0; k <= m; ++k) s[r][r + k] = pc[m - k];
    for (int r = 0; r < m; ++r)
      for (int k = 0; k <= n; ++k) s[n + r][r + k] = qc[n - k];
    det = bareiss_det(std::move(s));
  }

  if (det.is_zero() || det.is_constant()) return det;
  return det.primitive_part();
}

}  // namespace deltakin
