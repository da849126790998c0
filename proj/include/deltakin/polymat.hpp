#ifndef DELTAKIN_POLYMAT_HPP
#define DELTAKIN_POLYMAT_HPP

#include <array>
#include <vector>

#include "deltakin/mpoly.hpp"

namespace deltakin {

using Mat3 = std::array<std::array<MPoly, 3>, 3>;

/// Cofactor-expansion determinant of a 3x3 polynomial matrix.
MPoly det3(const Mat3& m);

/// Exact determinant of a square polynomial matrix by fraction-free
/// (Bareiss) elimination with row pivoting.
MPoly bareiss_det(std::vector<std::vector<MPoly>> m);

/// Resultant of p and q with respect to v: the determinant of the Sylvester
/// matrix with p's coefficient rows first, computed fraction-free. Inputs
/// are divided by their (positive) integer content beforehand and the
/// integer content of a nonconstant result is divided out, so the value is
/// the Sylvester determinant up to a positive rational factor with the sign
/// convention intact. Throws std::invalid_argument unless both inputs have
/// positive degree in v.
MPoly resultant(const MPoly& p, const MPoly& q, Var v);

}  // namespace deltakin

#endif
