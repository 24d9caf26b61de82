#pragma once

#include <vector>

#include "cmx/bigfloat.hpp"
#include "cmx/poly.hpp"

namespace cmx {

/// All complex roots of a real polynomial by Aberth-Ehrlich simultaneous
/// iteration at `digits` decimal digits (plus guard digits).
///
/// Roots are returned ordered by ascending real part, ties (real parts equal
/// to 10^(-digits/2)) broken by ascending imaginary part. Roots whose
/// imaginary part is below the same tolerance are returned as exactly real.
/// Each root satisfies |p(z)| < 10^(-digits/2) * sum_k |p_k||z|^k, otherwise
/// NonConvergence is thrown with the best residual reached.
std::vector<BigComplex> poly_roots(const Poly<Rational>& p, int digits);
std::vector<BigComplex> poly_roots(const Poly<BigFloat>& p, int digits);

// Sort in the root ordering used throughout the library.
void sort_roots(std::vector<BigComplex>& roots, int digits);

}  // namespace cmx
