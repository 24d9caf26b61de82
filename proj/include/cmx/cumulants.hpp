#pragma once

#include <ostream>
#include <vector>

#include "cmx/models.hpp"
#include "cmx/scalar.hpp"

namespace cmx {

// I[0] holds I_1; indices are shifted by one relative to the usual notation.
template <RealScalar T>
struct ConnectedMoments {
  std::vector<T> values;

  std::size_t count() const { return values.size(); }
  // I_j for j >= 1.
  const T& operator()(std::size_t j) const { return values.at(j - 1); }
};

// coeffs[j] multiplies t^j.
template <RealScalar T>
struct TaylorSeries {
  std::vector<T> coeffs;
};

/// Connected moments from moments by the recurrence
///   I_{j+1} = mu_{j+1} - sum_{i=0}^{j-1} C(j, i) I_{i+1} mu_{j-i}.
/// Evaluated in the mode of the input; no rounding in rational mode.
template <RealScalar T>
ConnectedMoments<T> connected_moments(const MomentSequence<T>& mu);

// Inverse recurrence, moments mu_0..mu_J from I_1..I_J.
template <RealScalar T>
MomentSequence<T> moments_from_cumulants(const ConnectedMoments<T>& cumulants);

// Taylor coefficients (-1)^j I_{j+1} / j! of E(t), j = 0..order.
template <RealScalar T>
TaylorSeries<T> energy_series(const ConnectedMoments<T>& cumulants, int order);

// CSV rows "j,I_j,decimal" with a header.
void write_cumulants_csv(std::ostream& out, const ConnectedMoments<Rational>& cumulants, int significant);
void write_cumulants_csv(std::ostream& out, const ConnectedMoments<BigFloat>& cumulants, int significant);

}  // namespace cmx
