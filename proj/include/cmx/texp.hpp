#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "cmx/bigfloat.hpp"
#include "cmx/cumulants.hpp"
#include "cmx/models.hpp"
#include "cmx/poly.hpp"

namespace cmx {

// E(t) = sum w_k E_k exp(-t E_k) / sum w_k exp(-t E_k), with the exponentials
// shifted by min E_k. At t = 0 the result is mu_1 rounded once.
template <RealScalar T>
BigFloat exact_E_of_t(const SpectralModel<T>& model, const BigFloat& t, int digits = kDefaultDigits);

// Z(t) = sum w_k exp(-t E_k) / sum w_k.
template <RealScalar T>
BigFloat exact_Z_of_t(const SpectralModel<T>& model, const BigFloat& t, int digits = kDefaultDigits);

// E(0) = mu_1, exactly.
Rational exact_E_at_zero(const SpectralModel<Rational>& model);

/// [L/M] = numerator / denominator with denominator(0) = 1.
///
/// `m` is the denominator order actually used; it drops below
/// `requested_m` when the linear system for the larger order was singular.
struct PadeApproximant {
  Poly<Rational> numerator;
  Poly<Rational> denominator;
  int l = 0;
  int m = 0;
  int requested_m = 0;
};

PadeApproximant pade(const TaylorSeries<Rational>& series, int l, int m);

enum class StationaryKind { minimum, maximum, saddle };

/// A critical point of [L/M] on the real axis.
///
/// Points with slope ~ 0 are true stationary points, classified by the first
/// nonvanishing derivative of order 2..4. Odd-order approximants of the
/// oscillating two-level E(t) may have no real critical point at all but a
/// flat shoulder instead: an inflection where |R'| has a local minimum. Those
/// are reported as saddles carrying their residual slope.
struct StationaryPoint {
  BigFloat t;
  BigFloat value;
  StationaryKind kind = StationaryKind::saddle;
  BigFloat slope;
};

struct StationaryOptions {
  BigFloat lo = BigFloat(0, kDefaultDigits);
  BigFloat hi = BigFloat(20, kDefaultDigits);
  int grid = 512;
  bool shoulders = true;
};

std::vector<StationaryPoint> stationary_points(const PadeApproximant& p, const StationaryOptions& options,
                                               int digits = kDefaultDigits);

BigFloat evaluate(const PadeApproximant& p, const BigFloat& t);

// Roots of the denominator.
std::vector<BigComplex> pade_poles(const PadeApproximant& p, int digits = kDefaultDigits);

// (ln xi - i pi, ln xi + i pi) / (E1 - E0): the zeros of Z(t) nearest the real axis.
std::pair<BigComplex, BigComplex> two_level_singularity(const Rational& e0, const Rational& e1, const Rational& xi,
                                                        int digits = kDefaultDigits);

// dt/dE = 1 / ((E0 - E)(E1 - E)) on the open interval (E0, E1).
Rational dt_dE_two_level(const Rational& e0, const Rational& e1, const Rational& e);

// Single-exponential estimate 1 / (b1 (E0 - E)).
BigFloat dt_dE_single_exponential(const BigFloat& b1, const BigFloat& e0, const BigFloat& e);

std::string to_string(StationaryKind kind);

void write_stationary_csv(std::ostream& out, const std::vector<std::pair<PadeApproximant, std::vector<StationaryPoint>>>& rows,
                          int significant);
void write_poles_csv(std::ostream& out, const std::vector<BigComplex>& poles, int significant);

}  // namespace cmx
