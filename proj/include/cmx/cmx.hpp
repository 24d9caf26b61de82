#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cmx/bigfloat.hpp"
#include "cmx/cumulants.hpp"
#include "cmx/scalar.hpp"

namespace cmx {

enum class ApproximantStatus { computed, skipped_singular, exact_eigenstate };

template <RealScalar T>
struct CmxApproximant {
  int order = 0;
  std::optional<T> value;  // empty iff status == skipped_singular
  ApproximantStatus status = ApproximantStatus::computed;
};

/// Knowles energy approximant of order m,
///   E^(m) = I_1 - v^T S^{-1} v,  S_ij = I_{i+j+1}, v_i = I_{i+1}, i,j = 1..m.
///
/// A vanishing v short-circuits to I_1 (exact eigenstate); a singular S with
/// nonzero v marks the order as skipped. Needs I_1..I_{2m+1}.
template <RealScalar T>
CmxApproximant<T> knowles_energy(const ConnectedMoments<T>& cumulants, int m, int digits = kDefaultDigits);

// Orders 1..m_max, evaluated concurrently and returned in order.
template <RealScalar T>
std::vector<CmxApproximant<T>> cmx_sequence(const ConnectedMoments<T>& cumulants, int m_max,
                                            int digits = kDefaultDigits);

// Same, restricted to the listed orders.
template <RealScalar T>
std::vector<CmxApproximant<T>> cmx_orders(const ConnectedMoments<T>& cumulants, std::span<const int> orders,
                                          int digits = kDefaultDigits);

/// Exponents b_{j,M}: the M roots of det(I_{i+j+1} - b I_{i+j}) = 0,
/// i,j = 1..M, in the root ordering of poly_roots. Throws DegeneratePencil
/// when det(I_{i+j}) vanishes.
template <RealScalar T>
std::vector<BigComplex> exponential_parameters(const ConnectedMoments<T>& cumulants, int order,
                                               int digits = kDefaultDigits);

struct ExponentialTerm {
  BigComplex amplitude;
  BigComplex exponent;
};

/// E^(M)(t) = A_0 + sum_j A_j exp(-b_j t).
struct ExponentialFit {
  int order = 0;
  int digits = kDefaultDigits;
  BigComplex a0;
  std::vector<ExponentialTerm> terms;
};

// Amplitudes from the Vandermonde system sum_j A_j b_j^k = I_{k+1}, k = 1..M,
// then A_0 = I_1 - sum_j A_j.
template <RealScalar T>
ExponentialFit exponential_amplitudes(const ConnectedMoments<T>& cumulants, std::span<const BigComplex> exponents,
                                      int digits = kDefaultDigits);

template <RealScalar T>
ExponentialFit fit_exponentials(const ConnectedMoments<T>& cumulants, int order, int digits = kDefaultDigits) {
  auto b = exponential_parameters(cumulants, order, digits);
  return exponential_amplitudes(cumulants, b, digits);
}

// Re E^(M)(t); throws InconsistentFit if the imaginary part is not negligible.
BigFloat evaluate_fit(const ExponentialFit& fit, const BigFloat& t);

enum class FitClass { AllRealPositive, ComplexPositiveRe, MixedOrNegativeRe, AllRealNegative, PurelyImaginary };
enum class Target { ground, excited, divergent };

struct Diagnosis {
  FitClass fit_class;
  Target predicted_target;
  std::string note;
};

/// Convergence diagnosis from the exponent multiset.
///
/// An exponent is real when |Im b| <= tol and counts as negative when
/// Re b < -tol. tol defaults to 10^(-digits/2) * max_j |b_j|. The predicted
/// target follows the maximum-overlap picture and is a prediction only.
Diagnosis classify_fit(const ExponentialFit& fit, std::optional<BigFloat> reality_tol = std::nullopt);

std::string to_string(ApproximantStatus status);
std::string to_string(FitClass fit_class);
std::string to_string(Target target);

template <RealScalar T>
void write_sequence_csv(std::ostream& out, const std::vector<CmxApproximant<T>>& sequence, int significant);
void write_fit_csv(std::ostream& out, const ExponentialFit& fit, int significant);

}  // namespace cmx
