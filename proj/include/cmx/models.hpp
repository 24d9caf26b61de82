#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmx/bigfloat.hpp"
#include "cmx/errors.hpp"
#include "cmx/linalg.hpp"
#include "cmx/poly.hpp"
#include "cmx/rational.hpp"
#include "cmx/scalar.hpp"

namespace cmx {

class UnsupportedModel : public UsageError {
 public:
  using UsageError::UsageError;
};

// Weights are squared overlaps |c_k|^2, stored unnormalized.
template <RealScalar T>
struct SpectralLevel {
  T energy;
  T weight;
};

template <RealScalar T>
struct SpectralModel {
  std::vector<SpectralLevel<T>> levels;
};

struct MatrixModel {
  Matrix<Rational> h;
  std::vector<Rational> reference;  // unnormalized
};

// Reference polynomial with irrational coefficients, produced on demand at
// the requested decimal precision.
using FloatPolyFactory = std::function<Poly<BigFloat>(int digits)>;

/// H = -d^2/dx^2 + V(x) with reference state ref(x) * exp(-a x^2).
struct OscillatorModel {
  Poly<Rational> potential;
  Rational gauss_width;
  std::variant<Poly<Rational>, FloatPolyFactory> reference;

  bool exact() const { return std::holds_alternative<Poly<Rational>>(reference); }
};

using ModelSpec = std::variant<SpectralModel<Rational>, MatrixModel, OscillatorModel>;

// poly(x) * exp(-width x^2)
template <RealScalar T>
struct GaussianPoly {
  Poly<T> poly;
  Rational width;
};

template <RealScalar T>
struct MomentSequence {
  std::vector<T> mu;  // mu[j] = <phi|H^j|phi> / <phi|phi>
};

void validate(const SpectralModel<Rational>& model);
void validate(const MatrixModel& model);
void validate(const OscillatorModel& model);
void validate(const ModelSpec& model);

/// Normalized Hamiltonian moments mu_0..mu_jmax.
///
/// Rational mode is exact and requires every model field to be rational;
/// BigFloat mode evaluates at `digits` decimal digits. Oscillator states
/// H^j phi are built incrementally, one Hamiltonian application per order.
template <RealScalar T>
MomentSequence<T> moments(const ModelSpec& model, int jmax, int digits = kDefaultDigits);

template <RealScalar T>
GaussianPoly<T> apply_hamiltonian(const GaussianPoly<T>& state, const OscillatorModel& model);

// Sum over even k of p_k (k-1)!! / (4a)^(k/2): the integral of
// p(x) exp(-2 a x^2) normalized so that G(1) = 1.
template <RealScalar T>
T gaussian_expectation(const Poly<T>& p, const Rational& a);

// Eigen-decomposition by cyclic Jacobi rotations; weights are normalized
// squared overlaps of the reference with each eigenvector. Levels are sorted
// by energy.
SpectralModel<BigFloat> to_spectral(const MatrixModel& model, int digits);

// Exact rational spectral levels of a model that is already spectral, or a
// diagonal matrix model.
std::optional<SpectralModel<Rational>> exact_spectral(const ModelSpec& model);

using ModelParams = std::map<std::string, std::string>;

/// Named models from the two-level, n-level, and oscillator studies.
///
///   two-level-V             [[0,V],[V,1]], reference (1,0) or ref=2 for (1,1)
///   diagonal-xi             levels {1,2}, weights (1, xi)/(1+xi)
///   diagonal-ten            levels 0..9, weights (4,1,...,1)/13
///   harmonic                x^2, exp(-2x^2/5)
///   harmonic-excited        x^2, (x^2 - 1/2) exp(-2x^2/5)
///   harmonic-equal-overlap  x^2, ((3 sqrt2 + 1) x^2 - sqrt2 + 1) exp(-x^2)
///   quartic-g               x^4, exp(-3x^2/2)
///   quartic-e               x^4, (x^2 - 1/4) exp(-3x^2/2)
ModelSpec catalog(std::string_view name, const ModelParams& params = {});
std::vector<std::string> catalog_names();

}  // namespace cmx
