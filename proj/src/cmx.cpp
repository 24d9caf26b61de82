#include "cmx/cmx.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "cmx/errors.hpp"
#include "cmx/linalg.hpp"
#include "cmx/roots.hpp"

namespace cmx {

namespace {

template <RealScalar T>
void require_cumulants(const ConnectedMoments<T>& cumulants, std::size_t needed, const char* what) {
  if (cumulants.count() < needed)
    throw UsageError(std::string(what) + ": needs I_1..I_" + std::to_string(needed) + ", have " +
                     std::to_string(cumulants.count()));
}

template <RealScalar T>
Matrix<T> hankel(const ConnectedMoments<T>& cumulants, std::size_t size, std::size_t offset) {
  Matrix<T> m(size, size, cumulants(offset));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m(i, j) = cumulants(i + j + offset);
  return m;
}

std::optional<std::vector<Rational>> solve_mode(const Matrix<Rational>& a, std::span<const Rational> b, int) {
  return exact_solve(a, b);
}

std::optional<std::vector<BigFloat>> solve_mode(const Matrix<BigFloat>& a, std::span<const BigFloat> b, int digits) {
  return solve(a, b, digits);
}

bool vanishes(const Rational& x, const Rational&) { return sgn(x) == 0; }

bool vanishes(const BigFloat& x, const BigFloat& scale) {
  return abs(x) <= half_precision_tolerance(x.digits()) * (abs(scale) + 1);
}

}  // namespace

template <RealScalar T>
CmxApproximant<T> knowles_energy(const ConnectedMoments<T>& cumulants, int m, int digits) {
  if (m < 1) throw UsageError("knowles_energy: order must be at least 1");
  const auto order = static_cast<std::size_t>(m);
  require_cumulants(cumulants, 2 * order + 1, "knowles_energy");
  std::vector<T> v;
  bool all_zero = true;
  for (std::size_t i = 1; i <= order; ++i) {
    v.push_back(cumulants(i + 1));
    all_zero = all_zero && vanishes(v.back(), cumulants(1));
  }
  if (all_zero) return {m, cumulants(1), ApproximantStatus::exact_eigenstate};
  Matrix<T> s = hankel(cumulants, order, 3);
  auto x = solve_mode(s, v, digits);
  if (!x) return {m, std::nullopt, ApproximantStatus::skipped_singular};
  T energy = cumulants(1);
  for (std::size_t i = 0; i < order; ++i) energy = energy - v[i] * (*x)[i];
  return {m, std::move(energy), ApproximantStatus::computed};
}

namespace {

// S_m and v_m are leading blocks of S_{m_max} and v_{m_max}. Fraction-free
// elimination of the bordered matrix [[S, v], [v^T, I_1]] (denominators
// cleared by L) leaves det(L S_m) as the m-th pivot and det(L B_m) in the
// corner, so E^(m) = corner / (pivot L) for every m in one pass.
// Orders past the first singular leading minor are left empty.
std::vector<std::optional<CmxApproximant<Rational>>> nested_knowles(const ConnectedMoments<Rational>& cumulants, int m_max) {
  const auto n = static_cast<std::size_t>(m_max);
  const std::size_t size = n + 1;
  mpz_class scale = 1;
  for (std::size_t j = 1; j <= 2 * n + 1; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), cumulants(j).get_den_mpz_t());
  auto cleared = [&](std::size_t j) -> mpz_class {
    mpz_class out = scale / cumulants(j).get_den();
    return out * cumulants(j).get_num();
  };
  // Upper triangle only; the bordered matrix stays symmetric at every step.
  std::vector<mpz_class> a(size * size);
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * size + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) at(i, j) = cleared(i + j + 3);
    at(i, n) = cleared(i + 2);
  }
  at(n, n) = cleared(1);

  std::vector<std::optional<CmxApproximant<Rational>>> out(n);
  const Rational& i1 = cumulants(1);
  mpz_class previous = 1, t;
  bool eigenstate = true;
  for (std::size_t k = 0; k < n; ++k) {
    eigenstate = eigenstate && sgn(cumulants(k + 2)) == 0;
    if (eigenstate) out[k] = CmxApproximant<Rational>{static_cast<int>(k + 1), i1, ApproximantStatus::exact_eigenstate};
    const mpz_class pivot = at(k, k);
    if (sgn(pivot) == 0) break;
    for (std::size_t i = k + 1; i < size; ++i)
      for (std::size_t j = i; j < size; ++j) {
        t = at(i, j) * pivot - at(k, i) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
    previous = pivot;
    if (!eigenstate) {
      Rational energy(at(n, n), pivot * scale);
      energy.canonicalize();
      out[k] = CmxApproximant<Rational>{static_cast<int>(k + 1), std::move(energy), ApproximantStatus::computed};
    }
  }
  return out;
}

}  // namespace

template <RealScalar T>
std::vector<CmxApproximant<T>> cmx_orders(const ConnectedMoments<T>& cumulants, std::span<const int> orders,
                                          int digits) {
  int highest = 0;
  for (int m : orders) {
    if (m < 1) throw UsageError("cmx_sequence: orders must be at least 1");
    require_cumulants(cumulants, 2 * static_cast<std::size_t>(m) + 1, "cmx_sequence");
    highest = std::max(highest, m);
  }
  std::vector<std::optional<CmxApproximant<T>>> known(static_cast<std::size_t>(highest));
  if constexpr (std::same_as<T, Rational>) {
    if (orders.size() > 1) known = nested_knowles(cumulants, highest);
  }
  std::vector<std::future<CmxApproximant<T>>> pending;
  pending.reserve(orders.size());
  for (int m : orders) {
    if (const auto& hit = known[static_cast<std::size_t>(m - 1)]) {
      std::promise<CmxApproximant<T>> ready;
      ready.set_value(*hit);
      pending.push_back(ready.get_future());
      continue;
    }
    pending.push_back(std::async(std::launch::async, [&cumulants, m, digits] { return knowles_energy(cumulants, m, digits); }));
  }
  std::vector<CmxApproximant<T>> out;
  out.reserve(orders.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

template <RealScalar T>
std::vector<CmxApproximant<T>> cmx_sequence(const ConnectedMoments<T>& cumulants, int m_max, int digits) {
  if (m_max < 1) throw UsageError("cmx_sequence: m_max must be at least 1");
  std::vector<int> orders;
  for (int m = 1; m <= m_max; ++m) orders.push_back(m);
  return cmx_orders(cumulants, std::span<const int>(orders), digits);
}

template <RealScalar T>
std::vector<BigComplex> exponential_parameters(const ConnectedMoments<T>& cumulants, int order, int digits) {
  if (order < 1) throw UsageError("exponential_parameters: order must be at least 1");
  const auto size = static_cast<std::size_t>(order);
  require_cumulants(cumulants, 2 * size + 1, "exponential_parameters");
  Matrix<T> t1 = hankel(cumulants, size, 3);
  Matrix<T> t0 = hankel(cumulants, size, 2);
  if constexpr (std::same_as<T, Rational>) {
    if (determinant(t0) == 0) throw DegeneratePencil("exponential_parameters: det(I_{i+j}) vanishes");
  } else {
    std::vector<BigFloat> probe(size, BigFloat(1, digits));
    if (!solve(t0, probe, digits)) throw DegeneratePencil("exponential_parameters: det(I_{i+j}) vanishes");
  }
  return poly_roots(pencil_char_poly(t1, t0), digits);
}

template <RealScalar T>
ExponentialFit exponential_amplitudes(const ConnectedMoments<T>& cumulants, std::span<const BigComplex> exponents,
                                      int digits) {
  const std::size_t m = exponents.size();
  require_cumulants(cumulants, m + 1, "exponential_amplitudes");
  auto as_complex = [digits](const T& x) { return BigComplex(to_bigfloat(x, digits)); };
  ExponentialFit fit;
  fit.order = static_cast<int>(m);
  fit.digits = digits;
  fit.a0 = as_complex(cumulants(1));
  if (m == 0) return fit;

  const BigFloat tol = half_precision_tolerance(digits);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (abs(exponents[i] - exponents[j]) <= tol * (abs(exponents[i]) + abs(exponents[j]) + 1))
        throw SingularSystem("exponential_amplitudes: repeated exponents give a singular Vandermonde system");

  Matrix<BigComplex> vandermonde(m, m, BigComplex(BigFloat(0, digits)));
  std::vector<BigComplex> rhs;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      BigComplex b(BigFloat(exponents[j].re, digits), BigFloat(exponents[j].im, digits));
      vandermonde(k, j) = k == 0 ? b : vandermonde(k - 1, j) * b;
    }
    rhs.push_back(as_complex(cumulants(k + 2)));
  }
  auto amplitudes = solve(vandermonde, rhs, digits);
  if (!amplitudes) throw SingularSystem("exponential_amplitudes: singular Vandermonde system");
  for (std::size_t j = 0; j < m; ++j) {
    fit.a0 -= (*amplitudes)[j];
    fit.terms.push_back({(*amplitudes)[j], BigComplex(BigFloat(exponents[j].re, digits), BigFloat(exponents[j].im, digits))});
  }
  return fit;
}

BigFloat evaluate_fit(const ExponentialFit& fit, const BigFloat& t) {
  const BigFloat time(t, fit.digits);
  BigComplex sum = fit.a0;
  BigFloat scale = abs(fit.a0);
  for (const auto& term : fit.terms) {
    BigComplex e = term.amplitude * exp(BigComplex(-(term.exponent.re * time), -(term.exponent.im * time)));
    scale += abs(e);
    sum += e;
  }
  if (abs(sum.im) > half_precision_tolerance(fit.digits) * scale)
    throw InconsistentFit("evaluate_fit: imaginary residual " + sum.im.str(6) + " is not negligible");
  return sum.re;
}

Diagnosis classify_fit(const ExponentialFit& fit, std::optional<BigFloat> reality_tol) {
  if (fit.order < 1 || fit.terms.empty()) throw UsageError("classify_fit: fit order must be at least 1");
  BigFloat tol(0, fit.digits);
  if (reality_tol) {
    tol = *reality_tol;
  } else {
    BigFloat largest(0, fit.digits);
    for (const auto& term : fit.terms) {
      BigFloat a = abs(term.exponent);
      if (a > largest) largest = a;
    }
    tol = half_precision_tolerance(fit.digits) * largest;
  }
  bool all_real = true, any_negative = false, all_negative = true, any_imaginary = false;
  for (const auto& term : fit.terms) {
    const BigComplex& b = term.exponent;
    const bool real = abs(b.im) <= tol;
    all_real = all_real && real;
    const bool negative = b.re < -tol;
    any_negative = any_negative || negative;
    all_negative = all_negative && negative;
    any_imaginary = any_imaginary || (!real && abs(b.re) <= tol);
  }
  if (any_negative) {
    if (all_real && all_negative)
      return {FitClass::AllRealNegative, Target::excited,
              "all exponents real and negative: E^(M)(t) approaches its limit as t -> -infinity"};
    return {FitClass::MixedOrNegativeRe, Target::excited,
            "an exponent has negative real part: E^(M)(t) is invalid as t -> +infinity"};
  }
  if (any_imaginary)
    return {FitClass::PurelyImaginary, Target::divergent,
            "purely imaginary exponents: E^(M)(t) oscillates and does not tend to a limit"};
  if (all_real)
    return {FitClass::AllRealPositive, Target::ground, "all exponents real and positive: monotone decay"};
  return {FitClass::ComplexPositiveRe, Target::ground,
          "complex exponents with positive real part: damped oscillation with a transient minimum at some t > 0"};
}

std::string to_string(ApproximantStatus status) {
  switch (status) {
    case ApproximantStatus::computed: return "computed";
    case ApproximantStatus::skipped_singular: return "skipped-singular";
    case ApproximantStatus::exact_eigenstate: return "exact-eigenstate";
  }
  return "unknown";
}

std::string to_string(FitClass fit_class) {
  switch (fit_class) {
    case FitClass::AllRealPositive: return "AllRealPositive";
    case FitClass::ComplexPositiveRe: return "ComplexPositiveRe";
    case FitClass::MixedOrNegativeRe: return "MixedOrNegativeRe";
    case FitClass::AllRealNegative: return "AllRealNegative";
    case FitClass::PurelyImaginary: return "PurelyImaginary";
  }
  return "unknown";
}

std::string to_string(Target target) {
  switch (target) {
    case Target::ground: return "ground";
    case Target::excited: return "excited";
    case Target::divergent: return "divergent";
  }
  return "unknown";
}

template <RealScalar T>
void write_sequence_csv(std::ostream& out, const std::vector<CmxApproximant<T>>& sequence, int significant) {
  out << "m,value,status\n";
  for (const auto& a : sequence) {
    out << a.order << ',';
    if (a.value) out << to_bigfloat(*a.value, significant + 20).str(significant);
    out << ',' << to_string(a.status) << '\n';
  }
}

void write_fit_csv(std::ostream& out, const ExponentialFit& fit, int significant) {
  out << "j,re_b,im_b,re_A,im_A\n";
  out << 0 << ",,," << fit.a0.re.str(significant) << ',' << fit.a0.im.str(significant) << '\n';
  for (std::size_t j = 0; j < fit.terms.size(); ++j) {
    const auto& t = fit.terms[j];
    out << j + 1 << ',' << t.exponent.re.str(significant) << ',' << t.exponent.im.str(significant) << ','
        << t.amplitude.re.str(significant) << ',' << t.amplitude.im.str(significant) << '\n';
  }
}

template CmxApproximant<Rational> knowles_energy(const ConnectedMoments<Rational>&, int, int);
template CmxApproximant<BigFloat> knowles_energy(const ConnectedMoments<BigFloat>&, int, int);
template std::vector<CmxApproximant<Rational>> cmx_sequence(const ConnectedMoments<Rational>&, int, int);
template std::vector<CmxApproximant<BigFloat>> cmx_sequence(const ConnectedMoments<BigFloat>&, int, int);
template std::vector<CmxApproximant<Rational>> cmx_orders(const ConnectedMoments<Rational>&, std::span<const int>, int);
template std::vector<CmxApproximant<BigFloat>> cmx_orders(const ConnectedMoments<BigFloat>&, std::span<const int>, int);
template std::vector<BigComplex> exponential_parameters(const ConnectedMoments<Rational>&, int, int);
template std::vector<BigComplex> exponential_parameters(const ConnectedMoments<BigFloat>&, int, int);
template ExponentialFit exponential_amplitudes(const ConnectedMoments<Rational>&, std::span<const BigComplex>, int);
template ExponentialFit exponential_amplitudes(const ConnectedMoments<BigFloat>&, std::span<const BigComplex>, int);
template void write_sequence_csv(std::ostream&, const std::vector<CmxApproximant<Rational>>&, int);
template void write_sequence_csv(std::ostream&, const std::vector<CmxApproximant<BigFloat>>&, int);

}  // namespace cmx
