#include "cmx/cumulants.hpp"

namespace cmx {

namespace {

template <RealScalar T>
T times_integer(const T& x, const Integer& n) {
  if constexpr (std::same_as<T, Rational>)
    return x * Rational(n);
  else
    return x * BigFloat(Rational(n), x.digits());
}

template <RealScalar T>
int digits_of(const T& x) {
  if constexpr (std::same_as<T, Rational>)
    return kDefaultDigits;
  else
    return x.digits();
}

// Row j of Pascal's triangle, updated in place to row j + 1.
void next_pascal_row(std::vector<Integer>& row) {
  row.push_back(1);
  for (std::size_t i = row.size() - 2; i > 0; --i) row[i] += row[i - 1];
}

}  // namespace

template <RealScalar T>
ConnectedMoments<T> connected_moments(const MomentSequence<T>& mu) {
  if (mu.mu.empty()) throw UsageError("connected_moments: empty moment sequence");
  if (mu.mu[0] != lift<T>(1, digits_of(mu.mu[0])))
    throw UsageError("connected_moments: mu_0 must be exactly 1 (normalized reference)");
  ConnectedMoments<T> out;
  std::vector<Integer> binom{1};  // C(j, .)
  for (std::size_t j = 0; j + 1 < mu.mu.size(); ++j) {
    T value = mu.mu[j + 1];
    for (std::size_t i = 0; i < j; ++i) value = value - times_integer(T(out.values[i] * mu.mu[j - i]), binom[i]);
    out.values.push_back(std::move(value));
    next_pascal_row(binom);
  }
  return out;
}

template <RealScalar T>
MomentSequence<T> moments_from_cumulants(const ConnectedMoments<T>& cumulants) {
  MomentSequence<T> out;
  const int digits = cumulants.values.empty() ? kDefaultDigits : digits_of(cumulants.values.front());
  out.mu.push_back(lift<T>(1, digits));
  std::vector<Integer> binom{1};
  for (std::size_t j = 0; j < cumulants.values.size(); ++j) {
    T value = cumulants.values[j];
    for (std::size_t i = 0; i < j; ++i)
      value = value + times_integer(T(cumulants.values[i] * out.mu[j - i]), binom[i]);
    out.mu.push_back(std::move(value));
    next_pascal_row(binom);
  }
  return out;
}

template <RealScalar T>
TaylorSeries<T> energy_series(const ConnectedMoments<T>& cumulants, int order) {
  if (order < 0) throw UsageError("energy_series: order must be non-negative");
  if (cumulants.count() < static_cast<std::size_t>(order) + 1)
    throw UsageError("energy_series: order " + std::to_string(order) + " needs " + std::to_string(order + 1) +
                     " cumulants");
  TaylorSeries<T> out;
  Integer factorial = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) factorial *= j;
    T c = cumulants.values[static_cast<std::size_t>(j)];
    if constexpr (std::same_as<T, Rational>)
      c /= Rational(factorial);
    else
      c = c / BigFloat(Rational(factorial), c.digits());
    out.coeffs.push_back(j % 2 == 0 ? c : T(-c));
  }
  return out;
}

template ConnectedMoments<Rational> connected_moments(const MomentSequence<Rational>&);
template ConnectedMoments<BigFloat> connected_moments(const MomentSequence<BigFloat>&);
template MomentSequence<Rational> moments_from_cumulants(const ConnectedMoments<Rational>&);
template MomentSequence<BigFloat> moments_from_cumulants(const ConnectedMoments<BigFloat>&);
template TaylorSeries<Rational> energy_series(const ConnectedMoments<Rational>&, int);
template TaylorSeries<BigFloat> energy_series(const ConnectedMoments<BigFloat>&, int);

void write_cumulants_csv(std::ostream& out, const ConnectedMoments<Rational>& cumulants, int significant) {
  out << "j,I_j,decimal\n";
  for (std::size_t j = 0; j < cumulants.count(); ++j) {
    const Rational& v = cumulants.values[j];
    out << j + 1 << ',' << to_string(v) << ',' << BigFloat(v, significant + 20).str(significant) << '\n';
  }
}

void write_cumulants_csv(std::ostream& out, const ConnectedMoments<BigFloat>& cumulants, int significant) {
  out << "j,I_j,decimal\n";
  for (std::size_t j = 0; j < cumulants.count(); ++j) {
    const BigFloat& v = cumulants.values[j];
    out << j + 1 << ',' << v.str(v.digits()) << ',' << v.str(significant) << '\n';
  }
}

}  // namespace cmx
