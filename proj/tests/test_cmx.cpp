#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>
#include <vector>

#include "cmx/cmx.hpp"
#include "cmx/errors.hpp"
#include "cmx/linalg.hpp"

using namespace cmx;

namespace {

constexpr int kDigits = 64;

Rational q(const char* s) { return parse_rational(s); }
BigFloat f(const char* s, int digits = kDigits) { return BigFloat::parse(s, digits); }
BigFloat f(const Rational& x, int digits = kDigits) { return BigFloat(x, digits); }
BigFloat f(int x) { return BigFloat(x, kDigits); }

const BigFloat& tol() {
  static const BigFloat t = half_precision_tolerance(kDigits);
  return t;
}

ConnectedMoments<Rational> cumulants(const ModelSpec& model, int jmax) {
  return connected_moments(moments<Rational>(model, jmax));
}

ConnectedMoments<Rational> xi_model(const char* xi, int jmax) {
  return cumulants(catalog("diagonal-xi", {{"xi", xi}}), jmax);
}

bool near(const BigComplex& z, const BigFloat& re, const BigFloat& im, const BigFloat& eps) {
  return abs(z.re - re) < eps && abs(z.im - im) < eps;
}

Rational value_of(const CmxApproximant<Rational>& a) {
  REQUIRE(a.value);
  return *a.value;
}

}  // namespace

TEST_CASE("knowles_energy examples") {
  auto quarter = xi_model("1/4", 5);
  auto a = knowles_energy(quarter, 2);
  CHECK(a.status == ApproximantStatus::computed);
  CHECK(value_of(a) == q("66/65"));
  CHECK(f(value_of(a)).str(10) == "1.015384615");

  CHECK(value_of(knowles_energy(xi_model("4", 5), 2)) == q("129/65"));

  auto one = xi_model("1", 5);
  auto skipped = knowles_energy(one, 1);
  CHECK(skipped.status == ApproximantStatus::skipped_singular);
  CHECK_FALSE(skipped.value);
  CHECK(value_of(knowles_energy(one, 2)) == q("3/2"));

  SpectralModel<Rational> single{{{q("7/3"), q("1")}}};
  auto eigen = cumulants(single, 9);
  for (int m = 1; m <= 4; ++m) {
    auto e = knowles_energy(eigen, m);
    CHECK(e.status == ApproximantStatus::exact_eigenstate);
    CHECK(value_of(e) == q("7/3"));
  }
  CHECK_THROWS_AS(knowles_energy(quarter, 3), UsageError);
  CHECK_THROWS_AS(knowles_energy(quarter, 0), UsageError);
}

TEST_CASE("knowles_energy in BigFloat mode") {
  auto quarter = connected_moments(moments<BigFloat>(catalog("diagonal-xi", {{"xi", "1/4"}}), 5, kDigits));
  auto a = knowles_energy(quarter, 2, kDigits);
  REQUIRE(a.value);
  CHECK(abs(*a.value - f(q("66/65"))) < tol());
}

TEST_CASE("cmx_sequence examples") {
  auto weak = cumulants(catalog("two-level-V", {{"V", "1/10"}}), 17);
  auto seq = cmx_sequence(weak, 8);
  REQUIRE(seq.size() == 8);
  const BigFloat ground = f("-0.0099019513592785");
  BigFloat previous(1, kDigits);
  for (const auto& a : seq) {
    CHECK(a.order == static_cast<int>(&a - seq.data()) + 1);
    if (!a.value) continue;
    BigFloat err = abs(f(*a.value) - ground);
    CHECK(err <= previous);
    previous = err;
  }
  CHECK(previous < f("1e-8"));

  auto four = xi_model("4", 25);
  const std::vector<int> orders{2, 4, 6, 8, 10};
  const std::vector<const char*> table{"1.984615384", "1.99902439", "1.999938968", "1.999996185", "1.999999761"};
  auto col = cmx_orders(four, std::span<const int>(orders));
  for (std::size_t i = 0; i < orders.size(); ++i) {
    REQUIRE(col[i].value);
    CHECK(abs(f(*col[i].value) - f(table[i])) < f("1e-9"));
  }

  auto quartic = cumulants(catalog("quartic-g"), 11);
  CHECK(f(value_of(knowles_energy(quartic, 5))).str(10) == "1.060692159");
}

TEST_CASE("exponential_parameters examples") {
  auto b = exponential_parameters(xi_model("1/10", 5), 2);
  REQUIRE(b.size() == 2);
  CHECK(near(b[0], f(q("13/11")), f(0), tol()));
  CHECK(near(b[1], f(q("14/11")), f(0), tol()));
  CHECK(b[0].im.is_zero());

  b = exponential_parameters(xi_model("1/2", 5), 2);
  REQUIRE(b.size() == 2);
  const BigFloat im = sqrt(f(15)) / 6;
  CHECK(near(b[0], f(q("1/2")), -im, tol()));
  CHECK(near(b[1], f(q("1/2")), im, tol()));

  b = exponential_parameters(cumulants(catalog("harmonic"), 7), 3);
  REQUIRE(b.size() == 3);
  CHECK(abs(b[0].re - 4) < f("0.01"));
  CHECK(abs(b[1].re - 8) < f("0.05"));
  CHECK(abs(b[2].re - f("12.6")) < f("0.05"));

  SpectralModel<Rational> single{{{q("2"), q("1")}}};
  CHECK_THROWS_AS(exponential_parameters(cumulants(single, 5), 2), DegeneratePencil);
  CHECK_THROWS_AS(exponential_parameters(xi_model("1/2", 4), 2), UsageError);
}

TEST_CASE("exponential_amplitudes examples") {
  auto tenth = xi_model("1/10", 5);
  std::vector<BigComplex> b{BigComplex(f(q("13/11"))), BigComplex(f(q("14/11")))};
  auto fit = exponential_amplitudes(tenth, std::span<const BigComplex>(b));
  REQUIRE(fit.terms.size() == 2);
  CHECK(near(fit.a0, f(q("1002/1001")), f(0), tol()));
  CHECK(near(fit.terms[0].amplitude, f(q("50/143")), f(0), tol()));
  CHECK(near(fit.terms[1].amplitude, f(q("-20/77")), f(0), tol()));

  auto two = fit_exponentials(xi_model("2", 5), 2);
  CHECK(near(two.a0, f(q("17/9")), f(0), tol()));

  SpectralModel<Rational> single{{{q("5/2"), q("1")}}};
  auto constant = exponential_amplitudes(cumulants(single, 3), std::span<const BigComplex>{});
  CHECK(constant.order == 0);
  CHECK(near(constant.a0, f(q("5/2")), f(0), tol()));

  std::vector<BigComplex> repeated{BigComplex(f(1)), BigComplex(f(1))};
  CHECK_THROWS_AS(exponential_amplitudes(tenth, std::span<const BigComplex>(repeated)), SingularSystem);
}

TEST_CASE("evaluate_fit examples") {
  auto one = fit_exponentials(xi_model("1", 5), 2);
  CHECK(abs(evaluate_fit(one, f(0)) - f(q("3/2"))) < tol());
  const BigFloat t = BigFloat::pi(kDigits) / sqrt(f(2));
  CHECK(abs(evaluate_fit(one, t) - (f(q("3/2")) - sqrt(f(2)) / 4)) < tol());

  auto half = fit_exponentials(xi_model("1/2", 5), 2);
  CHECK(abs(evaluate_fit(half, f(200)) - f(q("10/9"))) < tol());

  ExponentialFit broken = one;
  broken.terms[0].amplitude = BigComplex(f(1), f(1));
  CHECK_THROWS_AS(evaluate_fit(broken, f(1)), InconsistentFit);
}

TEST_CASE("classify_fit examples") {
  auto d = classify_fit(fit_exponentials(xi_model("1/20", 5), 2));
  CHECK(d.fit_class == FitClass::AllRealPositive);
  CHECK(d.predicted_target == Target::ground);

  d = classify_fit(fit_exponentials(xi_model("11", 5), 2));
  CHECK(d.fit_class == FitClass::AllRealNegative);
  CHECK(d.predicted_target == Target::excited);

  d = classify_fit(fit_exponentials(xi_model("1", 5), 2));
  CHECK(d.fit_class == FitClass::PurelyImaginary);
  CHECK(d.predicted_target == Target::divergent);

  d = classify_fit(fit_exponentials(xi_model("1/2", 5), 2));
  CHECK(d.fit_class == FitClass::ComplexPositiveRe);
  CHECK(d.predicted_target == Target::ground);

  d = classify_fit(fit_exponentials(xi_model("3", 5), 2));
  CHECK(d.fit_class == FitClass::MixedOrNegativeRe);
  CHECK(d.predicted_target == Target::excited);

  d = classify_fit(fit_exponentials(cumulants(catalog("harmonic-excited"), 7), 3));
  CHECK(d.fit_class == FitClass::MixedOrNegativeRe);
  CHECK(to_string(d.fit_class) == "MixedOrNegativeRe");
  CHECK(to_string(d.predicted_target) == "excited");

  CHECK_THROWS_AS(classify_fit(ExponentialFit{}), UsageError);
}

TEST_CASE("csv emitters") {
  std::ostringstream seq;
  write_sequence_csv(seq, cmx_sequence(xi_model("1", 5), 2), 10);
  CHECK(seq.str() == "m,value,status\n1,,skipped-singular\n2,1.500000000,computed\n");

  std::ostringstream fit;
  write_fit_csv(fit, fit_exponentials(xi_model("1/10", 5), 2), 6);
  CHECK(fit.str().rfind("j,re_b,im_b,re_A,im_A\n0,,,1.00100,", 0) == 0);
}

TEST_CASE("property: knowles energy equals the fitted A0") {
  for (const char* xi : {"1/20", "1/4", "1/2", "3", "11"}) {
    auto i = xi_model(xi, 9);
    for (int m = 1; m <= 2; ++m) {
      auto a = knowles_energy(i, m);
      if (a.status != ApproximantStatus::computed) continue;
      auto fit = fit_exponentials(i, m);
      CHECK(near(fit.a0, f(*a.value), f(0), tol()));
    }
  }
  for (const char* name : {"harmonic", "quartic-g", "quartic-e"}) {
    auto i = cumulants(catalog(name), 13);
    for (int m = 1; m <= 6; ++m) {
      auto fit = fit_exponentials(i, m);
      auto a = knowles_energy(i, m);
      REQUIRE(a.value);
      CHECK(abs(fit.a0.re - f(*a.value)) < tol() * (abs(fit.a0.re) + 1));
      CHECK(abs(fit.a0.im) < tol());
    }
  }
}

TEST_CASE("property: shift covariance") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), w(1, 5);
  for (int trial = 0; trial < 10; ++trial) {
    SpectralModel<Rational> base;
    for (int k = 0; k < 3; ++k) base.levels.push_back({Rational(k * 2 + 1) + make_rational(num(rng), 7), Rational(w(rng))});
    const Rational s = make_rational(num(rng), den(rng));
    auto shifted = base;
    for (auto& l : shifted.levels) l.energy += s;
    auto i0 = cumulants(base, 7), i1 = cumulants(shifted, 7);
    for (int m = 1; m <= 3; ++m) {
      auto a0 = knowles_energy(i0, m), a1 = knowles_energy(i1, m);
      REQUIRE(a0.status == a1.status);
      if (a0.value) CHECK(*a1.value == *a0.value + s);
    }
    auto f0 = fit_exponentials(i0, 3), f1 = fit_exponentials(i1, 3);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(near(f1.terms[j].exponent, f0.terms[j].exponent.re, f0.terms[j].exponent.im, tol()));
    CHECK(near(f1.a0, f0.a0.re + f(s), f0.a0.im, tol() * 10));
  }
}

TEST_CASE("property: every root annihilates the pencil determinant") {
  for (const char* name : {"harmonic", "harmonic-excited", "quartic-g", "quartic-e"}) {
    auto i = cumulants(catalog(name), 9);
    const std::size_t m = 4;
    auto b = exponential_parameters(i, static_cast<int>(m));
    for (const auto& root : b) {
      Matrix<BigComplex> pencil(m, m, BigComplex(f(0)));
      BigFloat scale(1, kDigits);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
          BigComplex t1(f(i(r + c + 3))), t0(f(i(r + c + 2)));
          pencil(r, c) = t1 - root * t0;
          scale = scale * (abs(t1) + abs(root) * abs(t0) + 1);
        }
      // Determinant by complex elimination; any vanishing pivot already proves singularity.
      BigComplex det(f(1));
      for (std::size_t k = 0; k < m; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < m; ++r)
          if (abs(pencil(r, k)) > abs(pencil(pivot, k))) pivot = r;
        if (pencil(pivot, k).re.is_zero() && pencil(pivot, k).im.is_zero()) {
          det = BigComplex(f(0));
          break;
        }
        if (pivot != k) {
          for (std::size_t c = 0; c < m; ++c) std::swap(pencil(k, c), pencil(pivot, c));
          det = -det;
        }
        det = det * pencil(k, k);
        for (std::size_t r = k + 1; r < m; ++r) {
          BigComplex factor = pencil(r, k) / pencil(k, k);
          for (std::size_t c = k; c < m; ++c) pencil(r, c) = pencil(r, c) - factor * pencil(k, c);
        }
      }
      CHECK(abs(det) < tol() * scale);
    }
  }
}

TEST_CASE("property: fit reproduces the Taylor series through order M") {
  for (const char* xi : {"1/10", "1/2", "1", "3"}) {
    auto i = xi_model(xi, 9);
    auto fit = fit_exponentials(i, 2);
    auto series = energy_series(i, 2);
    // d^k/dt^k of A0 + sum A_j exp(-b_j t) at t = 0, divided by k!.
    BigComplex derivative = fit.a0;
    for (const auto& term : fit.terms) derivative += term.amplitude;
    CHECK(near(derivative, f(series.coeffs[0]), f(0), tol()));
    BigFloat factorial(1, kDigits);
    for (int k = 1; k <= 2; ++k) {
      factorial = factorial * k;
      BigComplex sum(f(0));
      for (const auto& term : fit.terms) {
        BigComplex power(f(1));
        for (int p = 0; p < k; ++p) power = power * (-term.exponent);
        sum += term.amplitude * power;
      }
      CHECK(near(sum * (BigFloat(1, kDigits) / factorial), f(series.coeffs[static_cast<std::size_t>(k)]), f(0), tol()));
    }
  }
}

TEST_CASE("property: class changes at xi = 5 -+ 2 sqrt 6") {
  // 5 - 2 sqrt6 = 0.1010205..., 5 + 2 sqrt6 = 9.8989794...
  CHECK(classify_fit(fit_exponentials(xi_model("1010/10000", 5), 2)).fit_class == FitClass::AllRealPositive);
  CHECK(classify_fit(fit_exponentials(xi_model("1011/10000", 5), 2)).fit_class == FitClass::ComplexPositiveRe);
  CHECK(classify_fit(fit_exponentials(xi_model("98989/10000", 5), 2)).fit_class == FitClass::MixedOrNegativeRe);
  CHECK(classify_fit(fit_exponentials(xi_model("98990/10000", 5), 2)).fit_class == FitClass::AllRealNegative);
}

TEST_CASE("property: the sequence approaches the max-overlap level") {
  struct Case {
    ModelSpec model;
    int order;
    BigFloat target;
    std::vector<BigFloat> levels;
  };
  std::vector<BigFloat> oscillator;
  for (int n = 0; n < 12; ++n) oscillator.push_back(f(2 * n + 1));
  std::vector<Case> cases{
      {catalog("diagonal-xi", {{"xi", "1/4"}}), 10, f(1), {f(1), f(2)}},
      {catalog("diagonal-xi", {{"xi", "4"}}), 10, f(2), {f(1), f(2)}},
      {catalog("harmonic"), 8, f(1), oscillator},
      {catalog("harmonic-excited"), 8, f(5), oscillator},
      {catalog("quartic-g"), 8, f("1.0603620904841828996"),
       {f("1.0603620904841828996"), f("3.7996730298013941688"), f("7.4556979379867383922")}},
  };
  for (const auto& c : cases) {
    auto a = knowles_energy(cumulants(c.model, 2 * c.order + 1), c.order);
    REQUIRE(a.value);
    const BigFloat value = f(*a.value);
    const BigFloat to_target = abs(value - c.target);
    for (const auto& level : c.levels)
      if (level != c.target) CHECK(to_target < abs(value - level));
  }
}

TEST_CASE("property: the nested sequence agrees with per-order solves") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> num(-30, 30), w(1, 9);
  std::vector<ConnectedMoments<Rational>> inputs{xi_model("1", 15), xi_model("1/4", 15),
                                                 cumulants(catalog("two-level-V", {{"V", "1"}, {"ref", "2"}}), 15)};
  for (int trial = 0; trial < 8; ++trial) {
    SpectralModel<Rational> model;
    for (int k = 0; k < 3 + trial % 3; ++k) model.levels.push_back({make_rational(num(rng), 3) + 11 * k, Rational(w(rng))});
    inputs.push_back(cumulants(model, 15));
  }
  SpectralModel<Rational> single{{{q("5/2"), q("1")}}};
  inputs.push_back(cumulants(single, 15));
  for (const auto& i : inputs) {
    auto seq = cmx_sequence(i, 7);
    for (int m = 1; m <= 7; ++m) {
      auto one = knowles_energy(i, m);
      const auto& got = seq[static_cast<std::size_t>(m - 1)];
      CHECK(got.order == m);
      CHECK(got.status == one.status);
      CHECK(got.value == one.value);
    }
  }
}
