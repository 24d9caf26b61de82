#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>
#include <vector>

#include "cmx/cumulants.hpp"

using namespace cmx;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<Rational> qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

// Cumulants of a two-point law on {1, 2} with P(2) = p, from the Bernoulli
// closed forms shifted by 1.
std::vector<Rational> bernoulli_oracle(const Rational& p) {
  const Rational pq = p * (1 - p);
  return {1 + p, pq, pq * (1 - 2 * p), pq * (1 - 6 * pq), pq * (1 - 2 * p) * (1 - 12 * pq)};
}

ConnectedMoments<Rational> cumulants_of(const ModelSpec& model, int jmax) {
  return connected_moments(moments<Rational>(model, jmax));
}

SpectralModel<Rational> random_spectrum(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-12, 12), w(1, 7), n(1, 5);
  SpectralModel<Rational> model;
  const int levels = n(rng);
  for (int k = 0; k < levels; ++k) model.levels.push_back({make_rational(e(rng), w(rng)), Rational(w(rng))});
  return model;
}

}  // namespace

TEST_CASE("connected_moments examples") {
  CHECK(connected_moments(MomentSequence<Rational>{qs({"1", "3", "9", "27"})}).values == qs({"3", "0", "0"}));
  CHECK(cumulants_of(catalog("diagonal-xi", {{"xi", "1/4"}}), 5).values ==
        qs({"6/5", "4/25", "12/125", "4/625", "-276/3125"}));
  CHECK(cumulants_of(catalog("diagonal-xi", {{"xi", "1/4"}}), 5).values == bernoulli_oracle(q("1/5")));
  CHECK(cumulants_of(catalog("harmonic"), 2).values == qs({"41/40", "81/800"}));
  CHECK_THROWS_AS(connected_moments(MomentSequence<Rational>{qs({"2", "3"})}), UsageError);
  CHECK_THROWS_AS(connected_moments(MomentSequence<Rational>{}), UsageError);
}

TEST_CASE("Bernoulli oracle across xi") {
  for (const char* xi : {"1/10", "1/2", "1", "3", "11"}) {
    const Rational x = q(xi);
    CHECK(cumulants_of(catalog("diagonal-xi", {{"xi", xi}}), 5).values == bernoulli_oracle(x / (1 + x)));
  }
}

TEST_CASE("energy_series") {
  ConnectedMoments<Rational> eigen{qs({"3", "0", "0", "0"})};
  CHECK(energy_series(eigen, 3).coeffs == qs({"3", "0", "0", "0"}));

  auto xi1 = cumulants_of(catalog("diagonal-xi", {{"xi", "1"}}), 6);
  CHECK(energy_series(xi1, 3).coeffs == qs({"3/2", "-1/4", "0", "1/48"}));

  auto quarter = cumulants_of(catalog("diagonal-xi", {{"xi", "1/4"}}), 3);
  CHECK(energy_series(quarter, 2).coeffs == qs({"6/5", "-4/25", "12/250"}));
  CHECK_THROWS_AS(energy_series(quarter, 3), UsageError);
}

TEST_CASE("BigFloat mode tracks the exact recurrence") {
  auto model = catalog("quartic-g");
  auto exact = connected_moments(moments<Rational>(model, 12));
  auto approx = connected_moments(moments<BigFloat>(model, 12, 80));
  REQUIRE(exact.count() == approx.count());
  for (std::size_t j = 1; j <= exact.count(); ++j) {
    BigFloat e(exact(j), 80);
    CHECK(abs(approx(j) - e) <= half_precision_tolerance(80) * (abs(e) + 1));
  }
}

TEST_CASE("csv emitter") {
  std::ostringstream out;
  write_cumulants_csv(out, ConnectedMoments<Rational>{qs({"6/5", "4/25"})}, 10);
  CHECK(out.str() == "j,I_j,decimal\n1,6/5,1.200000000\n2,4/25,0.1600000000\n");
}

TEST_CASE("property: shift and scale covariance") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    auto base = random_spectrum(rng);
    const Rational s = make_rational(num(rng), den(rng));
    Rational lambda = make_rational(num(rng), den(rng));
    if (lambda == 0) lambda = 2;
    auto shifted = base, scaled = base;
    for (auto& l : shifted.levels) l.energy += s;
    for (auto& l : scaled.levels) l.energy *= lambda;
    auto i0 = cumulants_of(base, 6), i1 = cumulants_of(shifted, 6), i2 = cumulants_of(scaled, 6);
    CHECK(i1(1) == i0(1) + s);
    Rational power = lambda;
    for (std::size_t j = 1; j <= 6; ++j) {
      if (j >= 2) CHECK(i1(j) == i0(j));
      CHECK(i2(j) == power * i0(j));
      power *= lambda;
    }
  }
}

TEST_CASE("property: single level gives vanishing higher cumulants") {
  for (const char* e : {"-7/3", "0", "5"}) {
    SpectralModel<Rational> model{{{q(e), q("3")}}};
    auto i = cumulants_of(model, 8);
    CHECK(i(1) == q(e));
    for (std::size_t j = 2; j <= 8; ++j) CHECK(i(j) == 0);
  }
}

TEST_CASE("property: round trip through the inverse recurrence") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto mu = moments<Rational>(ModelSpec{random_spectrum(rng)}, 8);
    auto i = connected_moments(mu);
    CHECK(moments_from_cumulants(i).mu == mu.mu);
    CHECK(connected_moments(moments_from_cumulants(i)).values == i.values);
  }
}
