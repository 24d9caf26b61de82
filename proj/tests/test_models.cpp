#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "cmx/models.hpp"

using namespace cmx;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Poly<Rational> rpoly(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> c;
  for (const char* s : coeffs) c.push_back(q(s));
  return Poly<Rational>(c);
}

std::vector<Rational> qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

OscillatorModel oscillator(Poly<Rational> v, const char* a, Poly<Rational> ref) {
  return OscillatorModel{std::move(v), q(a), std::move(ref)};
}

}  // namespace

TEST_CASE("moments of the three model kinds") {
  SpectralModel<Rational> spectral{{{q("1"), q("4/5")}, {q("2"), q("1/5")}}};
  CHECK(moments<Rational>(spectral, 3).mu == qs({"1", "6/5", "8/5", "12/5"}));

  MatrixModel matrix{Matrix<Rational>{{q("0"), q("1/10")}, {q("1/10"), q("1")}}, qs({"1", "0"})};
  CHECK(moments<Rational>(matrix, 3).mu == qs({"1", "0", "1/100", "1/100"}));

  auto harmonic = oscillator(rpoly({"0", "0", "1"}), "2/5", rpoly({"1"}));
  CHECK(moments<Rational>(harmonic, 2).mu == qs({"1", "41/40", "1843/1600"}));
}

TEST_CASE("unnormalized weights and references are handled as ratios") {
  SpectralModel<Rational> spectral{{{q("1"), q("8")}, {q("2"), q("2")}}};
  CHECK(moments<Rational>(spectral, 2).mu == qs({"1", "6/5", "8/5"}));
  MatrixModel matrix{Matrix<Rational>{{q("1"), q("0")}, {q("0"), q("2")}}, qs({"2", "1"})};
  CHECK(moments<Rational>(matrix, 2).mu == qs({"1", "6/5", "8/5"}));
}

TEST_CASE("apply_hamiltonian") {
  const Rational a = q("2/5");
  auto harmonic = oscillator(rpoly({"0", "0", "1"}), "2/5", rpoly({"1"}));
  auto quartic = oscillator(rpoly({"0", "0", "0", "0", "1"}), "2/5", rpoly({"1"}));

  auto out = apply_hamiltonian(GaussianPoly<Rational>{rpoly({"1"}), a}, harmonic);
  CHECK(out.poly == Poly<Rational>(std::vector<Rational>{2 * a, 0, 1 - 4 * a * a}));
  CHECK(out.width == a);

  out = apply_hamiltonian(GaussianPoly<Rational>{rpoly({"0", "1"}), a}, harmonic);
  CHECK(out.poly == Poly<Rational>(std::vector<Rational>{0, 6 * a, 0, 1 - 4 * a * a}));

  out = apply_hamiltonian(GaussianPoly<Rational>{rpoly({"1"}), a}, quartic);
  CHECK(out.poly == Poly<Rational>(std::vector<Rational>{2 * a, 0, -4 * a * a, 0, 1}));

  CHECK_THROWS_AS(apply_hamiltonian(GaussianPoly<Rational>{rpoly({"1"}), q("1")}, harmonic), UsageError);
}

TEST_CASE("gaussian_expectation") {
  CHECK(gaussian_expectation(rpoly({"0", "0", "1"}), q("2/5")) == q("5/8"));
  CHECK(gaussian_expectation(rpoly({"0", "0", "0", "0", "1"}), q("2/5")) == q("75/64"));
  CHECK(gaussian_expectation(rpoly({"0", "0", "0", "1"}), q("1")) == 0);
  CHECK(gaussian_expectation(rpoly({"1"}), q("7/3")) == 1);
}

TEST_CASE("to_spectral") {
  MatrixModel golden{Matrix<Rational>{{q("0"), q("1")}, {q("1"), q("1")}}, qs({"1", "0"})};
  auto s = to_spectral(golden, 40);
  REQUIRE(s.levels.size() == 2);
  CHECK(s.levels[0].energy.str(10) == "-0.6180339887");
  CHECK(s.levels[1].energy.str(10) == "1.618033989");

  MatrixModel weak{Matrix<Rational>{{q("0"), q("1/10")}, {q("1/10"), q("1")}}, qs({"1", "0"})};
  // (1 - sqrt(1.04)) / 2 = -0.0099019513592785
  CHECK(abs(to_spectral(weak, 40).levels[0].energy - BigFloat::parse("-0.009901951358", 40)) < BigFloat::parse("2e-12", 40));

  MatrixModel diag{Matrix<Rational>{{q("1"), q("0")}, {q("0"), q("2")}}, qs({"2", "1"})};
  auto d = to_spectral(diag, 40);
  const BigFloat tol = half_precision_tolerance(40);
  CHECK(abs(d.levels[0].energy - BigFloat(1, 40)) < tol);
  CHECK(abs(d.levels[0].weight - BigFloat(q("4/5"), 40)) < tol);
  CHECK(abs(d.levels[1].weight - BigFloat(q("1/5"), 40)) < tol);

  auto exact = exact_spectral(ModelSpec{diag});
  REQUIRE(exact);
  CHECK(exact->levels[0].weight / (exact->levels[0].weight + exact->levels[1].weight) == q("4/5"));
}

TEST_CASE("catalog") {
  auto xi = catalog("diagonal-xi", {{"xi", "1/4"}});
  auto& s = std::get<SpectralModel<Rational>>(xi);
  REQUIRE(s.levels.size() == 2);
  CHECK(s.levels[0].energy == 1);
  CHECK(s.levels[0].weight == q("4/5"));
  CHECK(s.levels[1].weight == q("1/5"));

  auto e = std::get<OscillatorModel>(catalog("quartic-e"));
  CHECK(e.potential == rpoly({"0", "0", "0", "0", "1"}));
  CHECK(e.gauss_width == q("3/2"));
  CHECK(std::get<Poly<Rational>>(e.reference) == rpoly({"-1/4", "0", "1"}));

  auto ten = std::get<SpectralModel<Rational>>(catalog("diagonal-ten"));
  REQUIRE(ten.levels.size() == 10);
  CHECK(ten.levels[0].weight == q("4/13"));
  for (std::size_t j = 1; j < 10; ++j) {
    CHECK(ten.levels[j].energy == static_cast<long>(j));
    CHECK(ten.levels[j].weight == q("1/13"));
  }

  CHECK_THROWS_AS(catalog("no-such-model"), UsageError);
  CHECK_THROWS_AS(catalog("diagonal-xi", {{"zeta", "1"}}), UsageError);
  for (const auto& name : catalog_names()) CHECK_NOTHROW(validate(catalog(name)));
}

TEST_CASE("model validation") {
  auto odd = oscillator(rpoly({"0", "0", "0", "1"}), "1", rpoly({"1"}));
  CHECK_THROWS_AS(moments<Rational>(odd, 2), UnsupportedModel);
  CHECK_THROWS_AS(moments<Rational>(catalog("harmonic-equal-overlap"), 2), UsageError);
}

TEST_CASE("equal-overlap reference evaluates in BigFloat mode") {
  auto mu = moments<BigFloat>(catalog("harmonic-equal-overlap"), 4, 50);
  REQUIRE(mu.mu.size() == 5);
  CHECK(abs(mu.mu[0] - BigFloat(1, 50)) < half_precision_tolerance(50));
  // Independent symbolic integration.
  CHECK(abs(mu.mu[1] - BigFloat::parse("4.47071222027519718241890537344", 50)) < BigFloat::parse("1e-28", 50));
}

TEST_CASE("property: <H^j phi | H^j phi> = mu_2j") {
  for (const char* name : {"harmonic", "harmonic-excited", "quartic-g", "quartic-e"}) {
    auto model = std::get<OscillatorModel>(catalog(name));
    auto ref = std::get<Poly<Rational>>(model.reference);
    auto mu = moments<Rational>(ModelSpec{model}, 12);
    const Rational norm = gaussian_expectation(ref * ref, model.gauss_width);
    GaussianPoly<Rational> state{ref, model.gauss_width};
    for (int j = 0; j <= 6; ++j) {
      CHECK(gaussian_expectation(state.poly * state.poly, model.gauss_width) / norm ==
            mu.mu[static_cast<std::size_t>(2 * j)]);
      state = apply_hamiltonian(state, model);
    }
  }
}

TEST_CASE("property: exact harmonic ground state has unit moments") {
  auto model = oscillator(rpoly({"0", "0", "1"}), "1/2", rpoly({"1"}));
  for (const auto& m : moments<Rational>(ModelSpec{model}, 10).mu) CHECK(m == 1);
}

TEST_CASE("property: spectral mu_1 lies within the spectrum") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(-20, 20), w(1, 9), n(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    SpectralModel<Rational> model;
    const int levels = n(rng);
    for (int k = 0; k < levels; ++k) model.levels.push_back({make_rational(e(rng), w(rng)), Rational(w(rng))});
    auto mu = moments<Rational>(ModelSpec{model}, 3);
    CHECK(mu.mu[0] == 1);
    Rational lo = model.levels[0].energy, hi = lo;
    for (const auto& l : model.levels) {
      lo = std::min(lo, l.energy);
      hi = std::max(hi, l.energy);
    }
    CHECK(lo <= mu.mu[1]);
    CHECK(mu.mu[1] <= hi);
  }
}

TEST_CASE("property: matrix moments agree with their spectral decomposition") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  const int digits = 40;
  const BigFloat tol = half_precision_tolerance(digits);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    Matrix<Rational> h(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = make_rational(entry(rng), 3);
    std::vector<Rational> ref(n);
    for (auto& r : ref) r = Rational(entry(rng) + 6);
    MatrixModel model{h, ref};
    auto direct = moments<Rational>(ModelSpec{model}, 5);
    auto spec = to_spectral(model, digits);
    for (std::size_t j = 0; j <= 5; ++j) {
      BigFloat sum(0, digits);
      for (const auto& l : spec.levels) sum += l.weight * pow(l.energy, static_cast<long>(j));
      CHECK(abs(sum - BigFloat(direct.mu[j], digits)) < tol * (abs(sum) + 1));
    }
  }
}
