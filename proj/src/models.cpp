#include "cmx/models.hpp"

#include <algorithm>
#include <utility>

namespace cmx {

namespace {

template <RealScalar T>
T scaled(const T& x, const Rational& r) {
  if constexpr (std::same_as<T, Rational>)
    return x * r;
  else
    return x * BigFloat(r, x.digits());
}

template <RealScalar T>
Poly<T> lift_poly(const Poly<Rational>& p, int digits) {
  return p.map([digits](const Rational& q) { return lift<T>(q, digits); });
}

template <RealScalar T>
MomentSequence<T> spectral_moments(const SpectralModel<Rational>& model, int jmax, int digits) {
  std::vector<T> energy, weight;
  T total = lift<T>(0, digits);
  for (const auto& level : model.levels) {
    energy.push_back(lift<T>(level.energy, digits));
    weight.push_back(lift<T>(level.weight, digits));
    total = total + weight.back();
  }
  MomentSequence<T> out;
  std::vector<T> power = weight;
  for (int j = 0; j <= jmax; ++j) {
    T sum = lift<T>(0, digits);
    for (std::size_t k = 0; k < power.size(); ++k) {
      sum = sum + power[k];
      power[k] = power[k] * energy[k];
    }
    out.mu.push_back(j == 0 ? lift<T>(1, digits) : T(sum / total));
  }
  return out;
}

template <RealScalar T>
MomentSequence<T> matrix_moments(const MatrixModel& model, int jmax, int digits) {
  const std::size_t n = model.reference.size();
  std::vector<T> v, w;
  for (const Rational& x : model.reference) v.push_back(lift<T>(x, digits));
  w = v;
  T norm = lift<T>(0, digits);
  for (const T& x : v) norm = norm + x * x;
  MomentSequence<T> out;
  for (int j = 0; j <= jmax; ++j) {
    if (j == 0) {
      out.mu.push_back(lift<T>(1, digits));
    } else {
      T dot = lift<T>(0, digits);
      for (std::size_t i = 0; i < n; ++i) dot = dot + v[i] * w[i];
      out.mu.push_back(dot / norm);
    }
    if (j == jmax) break;
    std::vector<T> next(n, lift<T>(0, digits));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_exact_zero(model.h(i, k))) next[i] = next[i] + scaled(w[k], model.h(i, k));
    w = std::move(next);
  }
  return out;
}

template <RealScalar T>
MomentSequence<T> oscillator_moments(const OscillatorModel& model, int jmax, int digits) {
  Poly<T> ref;
  if (const auto* exact = std::get_if<Poly<Rational>>(&model.reference)) {
    ref = lift_poly<T>(*exact, digits);
  } else {
    if constexpr (std::same_as<T, Rational>)
      throw UsageError("moments: reference has irrational coefficients; use BigFloat mode");
    else
      ref = std::get<FloatPolyFactory>(model.reference)(digits);
  }
  const T norm = gaussian_expectation(ref * ref, model.gauss_width);
  MomentSequence<T> out;
  GaussianPoly<T> state{ref, model.gauss_width};
  for (int j = 0; j <= jmax; ++j) {
    out.mu.push_back(j == 0 ? lift<T>(1, digits) : T(gaussian_expectation(ref * state.poly, model.gauss_width) / norm));
    if (j < jmax) state = apply_hamiltonian(state, model);
  }
  return out;
}

// (k-1)!! / (4a)^(k/2) for even k.
Rational gaussian_moment(std::size_t k, const Rational& a) {
  Rational value = 1;
  for (std::size_t m = 1; m < k; m += 2) value *= Rational(static_cast<long>(m));
  Rational four_a = a * 4;
  for (std::size_t m = 0; m < k / 2; ++m) value /= four_a;
  return value;
}

Rational param(const ModelParams& params, const std::string& key, const char* fallback) {
  auto it = params.find(key);
  return parse_rational(it == params.end() ? fallback : it->second);
}

Poly<Rational> rational_poly(std::initializer_list<Rational> c) { return Poly<Rational>(std::vector<Rational>(c)); }

void check_known_params(std::string_view name, const ModelParams& params, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : params) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw UsageError("model '" + std::string(name) + "' has no parameter '" + key + "'");
  }
}

}  // namespace

void validate(const SpectralModel<Rational>& model) {
  bool positive = false;
  for (const auto& level : model.levels) {
    if (sgn(level.weight) < 0) throw UsageError("spectral model: weights must be non-negative");
    positive = positive || sgn(level.weight) > 0;
  }
  if (!positive) throw UsageError("spectral model: at least one weight must be positive");
}

void validate(const MatrixModel& model) {
  const std::size_t n = model.h.rows();
  if (n == 0 || !model.h.square()) throw UsageError("matrix model: H must be square and non-empty");
  if (model.reference.size() != n) throw UsageError("matrix model: reference length does not match H");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (model.h(i, j) != model.h(j, i)) throw UsageError("matrix model: H must be symmetric");
  if (std::all_of(model.reference.begin(), model.reference.end(), [](const Rational& x) { return sgn(x) == 0; }))
    throw UsageError("matrix model: reference must not be zero");
}

void validate(const OscillatorModel& model) {
  if (sgn(model.gauss_width) <= 0) throw UsageError("oscillator model: Gaussian width must be positive");
  const auto& v = model.potential.coeffs();
  for (std::size_t k = 1; k < v.size(); k += 2)
    if (sgn(v[k]) != 0) throw UnsupportedModel("oscillator model: potential must contain only even powers");
  if (const auto* exact = std::get_if<Poly<Rational>>(&model.reference); exact && exact->is_zero())
    throw UsageError("oscillator model: reference polynomial must not be zero");
}

void validate(const ModelSpec& model) {
  std::visit([](const auto& m) { validate(m); }, model);
}

template <RealScalar T>
MomentSequence<T> moments(const ModelSpec& model, int jmax, int digits) {
  if (jmax < 1) throw UsageError("moments: jmax must be at least 1");
  validate(model);
  return std::visit(
      [&](const auto& m) -> MomentSequence<T> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::same_as<M, SpectralModel<Rational>>)
          return spectral_moments<T>(m, jmax, digits);
        else if constexpr (std::same_as<M, MatrixModel>)
          return matrix_moments<T>(m, jmax, digits);
        else
          return oscillator_moments<T>(m, jmax, digits);
      },
      model);
}

template MomentSequence<Rational> moments<Rational>(const ModelSpec&, int, int);
template MomentSequence<BigFloat> moments<BigFloat>(const ModelSpec&, int, int);

template <RealScalar T>
GaussianPoly<T> apply_hamiltonian(const GaussianPoly<T>& state, const OscillatorModel& model) {
  if (state.width != model.gauss_width) throw UsageError("apply_hamiltonian: state width differs from model width");
  const Rational& a = model.gauss_width;
  const auto& q = state.poly.coeffs();
  if (q.empty()) return state;
  const T zero = zero_like(q.front());
  const std::size_t size = q.size() + std::max<std::size_t>(2, model.potential.coeffs().size());
  std::vector<T> out(size, zero);
  const Rational two_a = a * 2;
  const Rational four_a_sq = a * a * 4;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (is_exact_zero(q[k])) continue;
    // -q'' + 4a x q' + (2a - 4a^2 x^2) q
    if (k >= 2) out[k - 2] = out[k - 2] - q[k] * static_cast<long>(k * (k - 1));
    out[k] = out[k] + scaled(q[k], two_a * static_cast<long>(2 * k + 1));
    out[k + 2] = out[k + 2] - scaled(q[k], four_a_sq);
    const auto& v = model.potential.coeffs();
    for (std::size_t p = 0; p < v.size(); ++p)
      if (sgn(v[p]) != 0) out[k + p] = out[k + p] + scaled(q[k], v[p]);
  }
  return {Poly<T>(std::move(out)), state.width};
}

template GaussianPoly<Rational> apply_hamiltonian(const GaussianPoly<Rational>&, const OscillatorModel&);
template GaussianPoly<BigFloat> apply_hamiltonian(const GaussianPoly<BigFloat>&, const OscillatorModel&);

template <RealScalar T>
T gaussian_expectation(const Poly<T>& p, const Rational& a) {
  if (sgn(a) <= 0) throw UsageError("gaussian_expectation: width must be positive");
  const auto& c = p.coeffs();
  if (c.empty()) {
    if constexpr (std::same_as<T, Rational>)
      return 0;
    else
      return BigFloat(0, kDefaultDigits);
  }
  T sum = zero_like(c.front());
  for (std::size_t k = 0; k < c.size(); k += 2)
    if (!is_exact_zero(c[k])) sum = sum + scaled(c[k], gaussian_moment(k, a));
  return sum;
}

template Rational gaussian_expectation(const Poly<Rational>&, const Rational&);
template BigFloat gaussian_expectation(const Poly<BigFloat>&, const Rational&);

SpectralModel<BigFloat> to_spectral(const MatrixModel& model, int digits) {
  validate(model);
  const std::size_t n = model.h.rows();
  const int work = digits + 10;
  Matrix<BigFloat> a(n, n, BigFloat(0, work));
  Matrix<BigFloat> v(n, n, BigFloat(0, work));
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = BigFloat(1, work);
    for (std::size_t j = 0; j < n; ++j) a(i, j) = BigFloat(model.h(i, j), work);
  }
  BigFloat total(0, work);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
  const BigFloat threshold = pow10(-2 * (work - 2), work) * total;

  const int max_sweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    BigFloat off(0, work);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += a(p, r) * a(p, r);
    if (off <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        if (a(p, r).is_zero()) continue;
        // Rotation zeroing a(p, r).
        BigFloat theta = (a(r, r) - a(p, p)) / (a(p, r) * 2);
        BigFloat t = BigFloat(theta.sign() >= 0 ? 1 : -1, work) / (abs(theta) + sqrt(theta * theta + 1));
        BigFloat c = BigFloat(1, work) / sqrt(t * t + 1);
        BigFloat s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          BigFloat akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          BigFloat apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {
          BigFloat vkp = v(k, p), vkr = v(k, r);
          v(k, p) = c * vkp - s * vkr;
          v(k, r) = s * vkp + c * vkr;
        }
      }
    }
  }
  if (!converged) throw NonConvergence("to_spectral: Jacobi iteration did not converge", 0.0);

  BigFloat norm(0, work);
  for (const Rational& x : model.reference) norm += BigFloat(x * x, work);
  SpectralModel<BigFloat> out;
  for (std::size_t k = 0; k < n; ++k) {
    BigFloat overlap(0, work);
    for (std::size_t i = 0; i < n; ++i) overlap += v(i, k) * BigFloat(model.reference[i], work);
    out.levels.push_back({BigFloat(a(k, k), digits), BigFloat(overlap * overlap / norm, digits)});
  }
  std::sort(out.levels.begin(), out.levels.end(), [](const auto& x, const auto& y) { return x.energy < y.energy; });
  return out;
}

std::optional<SpectralModel<Rational>> exact_spectral(const ModelSpec& model) {
  if (const auto* s = std::get_if<SpectralModel<Rational>>(&model)) return *s;
  if (const auto* m = std::get_if<MatrixModel>(&model)) {
    const std::size_t n = m->h.rows();
    SpectralModel<Rational> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && sgn(m->h(i, j)) != 0) return std::nullopt;
      out.levels.push_back({m->h(i, i), m->reference[i] * m->reference[i]});
    }
    return out;
  }
  return std::nullopt;
}

ModelSpec catalog(std::string_view name, const ModelParams& params) {
  const Rational two_fifths(2, 5);
  const Rational three_halves(3, 2);
  if (name == "two-level-V") {
    check_known_params(name, params, {"V", "ref"});
    Rational v = param(params, "V", "1/10");
    Rational ref = param(params, "ref", "1");
    if (ref != 1 && ref != 2) throw UsageError("two-level-V: ref must be 1 for (1,0) or 2 for (1,1)");
    return MatrixModel{Matrix<Rational>{{0, v}, {v, 1}}, {1, ref == 1 ? 0 : 1}};
  }
  if (name == "diagonal-xi") {
    check_known_params(name, params, {"xi"});
    Rational xi = param(params, "xi", "1/4");
    if (sgn(xi) < 0) throw UsageError("diagonal-xi: xi must be non-negative");
    Rational total = xi + 1;
    return SpectralModel<Rational>{{{1, Rational(1 / total)}, {2, Rational(xi / total)}}};
  }
  if (name == "diagonal-ten") {
    check_known_params(name, params, {});
    SpectralModel<Rational> m;
    for (int j = 0; j < 10; ++j) m.levels.push_back({j, Rational(j == 0 ? 4 : 1, 13)});
    return m;
  }
  if (name == "harmonic") {
    check_known_params(name, params, {});
    return OscillatorModel{rational_poly({0, 0, 1}), two_fifths, rational_poly({1})};
  }
  if (name == "harmonic-excited") {
    check_known_params(name, params, {});
    return OscillatorModel{rational_poly({0, 0, 1}), two_fifths, rational_poly({Rational(-1, 2), 0, 1})};
  }
  if (name == "harmonic-equal-overlap") {
    check_known_params(name, params, {});
    FloatPolyFactory ref = [](int digits) {
      BigFloat root2 = sqrt(BigFloat(2, digits));
      BigFloat zero(0, digits);
      return Poly<BigFloat>(std::vector<BigFloat>{BigFloat(1, digits) - root2, zero, root2 * 3 + 1});
    };
    return OscillatorModel{rational_poly({0, 0, 1}), Rational(1), std::move(ref)};
  }
  if (name == "quartic-g") {
    check_known_params(name, params, {});
    return OscillatorModel{rational_poly({0, 0, 0, 0, 1}), three_halves, rational_poly({1})};
  }
  if (name == "quartic-e") {
    check_known_params(name, params, {});
    return OscillatorModel{rational_poly({0, 0, 0, 0, 1}), three_halves, rational_poly({Rational(-1, 4), 0, 1})};
  }
  throw UsageError("unknown model '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"two-level-V", "diagonal-xi", "diagonal-ten", "harmonic", "harmonic-excited",
          "harmonic-equal-overlap", "quartic-g", "quartic-e"};
}

}  // namespace cmx
