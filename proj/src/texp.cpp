#include "cmx/texp.hpp"

#include <algorithm>

#include "cmx/errors.hpp"
#include "cmx/linalg.hpp"
#include "cmx/roots.hpp"

namespace cmx {

namespace {

template <RealScalar T>
void require_levels(const SpectralModel<T>& model) {
  if (model.levels.empty()) throw UsageError("spectral model has no levels");
  for (const auto& l : model.levels)
    if (l.weight < 0) throw UsageError("spectral weights must be non-negative");
}

struct Sums {
  BigFloat weight, weighted_exp, weighted_energy_exp, e_min;
};

template <RealScalar T>
Sums shifted_sums(const SpectralModel<T>& model, const BigFloat& t, int digits) {
  require_levels(model);
  BigFloat e_min = to_bigfloat(model.levels.front().energy, digits);
  for (const auto& l : model.levels) e_min = std::min(e_min, to_bigfloat(l.energy, digits));
  Sums s{BigFloat(0, digits), BigFloat(0, digits), BigFloat(0, digits), e_min};
  const BigFloat time(t, digits);
  for (const auto& l : model.levels) {
    const BigFloat e = to_bigfloat(l.energy, digits), w = to_bigfloat(l.weight, digits);
    const BigFloat x = w * exp(-(time * (e - e_min)));
    s.weight += w;
    s.weighted_exp += x;
    s.weighted_energy_exp += x * e;
  }
  if (!(s.weight > 0)) throw UsageError("spectral weights sum to zero");
  return s;
}

Poly<BigFloat> lift_poly(const Poly<Rational>& p, int digits) {
  return p.map([digits](const Rational& c) { return BigFloat(c, digits); });
}

// Sum of |a_k| |t|^k, the natural scale for judging p(t) ~ 0.
BigFloat magnitude_at(const Poly<BigFloat>& p, const BigFloat& t) {
  BigFloat acc(0, t.digits());
  const BigFloat at = abs(t);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * at + abs(p[k]);
  return acc;
}

bool negligible_at(const Poly<BigFloat>& p, const BigFloat& t) {
  return abs(p.eval(t)) <= half_precision_tolerance(t.digits()) * magnitude_at(p, t);
}

int sign_of(const BigFloat& x) { return x.sign(); }

// Root of p in [a, b] given p(a) p(b) < 0: bisection to a tight bracket, then
// safeguarded Newton polishing.
BigFloat refine_root(const Poly<BigFloat>& p, BigFloat a, BigFloat b, int digits) {
  const Poly<BigFloat> dp = p.derivative();
  int sa = sign_of(p.eval(a));
  for (int i = 0; i < 64; ++i) {
    BigFloat mid = (a + b) / 2;
    int sm = sign_of(p.eval(mid));
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  BigFloat x = (a + b) / 2;
  const BigFloat stop = pow10(-(digits - 3), digits);
  for (int i = 0; i < 100; ++i) {
    BigFloat fx = p.eval(x), dfx = dp.eval(x);
    if (fx.is_zero()) break;
    BigFloat next = dfx.is_zero() ? (a + b) / 2 : x - fx / dfx;
    if (next < a || next > b) next = (a + b) / 2;
    if (sign_of(p.eval(next)) == sa) {
      a = next;
    } else {
      b = next;
    }
    const bool done = abs(next - x) <= stop * (abs(next) + 1);
    x = next;
    if (done) break;
  }
  return x;
}

// Sign-change roots of p on a uniform grid over (lo, hi].
std::vector<BigFloat> grid_roots(const Poly<BigFloat>& p, const BigFloat& lo, const BigFloat& hi, int grid,
                                 int digits) {
  std::vector<BigFloat> roots;
  if (p.degree() < 1) return roots;
  const BigFloat step = (hi - lo) / grid;
  BigFloat x0 = lo;
  int s0 = sign_of(p.eval(x0));
  for (int i = 1; i <= grid; ++i) {
    BigFloat x1 = i == grid ? hi : lo + step * i;
    int s1 = sign_of(p.eval(x1));
    if (s1 == 0) {
      roots.push_back(x1);
    } else if (s0 != 0 && s0 != s1) {
      roots.push_back(refine_root(p, x0, x1, digits));
    }
    x0 = x1;
    s0 = s1;
  }
  return roots;
}

Poly<Rational> monic(const Poly<Rational>& p) { return p * Rational(1 / p.leading()); }

// Quotient and remainder of a / b over the rationals.
std::pair<Poly<Rational>, Poly<Rational>> divmod(const Poly<Rational>& a, const Poly<Rational>& b) {
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(std::max(a.degree() - db + 1, 0)), Rational(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational c = r[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(std::max(db, 0)));
  return {Poly<Rational>(std::move(quot)), Poly<Rational>(std::move(r))};
}

Poly<Rational> gcd(Poly<Rational> a, Poly<Rational> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : monic(a);
}

// Square-free part of p and the chain g_1 = gcd(p, p'), g_{i+1} = gcd(g_i, g_i'),
// whose members vanish at a root of multiplicity k exactly for i < k.
struct SquareFree {
  Poly<Rational> part;
  std::vector<Poly<Rational>> chain;
};

SquareFree square_free(const Poly<Rational>& p) {
  SquareFree out;
  Poly<Rational> g = gcd(p, p.derivative());
  out.part = g.degree() >= 1 ? divmod(p, g).first : p;
  while (g.degree() >= 1) {
    out.chain.push_back(g);
    g = gcd(g, g.derivative());
  }
  return out;
}

int multiplicity_at(const SquareFree& sf, const BigFloat& t) {
  int k = 1;
  for (const auto& g : sf.chain) {
    if (!negligible_at(lift_poly(g, t.digits()), t)) break;
    ++k;
  }
  return k;
}

}  // namespace

template <RealScalar T>
BigFloat exact_E_of_t(const SpectralModel<T>& model, const BigFloat& t, int digits) {
  if constexpr (std::same_as<T, Rational>)
    if (t.is_zero()) return BigFloat(exact_E_at_zero(model), digits);
  Sums s = shifted_sums(model, t, digits);
  return s.weighted_energy_exp / s.weighted_exp;
}

template <RealScalar T>
BigFloat exact_Z_of_t(const SpectralModel<T>& model, const BigFloat& t, int digits) {
  Sums s = shifted_sums(model, t, digits);
  return exp(-(BigFloat(t, digits) * s.e_min)) * s.weighted_exp / s.weight;
}

Rational exact_E_at_zero(const SpectralModel<Rational>& model) {
  require_levels(model);
  Rational num = 0, den = 0;
  for (const auto& l : model.levels) {
    num += l.weight * l.energy;
    den += l.weight;
  }
  if (den == 0) throw UsageError("spectral weights sum to zero");
  return num / den;
}

PadeApproximant pade(const TaylorSeries<Rational>& series, int l, int m) {
  if (l < 0 || m < 0) throw UsageError("pade: orders must be non-negative");
  const auto& c = series.coeffs;
  if (c.size() < static_cast<std::size_t>(l + m + 1))
    throw UsageError("pade: [" + std::to_string(l) + "/" + std::to_string(m) + "] needs " + std::to_string(l + m + 1) +
                     " coefficients");
  auto coeff = [&c](int k) { return k < 0 ? Rational(0) : c[static_cast<std::size_t>(k)]; };
  for (int order = m; order >= 0; --order) {
    std::vector<Rational> q{Rational(1)};
    if (order > 0) {
      const auto n = static_cast<std::size_t>(order);
      Matrix<Rational> a(n, n, Rational(0));
      std::vector<Rational> rhs(n);
      for (int row = 0; row < order; ++row) {
        const int k = l + 1 + row;
        for (int j = 1; j <= order; ++j) a(static_cast<std::size_t>(row), static_cast<std::size_t>(j - 1)) = coeff(k - j);
        rhs[static_cast<std::size_t>(row)] = -coeff(k);
      }
      auto solved = exact_solve(a, rhs);
      if (!solved) continue;
      q.insert(q.end(), solved->begin(), solved->end());
    }
    std::vector<Rational> p;
    for (int i = 0; i <= l; ++i) {
      Rational acc = 0;
      for (int j = 0; j <= std::min(i, order); ++j) acc += q[static_cast<std::size_t>(j)] * coeff(i - j);
      p.push_back(acc);
    }
    return {Poly<Rational>(std::move(p)), Poly<Rational>(std::move(q)), l, order, m};
  }
  // The order-0 system is empty, so the loop always returns.
  throw NumericalError("pade: every denominator order was degenerate");
}

BigFloat evaluate(const PadeApproximant& p, const BigFloat& t) {
  const int d = t.digits();
  return lift_poly(p.numerator, d).eval(t) / lift_poly(p.denominator, d).eval(t);
}

std::vector<StationaryPoint> stationary_points(const PadeApproximant& p, const StationaryOptions& options, int digits) {
  if (!(options.lo < options.hi)) throw UsageError("stationary_points: empty range");
  if (options.grid < 1) throw UsageError("stationary_points: grid must be positive");
  // R^(k) = N_k / Q^(k+1), N_{k+1} = N_k' Q - (k+1) N_k Q'.
  const Poly<Rational>& num = p.numerator;
  const Poly<Rational>& den = p.denominator;
  std::vector<Poly<Rational>> n{num};
  n.push_back(num.derivative() * den - num * den.derivative());
  for (int k = 1; k <= 3; ++k)
    n.push_back(n[static_cast<std::size_t>(k)].derivative() * den -
                n[static_cast<std::size_t>(k)] * den.derivative() * Rational(k + 1));
  std::vector<Poly<BigFloat>> nf;
  for (const auto& poly : n) nf.push_back(lift_poly(poly, digits));
  const Poly<BigFloat> qf = lift_poly(den, digits);
  const BigFloat lo(options.lo, digits), hi(options.hi, digits);

  auto slope_at = [&](const BigFloat& t) {
    BigFloat qt = qf.eval(t);
    return nf[1].eval(t) / (qt * qt);
  };

  std::vector<StationaryPoint> out;
  if (n[1].is_zero()) return out;
  const SquareFree sf = square_free(n[1]);
  for (const BigFloat& t : grid_roots(lift_poly(sf.part, digits), lo, hi, options.grid, digits)) {
    if (!(t > lo)) continue;
    // R' ~ (t - r)^k, so R^(k+1) is the first nonvanishing derivative.
    const std::size_t order = static_cast<std::size_t>(multiplicity_at(sf, t)) + 1;
    StationaryKind kind = StationaryKind::saddle;
    if (order % 2 == 0 && order <= 4) {
      // Q^(k+1) shares the sign of Q when k is even.
      const int s = nf[order].eval(t).sign() * qf.eval(t).sign();
      kind = s > 0 ? StationaryKind::minimum : StationaryKind::maximum;
    }
    out.push_back({t, evaluate(p, t), kind, slope_at(t)});
  }

  if (options.shoulders) {
    // Inflections where R' has a local extremum pointing toward zero:
    // R'' = 0 with R' R''' > 0, i.e. sign(N_1 N_2' Q) > 0 there.
    const Poly<BigFloat> dn2 = nf[2].derivative();
    const Poly<Rational> n2_part = n[2].is_zero() ? n[2] : square_free(n[2]).part;
    for (const BigFloat& t : grid_roots(lift_poly(n2_part, digits), lo, hi, options.grid, digits)) {
      if (!(t > lo)) continue;
      const bool flat = negligible_at(nf[1], t);
      const int s = nf[1].eval(t).sign() * dn2.eval(t).sign() * qf.eval(t).sign();
      if (!flat && s <= 0) continue;
      const bool known = std::any_of(out.begin(), out.end(), [&](const StationaryPoint& sp) {
        return abs(sp.t - t) <= pow10(-10, digits) * (abs(t) + 1);
      });
      if (!known) out.push_back({t, evaluate(p, t), StationaryKind::saddle, slope_at(t)});
    }
    std::sort(out.begin(), out.end(), [](const StationaryPoint& a, const StationaryPoint& b) { return a.t < b.t; });
  }
  return out;
}

std::vector<BigComplex> pade_poles(const PadeApproximant& p, int digits) {
  if (p.denominator.degree() < 1) throw UsageError("pade_poles: denominator is constant");
  return poly_roots(p.denominator, digits);
}

std::pair<BigComplex, BigComplex> two_level_singularity(const Rational& e0, const Rational& e1, const Rational& xi,
                                                        int digits) {
  if (xi <= 0) throw UsageError("two_level_singularity: xi must be positive");
  if (!(e1 > e0)) throw UsageError("two_level_singularity: requires E1 > E0");
  const BigFloat gap(Rational(e1 - e0), digits);
  const BigFloat re = log(BigFloat(xi, digits)) / gap;
  const BigFloat im = BigFloat::pi(digits) / gap;
  return {BigComplex(re, -im), BigComplex(re, im)};
}

Rational dt_dE_two_level(const Rational& e0, const Rational& e1, const Rational& e) {
  if (!(e0 < e && e < e1)) throw UsageError("dt_dE_two_level: E must lie strictly between E0 and E1");
  return 1 / ((e0 - e) * (e1 - e));
}

BigFloat dt_dE_single_exponential(const BigFloat& b1, const BigFloat& e0, const BigFloat& e) {
  if (b1.is_zero() || e == e0) throw UsageError("dt_dE_single_exponential: singular at b1 = 0 or E = E0");
  return BigFloat(1, e.digits()) / (b1 * (e0 - e));
}

std::string to_string(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::minimum: return "minimum";
    case StationaryKind::maximum: return "maximum";
    case StationaryKind::saddle: return "saddle";
  }
  return "unknown";
}

void write_stationary_csv(std::ostream& out,
                          const std::vector<std::pair<PadeApproximant, std::vector<StationaryPoint>>>& rows,
                          int significant) {
  out << "L,M,stationary_t,value,kind,slope\n";
  for (const auto& [approximant, points] : rows)
    for (const auto& sp : points)
      out << approximant.l << ',' << approximant.m << ',' << sp.t.str(significant) << ',' << sp.value.str(significant)
          << ',' << to_string(sp.kind) << ',' << sp.slope.str(3) << '\n';
}

void write_poles_csv(std::ostream& out, const std::vector<BigComplex>& poles, int significant) {
  out << "re_t,im_t\n";
  for (const auto& z : poles) out << z.re.str(significant) << ',' << z.im.str(significant) << '\n';
}

template BigFloat exact_E_of_t(const SpectralModel<Rational>&, const BigFloat&, int);
template BigFloat exact_E_of_t(const SpectralModel<BigFloat>&, const BigFloat&, int);
template BigFloat exact_Z_of_t(const SpectralModel<Rational>&, const BigFloat&, int);
template BigFloat exact_Z_of_t(const SpectralModel<BigFloat>&, const BigFloat&, int);

}  // namespace cmx
