#include "cmx/roots.hpp"

#include <algorithm>
#include <string>

#include "cmx/errors.hpp"

namespace cmx {

namespace {

constexpr int kGuardDigits = 20;

struct Eval {
  BigComplex value;
  BigComplex slope;
};

Eval horner(const std::vector<BigComplex>& a, const BigComplex& z) {
  BigComplex p = a.back();
  BigComplex d = zero_like(p);
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    d = d * z + p;
    p = p * z + a[k];
  }
  return {std::move(p), std::move(d)};
}

// sum_k |a_k| |z|^k, the natural scale of p(z) under coefficient rounding.
BigFloat absolute_scale(const std::vector<BigFloat>& abs_coeffs, const BigFloat& radius) {
  BigFloat acc = abs_coeffs.back();
  for (std::size_t k = abs_coeffs.size() - 1; k-- > 0;) acc = acc * radius + abs_coeffs[k];
  return acc;
}

std::vector<BigComplex> aberth(std::vector<BigFloat> coeffs, int digits) {
  const int work = digits + kGuardDigits;
  std::vector<BigComplex> roots;

  // Exact zero roots are peeled off first.
  std::size_t zeros = 0;
  while (zeros < coeffs.size() && coeffs[zeros].is_zero()) ++zeros;
  for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(BigFloat(0, work), BigFloat(0, work));
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(zeros));

  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.emplace_back(-coeffs[0] / coeffs[1]);
    return roots;
  }

  std::vector<BigComplex> a;
  std::vector<BigFloat> abs_coeffs;
  for (const BigFloat& c : coeffs) {
    a.emplace_back(c);
    abs_coeffs.push_back(abs(c));
  }

  // Start on a circle of the Fujiwara radius, rotated off the real axis.
  BigFloat radius(0, work);
  for (std::size_t k = 0; k < n; ++k) {
    BigFloat ratio = abs_coeffs[k] / abs_coeffs[n];
    if (ratio.is_zero()) continue;
    if (k == 0) ratio = ratio / 2;
    BigFloat r = exp(log(ratio) / static_cast<long>(n - k));
    if (r > radius) radius = r;
  }
  radius = radius * 2;
  const BigFloat two_pi = BigFloat::pi(work) * 2;
  std::vector<BigComplex> z;
  z.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    BigFloat angle = two_pi * static_cast<long>(k) / static_cast<long>(n) + BigFloat::parse("0.4", work);
    z.emplace_back(radius * cos(angle), radius * sin(angle));
  }

  const BigFloat step_eps = pow10(-(work - 5), work);
  std::vector<bool> done(n, false);
  const int max_iterations = 500 + 50 * static_cast<int>(n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Eval e = horner(a, z[i]);
      BigFloat modulus = abs(z[i]);
      if (is_exact_zero(e.value) || abs(e.value) <= step_eps * absolute_scale(abs_coeffs, modulus)) {
        done[i] = true;
        continue;
      }
      if (is_exact_zero(e.slope)) {
        // Nudge off a critical point.
        z[i] += BigComplex(step_eps * (modulus + 1) * 1000, step_eps * (modulus + 1) * 1000);
        all_done = false;
        continue;
      }
      BigComplex ratio = e.value / e.slope;
      BigComplex repulsion = zero_like(ratio);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        BigComplex diff = z[i] - z[j];
        if (!is_exact_zero(diff)) repulsion += BigComplex(BigFloat(1, work)) / diff;
      }
      BigComplex correction = ratio / (BigComplex(BigFloat(1, work)) - ratio * repulsion);
      z[i] -= correction;
      if (abs(correction) <= step_eps * (abs(z[i]) + 1))
        done[i] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  const BigFloat tol = half_precision_tolerance(digits);
  double worst = 0.0;
  for (const BigComplex& root : z) {
    BigFloat modulus = abs(root);
    BigFloat residual = abs(horner(a, root).value) / absolute_scale(abs_coeffs, modulus);
    worst = std::max(worst, residual.to_double());
    if (!(residual < tol))
      throw NonConvergence("poly_roots: Aberth iteration did not converge (relative residual " + residual.str(6) + ")",
                           worst);
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<BigComplex> finish(std::vector<BigComplex> roots, int digits) {
  const BigFloat tol = half_precision_tolerance(digits);
  for (BigComplex& r : roots) {
    BigFloat scale = abs(r) + 1;
    if (abs(r.im) <= tol * scale) r.im = BigFloat(0, digits);
    // Roots on the imaginary axis; real roots keep their magnitude however small.
    else if (abs(r.re) <= tol * scale) r.re = BigFloat(0, digits);
    r = BigComplex(BigFloat(r.re, digits), BigFloat(r.im, digits));
  }
  sort_roots(roots, digits);
  return roots;
}

}  // namespace

void sort_roots(std::vector<BigComplex>& roots, int digits) {
  std::sort(roots.begin(), roots.end(), [](const BigComplex& x, const BigComplex& y) {
    if (x.re != y.re) return x.re < y.re;
    return x.im < y.im;
  });
  // Conjugate pairs and other near-ties in the real part are ordered by
  // imaginary part.
  const BigFloat tol = half_precision_tolerance(digits);
  std::size_t start = 0;
  while (start < roots.size()) {
    std::size_t end = start + 1;
    while (end < roots.size()) {
      BigFloat scale = abs(roots[end - 1].re) + abs(roots[end].re) + 1;
      if (abs(roots[end].re - roots[end - 1].re) > tol * scale) break;
      ++end;
    }
    std::sort(roots.begin() + static_cast<std::ptrdiff_t>(start), roots.begin() + static_cast<std::ptrdiff_t>(end),
              [](const BigComplex& x, const BigComplex& y) { return x.im < y.im; });
    start = end;
  }
}

std::vector<BigComplex> poly_roots(const Poly<Rational>& p, int digits) {
  if (p.degree() < 1) throw UsageError("poly_roots: polynomial degree must be at least 1");
  std::vector<BigFloat> c;
  for (const Rational& q : p.coeffs()) c.emplace_back(q, digits + kGuardDigits);
  return finish(aberth(std::move(c), digits), digits);
}

std::vector<BigComplex> poly_roots(const Poly<BigFloat>& p, int digits) {
  if (p.degree() < 1) throw UsageError("poly_roots: polynomial degree must be at least 1");
  std::vector<BigFloat> c;
  for (const BigFloat& x : p.coeffs()) c.emplace_back(x, digits + kGuardDigits);
  return finish(aberth(std::move(c), digits), digits);
}

}  // namespace cmx
