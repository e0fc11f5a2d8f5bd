#include "pech/norms.hpp"

#include <algorithm>
#include <cmath>

#include "pech/errors.hpp"
#include "pech/spectral.hpp"

namespace pech {

namespace {

// Mean over M, trapezoid in z, of g(values[n]).
template <class G>
double quad3(const ScalarField3& f, G&& g) {
  const GridSpec& grid = f.grid();
  const std::size_t n2 = grid.size2();
  auto v = f.values();
  double total = 0.0;
  for (int k = 0; k < grid.nz; ++k) {
    double level = 0.0;
    for (std::size_t n = 0; n < n2; ++n) level += g(k * n2 + n, v[k * n2 + n]);
    total += grid.zweight(k) * level;
  }
  return total / double(n2);
}

double lq_from_abs(const ScalarField3& mag, double q) {
  if (q < 1.0) throw InputError("norm_Lq needs q >= 1");
  auto v = mag.values();
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const double s = quad3(mag, [q](std::size_t, double x) { return std::pow(std::abs(x), q); });
  return std::pow(s, 1.0 / q);
}

double lq_from_abs(const ScalarField2& mag, double q) {
  if (q < 1.0) throw InputError("norm_Lq needs q >= 1");
  auto v = mag.values();
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), q);
  return std::pow(s / double(v.size()), 1.0 / q);
}

// Sum of ||d^alpha f||^2 over multi-indices with lo <= |alpha| <= hi.
double sobolev_sum(const ScalarField3& f, int lo, int hi, bool vertical) {
  if (vertical && f.basis() == VBasis::none)
    throw IncompatibleOperands("vertical derivatives need a cosine or sine field");
  const Modal3 base = vertical ? forward(f) : forward_levels(f);
  double total = 0.0;
  const int cmax = vertical ? hi : 0;
  Modal3 mz = base;
  for (int c = 0; c <= cmax; ++c) {
    if (c > 0) mz = mdz(mz);
    Modal3 mx = mz;
    for (int a = 0; a + c <= hi; ++a) {
      if (a > 0) mx = mdx(mx);
      Modal3 my = mx;
      for (int b = 0; a + b + c <= hi; ++b) {
        if (b > 0) my = mdy(my);
        if (a + b + c >= lo) total += l2sq(my);
      }
    }
  }
  return total;
}

double sobolev_sum(const ScalarField2& f, int lo, int hi) {
  const Modal2 base = forward(f);
  double total = 0.0;
  Modal2 mx = base;
  for (int a = 0; a <= hi; ++a) {
    if (a > 0) mx = mdx(mx);
    Modal2 my = mx;
    for (int b = 0; a + b <= hi; ++b) {
      if (b > 0) my = mdy(my);
      if (a + b >= lo) total += l2sq(my);
    }
  }
  return total;
}

}  // namespace

double norm_Lq(const ScalarField3& f, double q) { return lq_from_abs(f, q); }
double norm_Lq(const ScalarField2& f, double q) { return lq_from_abs(f, q); }
double norm_Lq(const VectorFieldH& u, double q) { return lq_from_abs(magnitude(u), q); }
double norm_Lq(const VectorField2& u, double q) { return lq_from_abs(magnitude(u), q); }

double norm_L2(const ScalarField3& f) { return std::sqrt(inner_L2(f, f)); }
double norm_L2(const ScalarField2& f) { return std::sqrt(inner_L2(f, f)); }
double norm_L2(const VectorFieldH& u) { return std::sqrt(inner_L2(u, u)); }

double inner_L2(const ScalarField3& f, const ScalarField3& g) {
  require_same_grid(f.grid(), g.grid());
  auto gv = g.values();
  return quad3(f, [&](std::size_t n, double x) { return x * gv[n]; });
}

double inner_L2(const ScalarField2& f, const ScalarField2& g) {
  require_same_grid(f.grid(), g.grid());
  auto fv = f.values();
  auto gv = g.values();
  double s = 0.0;
  for (std::size_t n = 0; n < fv.size(); ++n) s += fv[n] * gv[n];
  return s / double(fv.size());
}

double inner_L2(const VectorFieldH& u, const VectorFieldH& v) {
  return inner_L2(u.u1, v.u1) + inner_L2(u.u2, v.u2);
}

double seminorm_H1(const ScalarField3& f) { return std::sqrt(sobolev_sum(f, 1, 1, true)); }
double seminorm_H2(const ScalarField3& f) { return std::sqrt(sobolev_sum(f, 2, 2, true)); }
double seminorm_H1(const ScalarField2& f) { return std::sqrt(sobolev_sum(f, 1, 1)); }
double seminorm_H2(const ScalarField2& f) { return std::sqrt(sobolev_sum(f, 2, 2)); }

double norm_Hm(const ScalarField3& f, int m) {
  if (m < 0) throw InputError("Sobolev order must be non-negative");
  if (m == 0) return norm_L2(f);
  return std::sqrt(sobolev_sum(f, 0, m, true));
}

double norm_Hm(const ScalarField2& f, int m) {
  if (m < 0) throw InputError("Sobolev order must be non-negative");
  return std::sqrt(sobolev_sum(f, 0, m));
}

double norm_Hm(const VectorFieldH& u, int m) {
  const double a = norm_Hm(u.u1, m);
  const double b = norm_Hm(u.u2, m);
  return std::sqrt(a * a + b * b);
}

double norm_Hm_horizontal(const ScalarField3& f, int m) {
  if (m < 0) throw InputError("Sobolev order must be non-negative");
  return std::sqrt(sobolev_sum(f, 0, m, false));
}

ScalarField3 magnitude(const VectorFieldH& u) {
  require_same_grid(u.u1.grid(), u.u2.grid());
  ScalarField3 out(u.grid(), VBasis::none);
  auto a = u.u1.values();
  auto b = u.u2.values();
  auto o = out.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = std::hypot(a[n], b[n]);
  return out;
}

ScalarField2 magnitude(const VectorField2& u) {
  ScalarField2 out(u.grid());
  auto a = u.u1.values();
  auto b = u.u2.values();
  auto o = out.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = std::hypot(a[n], b[n]);
  return out;
}

}  // namespace pech
