#include "pech/calculus.hpp"

#include <numbers>

#include "pech/errors.hpp"
#include "pech/spectral.hpp"

namespace pech {

namespace {

// Horizontal transforms suffice for horizontal operators; skipping the
// vertical pass keeps them exact on `none` fields and cheaper elsewhere.
Modal3 hforward(const ScalarField3& f) { return forward_levels(f); }

ScalarField3 hinverse(Modal3 m, VBasis tag) {
  ScalarField3 out = inverse(m);
  return out.with_basis(tag);
}

}  // namespace

VectorFieldH grad_h(const ScalarField3& f) {
  Modal3 m = hforward(f);
  return {hinverse(mdx(m), f.basis()), hinverse(mdy(m), f.basis())};
}

ScalarField3 div_h(const VectorFieldH& u) {
  Modal3 a = mdx(hforward(u.u1));
  a += mdy(hforward(u.u2));
  return hinverse(std::move(a), u.basis());
}

ScalarField3 curl_h(const VectorFieldH& u) {
  Modal3 a = mdx(hforward(u.u2));
  a -= mdy(hforward(u.u1));
  return hinverse(std::move(a), u.basis());
}

ScalarField3 lap_h(const ScalarField3& f) { return hinverse(mlap(hforward(f)), f.basis()); }

VectorField2 grad_h(const ScalarField2& f) {
  Modal2 m = forward(f);
  return {inverse(mdx(m)), inverse(mdy(m))};
}

ScalarField2 div_h(const VectorField2& u) {
  Modal2 a = mdx(forward(u.u1));
  Modal2 b = mdy(forward(u.u2));
  for (std::size_t n = 0; n < a.c.size(); ++n) a.c[n] += b.c[n];
  return inverse(a);
}

ScalarField2 curl_h(const VectorField2& u) {
  Modal2 a = mdx(forward(u.u2));
  Modal2 b = mdy(forward(u.u1));
  for (std::size_t n = 0; n < a.c.size(); ++n) a.c[n] -= b.c[n];
  return inverse(a);
}

ScalarField2 lap_h(const ScalarField2& f) { return inverse(mlap(forward(f))); }

ScalarField3 derivative(const ScalarField3& f, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw InputError("derivative orders must be non-negative");
  if (c == 0) {
    if (a == 0 && b == 0) return f;
    Modal3 m = hforward(f);
    for (int i = 0; i < a; ++i) m = mdx(m);
    for (int i = 0; i < b; ++i) m = mdy(m);
    return hinverse(std::move(m), f.basis());
  }
  Modal3 m = forward(f);
  for (int i = 0; i < a; ++i) m = mdx(m);
  for (int i = 0; i < b; ++i) m = mdy(m);
  for (int i = 0; i < c; ++i) m = mdz(m);
  return inverse(m);
}

ScalarField2 derivative(const ScalarField2& f, int a, int b) {
  if (a < 0 || b < 0) throw InputError("derivative orders must be non-negative");
  if (a == 0 && b == 0) return f;
  Modal2 m = forward(f);
  for (int i = 0; i < a; ++i) m = mdx(m);
  for (int i = 0; i < b; ++i) m = mdy(m);
  return inverse(m);
}

ScalarField3 ddz(const ScalarField3& f) { return inverse(mdz(forward(f))); }
ScalarField3 d2dz2(const ScalarField3& f) { return inverse(mdzz(forward(f))); }
VectorFieldH ddz(const VectorFieldH& u) { return {ddz(u.u1), ddz(u.u2)}; }

ScalarField3 vint_from_bottom(const ScalarField3& f) {
  const GridSpec& g = f.grid();
  const int N = g.nz - 1;
  const double kz = std::numbers::pi / g.h;
  const VBasis in = f.basis() == VBasis::sine ? VBasis::sine : VBasis::cosine;
  Modal3 a = forward(f.with_basis(in));
  const std::size_t slab = a.slab();
  if (in == VBasis::sine) {
    // int b sin(m k z') = b/(m k) (1 - cos(m k z')).
    Modal3 out(g, VBasis::cosine);
    for (int m = 1; m < N; ++m)
      for (std::size_t s = 0; s < slab; ++s) {
        const cplx c = a.c[m * slab + s] / (m * kz);
        out.c[m * slab + s] = -c;
        out.c[s] += c;
      }
    ScalarField3 F = inverse(out);
    // Exact zero at the bottom, free of transform round-off.
    for (std::size_t n = 0; n < g.size2(); ++n) F.values()[n] = 0.0;
    return F;
  }
  // int a cos(m k z') = a/(m k) sin(m k z'); the m = 0 mode gives a0 (z + h).
  // The top mode m = N integrates to sin(N k z'), which vanishes on every level.
  Modal3 sine(g, VBasis::sine);
  for (int m = 1; m < N; ++m)
    for (std::size_t s = 0; s < slab; ++s) sine.c[m * slab + s] = a.c[m * slab + s] / (m * kz);
  ScalarField3 out = inverse(sine).with_basis(VBasis::none);
  Modal2 a0(g);
  std::copy(a.c.begin(), a.c.begin() + slab, a0.c.begin());
  ScalarField2 mean = inverse(a0);
  for (int k = 0; k < g.nz; ++k) {
    const double zh = g.z(k) + g.h;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out(i, j, k) += mean(i, j) * zh;
  }
  return out;
}

ScalarField2 vertical_average(const ScalarField3& f) {
  const GridSpec& g = f.grid();
  ScalarField2 out(g);
  auto o = out.values();
  auto v = f.values();
  const std::size_t n2 = g.size2();
  for (int k = 0; k < g.nz; ++k) {
    const double w = g.zweight(k) / g.h;
    for (std::size_t n = 0; n < n2; ++n) o[n] += w * v[k * n2 + n];
  }
  return out;
}

VectorField2 vertical_average(const VectorFieldH& u) {
  return {vertical_average(u.u1), vertical_average(u.u2)};
}

ScalarField3 fluctuation(const ScalarField3& f) {
  ScalarField3 out = f - lift(vertical_average(f));
  return out.with_basis(f.basis() == VBasis::cosine ? VBasis::cosine : VBasis::none);
}

VectorFieldH fluctuation(const VectorFieldH& u) { return {fluctuation(u.u1), fluctuation(u.u2)}; }

ScalarField3 lift(const ScalarField2& f) {
  const GridSpec& g = f.grid();
  ScalarField3 out(g, VBasis::cosine);
  auto o = out.values();
  auto v = f.values();
  const std::size_t n2 = g.size2();
  for (int k = 0; k < g.nz; ++k)
    for (std::size_t n = 0; n < n2; ++n) o[k * n2 + n] = v[n];
  return out;
}

VectorFieldH lift(const VectorField2& u) { return {lift(u.u1), lift(u.u2)}; }

ScalarField3 dealias(const ScalarField3& f) {
  Modal3 m = forward(f);
  truncate(m);
  return inverse(m);
}

VectorFieldH dealias(const VectorFieldH& u) { return {dealias(u.u1), dealias(u.u2)}; }

ScalarField2 dealias(const ScalarField2& f) {
  Modal2 m = forward(f);
  truncate(m);
  return inverse(m);
}

}  // namespace pech
