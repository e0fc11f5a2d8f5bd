#pragma once

#include "pech/field.hpp"

namespace pech {

// Spectral differential operators. Horizontal operators keep the vertical
// basis; they accept `none` fields and act level by level.

VectorFieldH grad_h(const ScalarField3& f);
ScalarField3 div_h(const VectorFieldH& u);
/// curl_h u = d_x u2 - d_y u1.
ScalarField3 curl_h(const VectorFieldH& u);
ScalarField3 lap_h(const ScalarField3& f);

VectorField2 grad_h(const ScalarField2& f);
ScalarField2 div_h(const VectorField2& u);
ScalarField2 curl_h(const VectorField2& u);
ScalarField2 lap_h(const ScalarField2& f);

/// Mixed partial d^a/dx^a d^b/dy^b d^c/dz^c. c > 0 needs a cosine or sine field.
ScalarField3 derivative(const ScalarField3& f, int a, int b, int c);
ScalarField2 derivative(const ScalarField2& f, int a, int b);

/// Vertical derivatives. ddz flips cosine <-> sine; `none` fields are rejected
/// with IncompatibleOperands.
ScalarField3 ddz(const ScalarField3& f);
ScalarField3 d2dz2(const ScalarField3& f);
VectorFieldH ddz(const VectorFieldH& u);

/// F(z) = integral of f from -h to z, exact for the vertical interpolant.
/// Sine input gives a cosine field. Any other input gives a `none` field
/// (the mean mode integrates to a linear profile); `none` input is expanded
/// in cosines first.
ScalarField3 vint_from_bottom(const ScalarField3& f);

/// (1/h) * integral over (-h, 0), trapezoid in z.
ScalarField2 vertical_average(const ScalarField3& f);
VectorField2 vertical_average(const VectorFieldH& u);
/// f minus its vertical average. Cosine fields keep their tag, others become `none`.
ScalarField3 fluctuation(const ScalarField3& f);
VectorFieldH fluctuation(const VectorFieldH& u);

/// Extends a field on M constantly in z (cosine tag).
ScalarField3 lift(const ScalarField2& f);
VectorFieldH lift(const VectorField2& u);

/// Removes modes outside the 2/3-rule band (identity when dealiasing is off).
ScalarField3 dealias(const ScalarField3& f);
VectorFieldH dealias(const VectorFieldH& u);
ScalarField2 dealias(const ScalarField2& f);

}  // namespace pech
