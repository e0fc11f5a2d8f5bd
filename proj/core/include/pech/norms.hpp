#pragma once

#include <limits>

#include "pech/field.hpp"

namespace pech {

inline constexpr double q_inf = std::numeric_limits<double>::infinity();

/// L^q norm by collocation quadrature (mean over M, trapezoid in z).
/// q = q_inf gives the grid maximum of |f|.
double norm_Lq(const ScalarField3& f, double q);
double norm_Lq(const ScalarField2& f, double q);
/// L^q norm of the pointwise magnitude |u|.
double norm_Lq(const VectorFieldH& u, double q);
double norm_Lq(const VectorField2& u, double q);

double norm_L2(const ScalarField3& f);
double norm_L2(const ScalarField2& f);
double norm_L2(const VectorFieldH& u);

double inner_L2(const ScalarField3& f, const ScalarField3& g);
double inner_L2(const ScalarField2& f, const ScalarField2& g);
double inner_L2(const VectorFieldH& u, const VectorFieldH& v);

/// Sobolev seminorms: square root of the sum over all multi-indices of
/// order exactly 1 (resp. 2) of ||d^alpha f||^2, each multi-index once.
/// 3D fields include z-derivatives and need a cosine or sine tag.
double seminorm_H1(const ScalarField3& f);
double seminorm_H2(const ScalarField3& f);
double seminorm_H1(const ScalarField2& f);
double seminorm_H2(const ScalarField2& f);

/// Full Sobolev norm sqrt(sum_{|alpha| <= m} ||d^alpha f||^2).
double norm_Hm(const ScalarField3& f, int m);
double norm_Hm(const ScalarField2& f, int m);
double norm_Hm(const VectorFieldH& u, int m);
/// Horizontal-only variant: only x and y derivatives enter.
double norm_Hm_horizontal(const ScalarField3& f, int m);

/// Pointwise |u|.
ScalarField3 magnitude(const VectorFieldH& u);
ScalarField2 magnitude(const VectorField2& u);

}  // namespace pech
