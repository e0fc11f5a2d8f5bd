#pragma once

#include "pech/model.hpp"
#include "pech/spectral.hpp"

namespace pech {

/// Modal coefficients of (v1, v2, T): v cosine, T sine.
struct ModalState {
  Modal3 v1;
  Modal3 v2;
  Modal3 T;

  ModalState() = default;
  explicit ModalState(const GridSpec& g)
      : v1(g, VBasis::cosine), v2(g, VBasis::cosine), T(g, VBasis::sine) {}

  const GridSpec& grid() const noexcept { return T.grid; }
  ModalState& operator+=(const ModalState& o);
  ModalState& operator*=(double a) noexcept;
  /// this += a * o
  void axpy(double a, const ModalState& o);
};

/// Explicit right-hand side split by physical origin.
struct ExplicitTerms {
  ModalState advection;
  ModalState coriolis;
  ModalState buoyancy;
  ModalState stratification;
  ModalState source;
};

/// The spectral right-hand side of the model on a fixed grid. Holds the
/// transformed, truncated source and the diagonal implicit symbols.
class Pipeline {
 public:
  Pipeline(const GridSpec& g, const ModelParams& p);

  const GridSpec& grid() const noexcept { return grid_; }
  const ModelParams& params() const noexcept { return params_; }

  ModalState to_modal(const VectorFieldH& v, const ScalarField3& T) const;
  State to_state(const ModalState& m, double t) const;

  /// Sum of all enabled explicit terms, truncated to the dealiased band.
  ModalState explicit_rhs(const ModalState& s) const;
  ExplicitTerms explicit_terms(const ModalState& s) const;
  /// Diagonal diffusion applied to s.
  ModalState implicit_rhs(const ModalState& s) const;

  /// Diagonal symbols, indexed like Modal3::c.
  const std::vector<double>& lambda_v() const noexcept { return lam_v_; }
  const std::vector<double>& lambda_T() const noexcept { return lam_T_; }

  /// Leray projection of the barotropic slice of (v1, v2).
  void project(ModalState& s) const;
  static void project(Modal3& v1, Modal3& v2);

  /// Physical vertical velocity of a modal state.
  ScalarField3 vertical_velocity(const ModalState& s) const;

 private:
  GridSpec grid_;
  ModelParams params_;
  Modal3 Q_;
  std::vector<double> lam_v_;
  std::vector<double> lam_T_;
};

}  // namespace pech
