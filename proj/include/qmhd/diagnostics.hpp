#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmhd/manufactured.hpp"
#include "qmhd/system.hpp"

namespace qmhd {

// ---------------------------------------------------------------------------
// Pointwise entropy production

/// Everything the entropy production needs at one point.
struct XiPoint {
  PointJet jet;
  ThermoPoint th;
  double tau = 0.0;
  Vec3 grad_tau;
  Vec3 F;
  double Q = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  Vec3 w_hat_drive;  ///< rho (u·grad) u − div(B ⊗ B) + grad(p + |B|^2/2) − rho F
  Vec3 b_hat;        ///< div(u ⊗ B − B ⊗ u)
};

/// Additive pieces of Xi. The two middle terms differ between the two forms.
struct XiTerms {
  double navier_stokes = 0.0;  ///< Xi_NS,0
  double inertial = 0.0;       ///< (tau / rho) |w_hat_drive|^2 = (rho / tau) |w_hat|^2
  double middle_1 = 0.0;       ///< (a) tau p_rho / rho [div(rho u)]^2, (b) acoustic square
  double middle_2 = 0.0;       ///< (a) thermal square, (b) (tau rho theta / c_p)(u·grad s − ...)^2
  double magnetic = 0.0;       ///< tau |b_hat|^2
  double tau_gradient = 0.0;   ///< (B·u) b_hat·grad tau
  double heat = 0.0;           ///< Q (1 − tau Q / (4 rho theta eps_theta))

  double total() const {
    return navier_stokes + inertial + middle_1 + middle_2 + magnetic + tau_gradient + heat;
  }
  double magnitude() const;  ///< sum of absolute values
};

/// Navier–Stokes entropy production for Q = 0:
/// 2 mu D:D + (lambda − 2 mu / 3)(div u)^2 + kappa |grad theta|^2 / theta.
double xi_navier_stokes(const PointJet& jet, double mu, double lambda, double kappa);
XiTerms xi_form_a(const XiPoint& x);
/// Second decomposition; empty where p_rho <= 0.
std::optional<XiTerms> xi_form_b(const XiPoint& x);

/// w_hat bracket from exact first derivatives (div(B⊗B) = (div B) B + (B·grad) B).
Vec3 w_hat_drive_exact(const PointJet& jet, const ThermoPoint& th, const Vec3& F);
/// b_hat = (div u) B + (u·grad) B − (div B) u − (B·grad) u from exact derivatives.
Vec3 bhat_exact(const PointJet& jet);
/// Builds an XiPoint from an analytic jet (grad tau = 0, i.e. constant tau).
XiPoint exact_xi_point(const PointJet& jet, const EosModel& eos, double tau, const Vec3& F,
                       double Q, double mu, double lambda, double kappa);

// ---------------------------------------------------------------------------
// Field-level entropy audit

struct EntropyAudit {
  ScalarField xi_a;
  std::optional<ScalarField> xi_b;  ///< present only if p_rho > 0 in every cell
  ScalarField xi_ns0;
  double min_xi = 0.0;
  double max_xi = 0.0;
  double equiv_err = 0.0;  ///< max |xi_a − xi_b| / max(|xi_a|, |xi_b|) over cells
  bool tau_constant = false;
  bool condition_ok = false;  ///< tau constant and tau Q / (4 rho theta eps_theta) <= 1 everywhere
  std::vector<std::size_t> negative_cells;   ///< xi_a < −1e-12 max(1, max xi_a)
  std::vector<std::size_t> undefined_cells;  ///< p_rho <= 0, form (b) undefined
  std::vector<std::size_t> condition_violations;
};

/// Jets built from the grid's difference operators at every cell.
Field<XiPoint> discrete_xi_points(const FieldState& s, const RegTerms& r, const SourceFields& src);

ScalarField xi_form_a(const FieldState& s, const RegTerms& r, const SourceFields& src);
/// Empty when some cell has p_rho <= 0; those cells are appended to `undefined` if given.
std::optional<ScalarField> xi_form_b(const FieldState& s, const RegTerms& r,
                                     const SourceFields& src,
                                     std::vector<std::size_t>* undefined = nullptr);

EntropyAudit audit_entropy(const FieldState& s, const RegTerms& r, const SourceFields& src,
                           const RegParams& params);

// ---------------------------------------------------------------------------
// Balance residuals

/// d_t(rho eps) from the conserved tendencies by the chain rule.
ScalarField internal_energy_rate(const FieldState& s, const Tendencies& d);
/// d_t(rho s) from d_t rho and d_t(rho eps) through the Gibbs relations.
ScalarField entropy_rate(const FieldState& s, const RegTerms& r, const Tendencies& d);

/// LHS − RHS of the internal energy balance of the regularized system.
ScalarField residual_internal_energy(const FieldState& s, const RegTerms& r,
                                     const SourceFields& src, const Tendencies& d);
/// LHS − RHS of the entropy balance d_t(rho s) + div[rho s (u − w)] = div(−q/theta) + Xi/theta.
ScalarField residual_entropy_balance(const FieldState& s, const RegTerms& r, const Tendencies& d,
                                     const ScalarField& xi);

// ---------------------------------------------------------------------------
// Integral monitors

struct Totals {
  double mass = 0.0;
  Vec3 momentum;
  double energy = 0.0;   ///< integral of E + |B|^2 / 2
  double entropy = 0.0;  ///< integral of rho s
  double max_div_B = 0.0;
};

Totals totals(const FieldState& s, const EosModel& eos);

/// Net outflow of entropy, integral over the boundary of (rho s (u − w) + q / theta)·n,
/// evaluated in the edge cells of transmissive axes (periodic axes contribute nothing).
double entropy_boundary_outflow(const FieldState& s, const RegTerms& r);

// ---------------------------------------------------------------------------
// Refinement studies

/// Least-squares slope of log(residual) against log(1/N).
double fitted_rate(const std::vector<int>& levels, const std::vector<double>& residuals);

struct StudyEntry {
  std::string name;
  std::vector<double> residual;  ///< max-norm per level
  std::vector<double> scale;     ///< max-norm of the compared quantities per level
  double rate = 0.0;
  bool exact = false;  ///< residual <= 1e-12 * scale at every level
  bool pass = false;
};

struct StudyReport {
  std::vector<int> levels;
  int order = 2;
  std::vector<StudyEntry> entries;
  bool all_pass() const;
  const StudyEntry& at(const std::string& name) const;
};

/// Box, boundaries and stencil for a refinement study; N varies per level.
struct StudySetup {
  int dim = 1;
  double lo = 0.0;
  double hi = 6.283185307179586;
  int order = 2;
  RegParams params;
  Vec3 force;
  double heat = 0.0;
  double min_rate_slack = 0.2;  ///< pass iff rate >= order − slack or exact
};

Grid study_grid(const StudySetup& setup, int n);

/// Derivation identities: linking w/w_hat, b_hat expansion, div b_hat = 0,
/// M identity, Pi u − Pi_NS u expansion, B-independence of the Euler pressure rate.
StudyReport identity_suite(const ManufacturedState& m, const StudySetup& setup,
                           const std::vector<int>& levels, const EosModel& eos);

/// Internal-energy and entropy balance residuals (entropy with both Xi forms)
/// plus the agreement of the two entropy residuals.
StudyReport balance_study(const ManufacturedState& m, const StudySetup& setup,
                          const std::vector<int>& levels, const EosModel& eos);

}  // namespace qmhd
