// Copyright 2026 The QAS Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Equations of motion for the linear-combination coefficients alpha:
 *
 *   real time       E alpha' = -i D alpha
 *   imaginary time  E alpha' = -(D alpha - <H> E alpha)
 *
 * solved through a cutoff pseudo-inverse of the Gram matrix E, plus the
 * McLachlan-style residual monitor and trajectory integration.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qas/linalg.hpp"
#include "qas/overlaps.hpp"

namespace qas {

inline constexpr double kDefaultRegularizationCutoff = 1e-10;

enum class EvolutionMode { Real, Imaginary };

struct IntegratorConfig {
  enum class Method { ExplicitEuler, RK4 };
  /// Spectral integrates in the eigenbasis of the projected Hamiltonian;
  /// Direct evaluates alpha' through the regularized solve at every stage.
  /// Both run the same Runge-Kutta recurrence. Auto picks Spectral unless the
  /// realified solver is requested or D is not Hermitian.
  enum class Engine { Auto, Direct, Spectral };

  Method method = Method::RK4;
  double dt = 1e-3;
  double t_final = 0.0;
  double regularization_cutoff = kDefaultRegularizationCutoff;
  std::optional<bool> renormalize_each_step;  // default: false real, true imaginary
  bool use_realified_solver = false;
  std::size_t record_every = 1;
  Engine engine = Engine::Auto;
  bool record_alphas = true;
  bool monitor_error = false;  // needs F

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Eigendecomposition of a Hermitian Gram matrix with eigenvalues below
/// cutoff * lambda_max discarded.
class RegularizedGram {
 public:
  RegularizedGram(const CMatrix& E, double cutoff);

  /// Moore-Penrose style solution of E x = rhs restricted to the kept range.
  CVector solve(const CVector& rhs) const;
  Eigen::Index rank() const { return kept_vectors_.cols(); }
  const CMatrix& kept_vectors() const { return kept_vectors_; }
  const RVector& kept_values() const { return kept_values_; }

 private:
  CMatrix kept_vectors_;
  RVector kept_values_;
};

/// Throws DataError if E is not Hermitian within tolerance.
CVector regularized_solve(const CMatrix& E, const CVector& rhs, double cutoff);

CVector alpha_dot_real(const OverlapMatrices& m, const CVector& alpha,
                       double cutoff = kDefaultRegularizationCutoff);
CVector alpha_dot_imag(const OverlapMatrices& m, const CVector& alpha,
                       double cutoff = kDefaultRegularizationCutoff);

/// Real 2m x 2m block forms of E and of the full real-time right-hand side -iD,
/// acting on (Re alpha, Im alpha).
struct RealifiedSystem {
  RMatrix E;
  RMatrix rhs;
};
RealifiedSystem realify_system(const CMatrix& E, const CMatrix& D);

/// Real-time alpha' computed through the realified system.
CVector alpha_dot_real_realified(const OverlapMatrices& m, const CVector& alpha,
                                 double cutoff = kDefaultRegularizationCutoff);

/// || (d/dt + iH) |phi(alpha)> ||^2 from the overlap matrices. Needs m.F.
double error_estimate(const OverlapMatrices& m, const CVector& alpha, const CVector& alpha_dot);

struct Observable {
  std::string name;
  CMatrix matrix;  // <psi_i| O |psi_j>
};

struct Series {
  std::string name;
  std::vector<double> values;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> alphas;  // empty when not recorded
  std::vector<double> norm;
  std::vector<double> energy;
  std::optional<std::vector<double>> epsilon_t;
  std::vector<Series> observables;

  std::size_t size() const { return times.size(); }
  const Series* find(const std::string& name) const;
};

/// Integrates from t = 0 to cfg.t_final. Throws ArgumentError if alpha0 is not
/// normalized and DivergenceError on non-finite coefficients.
Trajectory evolve(const OverlapMatrices& m, const CVector& alpha0, const IntegratorConfig& cfg,
                  EvolutionMode mode, const std::vector<Observable>& observables = {});

/// CSV with header: t, [alpha_i_re, alpha_i_im ...], norm, energy, [epsilon_t], observables...
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool with_alphas);

}  // namespace qas
