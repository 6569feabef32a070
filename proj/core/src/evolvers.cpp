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

#include "qas/evolvers.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <tuple>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "qas/errors.hpp"

namespace qas {

namespace {

constexpr double kHermitianTolerance = 1e-8;
constexpr double kInitialNormTolerance = 1e-8;
constexpr double kErrorNegativeTolerance = 1e-8;

template <class Matrix>
double hermitian_defect(const Matrix& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

template <class Matrix>
void require_hermitian(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(what) + " is not square");
  if (a.size() > 0 && hermitian_defect(a) > kHermitianTolerance) {
    throw DataError(std::string(what) + " is not Hermitian within tolerance");
  }
}

// Eigenpairs of a Hermitian matrix with lambda >= cutoff * lambda_max.
template <class Matrix>
std::pair<Matrix, Eigen::VectorXd> kept_eigenpairs(const Matrix& a, double cutoff) {
  if (a.size() == 0) throw DimensionError("empty Gram matrix");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw SingularityError("Gram matrix is numerically zero");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success) throw DataError("Gram eigendecomposition failed");
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double lambda_max = values.maxCoeff();
  if (!(lambda_max > 0.0)) throw SingularityError("Gram matrix has no positive eigenvalue");
  const double threshold = cutoff * lambda_max;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] >= threshold && values[k] > 0.0) kept.push_back(k);
  }
  Matrix vectors(a.rows(), static_cast<Eigen::Index>(kept.size()));
  Eigen::VectorXd kept_values(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    vectors.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]);
    kept_values[static_cast<Eigen::Index>(c)] = values[kept[c]];
  }
  return {std::move(vectors), std::move(kept_values)};
}

class RealPseudoInverse {
 public:
  RealPseudoInverse(const RMatrix& a, double cutoff) {
    require_hermitian(a, "realified Gram matrix");
    std::tie(vectors_, values_) = kept_eigenpairs(a, cutoff);
  }
  RVector solve(const RVector& rhs) const {
    return vectors_ * (vectors_.transpose() * rhs).cwiseQuotient(values_);
  }

 private:
  RMatrix vectors_;
  RVector values_;
};

RVector to_real(const CVector& v) {
  RVector out(2 * v.size());
  out << v.real(), v.imag();
  return out;
}

CVector to_complex(const RVector& v) {
  const Eigen::Index m = v.size() / 2;
  CVector out(m);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = Complex(v[i], v[m + i]);
  return out;
}

RMatrix realify(const CMatrix& a) {
  const Eigen::Index m = a.rows();
  RMatrix out(2 * a.rows(), 2 * a.cols());
  out.topLeftCorner(m, a.cols()) = a.real();
  out.topRightCorner(m, a.cols()) = -a.imag();
  out.bottomLeftCorner(m, a.cols()) = a.imag();
  out.bottomRightCorner(m, a.cols()) = a.real();
  return out;
}

double energy_of(const CVector& alpha, const CMatrix& D, const CMatrix& E) {
  return quadratic_expectation(alpha, D, E).real();
}

bool all_finite(const CVector& v) { return v.allFinite(); }

// Time grid: uniform steps of dt, the last one shortened to land on t_final.
struct TimeGrid {
  std::size_t steps = 0;
  double dt = 0.0;
  double t_final = 0.0;

  double time(std::size_t k) const { return k == steps ? t_final : static_cast<double>(k) * dt; }
  double step_size(std::size_t k) const { return time(k + 1) - time(k); }
};

TimeGrid make_grid(const IntegratorConfig& cfg) {
  TimeGrid g;
  g.dt = cfg.dt;
  g.t_final = cfg.t_final;
  const double ratio = cfg.t_final / cfg.dt;
  g.steps = static_cast<std::size_t>(std::max(0.0, std::ceil(ratio - 1e-9)));
  return g;
}

class Recorder {
 public:
  Recorder(const OverlapMatrices& m, const IntegratorConfig& cfg, EvolutionMode mode,
           const std::vector<Observable>& observables)
      : m_(m), cfg_(cfg), observables_(observables) {
    for (const auto& o : observables) {
      if (o.matrix.rows() != static_cast<Eigen::Index>(m.dim) || o.matrix.cols() != o.matrix.rows()) {
        throw DimensionError("observable '" + o.name + "' matrix does not match the basis size");
      }
      traj_.observables.push_back({o.name, {}});
    }
    monitor_ = cfg.monitor_error && mode == EvolutionMode::Real;
    if (monitor_) {
      if (!m.F) throw ConfigError("error monitoring requested but the F matrix was not assembled");
      traj_.epsilon_t.emplace();
    }
  }

  bool wants(std::size_t k, std::size_t last) const { return k % cfg_.record_every == 0 || k == last; }
  bool monitoring() const { return monitor_; }
  // Only norm and energy are wanted, so callers may supply them directly.
  bool scalars_only() const { return !cfg_.record_alphas && observables_.empty() && !monitor_; }

  void record_scalars(double t, double norm, double energy) {
    traj_.times.push_back(t);
    traj_.norm.push_back(norm);
    traj_.energy.push_back(energy);
  }

  void record(double t, const CVector& alpha, const CVector* alpha_dot) {
    traj_.times.push_back(t);
    if (cfg_.record_alphas) traj_.alphas.push_back(alpha);
    traj_.norm.push_back(alpha.dot(m_.E * alpha).real());
    traj_.energy.push_back(energy_of(alpha, m_.D, m_.E));
    if (monitor_) traj_.epsilon_t->push_back(error_estimate(m_, alpha, *alpha_dot));
    for (std::size_t i = 0; i < observables_.size(); ++i) {
      traj_.observables[i].values.push_back(quadratic_expectation(alpha, observables_[i].matrix, m_.E).real());
    }
  }

  Trajectory take() { return std::move(traj_); }

 private:
  const OverlapMatrices& m_;
  const IntegratorConfig& cfg_;
  const std::vector<Observable>& observables_;
  bool monitor_ = false;
  Trajectory traj_;
};

bool renormalizes(const IntegratorConfig& cfg, EvolutionMode mode) {
  return cfg.renormalize_each_step.value_or(mode == EvolutionMode::Imaginary);
}

template <class State, class Derivative, class Normalize>
State advance(const State& y, double h, IntegratorConfig::Method method, const Derivative& f,
              const Normalize& normalize) {
  State next;
  if (method == IntegratorConfig::Method::ExplicitEuler) {
    next = y + h * f(y);
  } else {
    const State k1 = f(y);
    const State k2 = f(State(y + (0.5 * h) * k1));
    const State k3 = f(State(y + (0.5 * h) * k2));
    const State k4 = f(State(y + h * k3));
    next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  normalize(next);
  return next;
}

Trajectory evolve_direct(const OverlapMatrices& m, const CVector& alpha0, const IntegratorConfig& cfg,
                         EvolutionMode mode, const std::vector<Observable>& observables) {
  const TimeGrid grid = make_grid(cfg);
  Recorder recorder(m, cfg, mode, observables);

  std::function<CVector(const CVector&)> solve;
  if (cfg.use_realified_solver) {
    auto pinv = std::make_shared<RealPseudoInverse>(realify(m.E), cfg.regularization_cutoff);
    solve = [pinv](const CVector& rhs) { return to_complex(pinv->solve(to_real(rhs))); };
  } else {
    require_hermitian(m.E, "Gram matrix E");
    auto gram = std::make_shared<RegularizedGram>(m.E, cfg.regularization_cutoff);
    solve = [gram](const CVector& rhs) { return gram->solve(rhs); };
  }

  auto f = [&](const CVector& alpha) -> CVector {
    if (mode == EvolutionMode::Real) return solve(Complex(0.0, -1.0) * (m.D * alpha));
    const double energy = energy_of(alpha, m.D, m.E);
    return -solve(m.D * alpha - energy * (m.E * alpha));
  };
  const bool renorm = renormalizes(cfg, mode);
  auto normalize = [&](CVector& alpha) {
    if (renorm) alpha /= std::sqrt(alpha.dot(m.E * alpha).real());
  };

  CVector alpha = alpha0;
  auto record = [&](std::size_t k) {
    if (recorder.monitoring()) {
      const CVector dot = f(alpha);
      recorder.record(grid.time(k), alpha, &dot);
    } else {
      recorder.record(grid.time(k), alpha, nullptr);
    }
  };
  record(0);
  for (std::size_t k = 0; k < grid.steps; ++k) {
    alpha = advance(alpha, grid.step_size(k), cfg.method, f, normalize);
    if (!all_finite(alpha)) throw DivergenceError(k + 1, "non-finite coefficients");
    if (recorder.wants(k + 1, grid.steps)) record(k + 1);
  }
  return recorder.take();
}

// Integrates in coordinates y where alpha = T y, T = V_r Lambda^{-1/2} U and
// U diagonalizes the projected Hamiltonian. Runge-Kutta recurrences commute
// with linear changes of variables, so this reproduces the direct recurrence
// for any alpha0 in the kept range of E.
Trajectory evolve_spectral(const OverlapMatrices& m, const CVector& alpha0, const IntegratorConfig& cfg,
                           EvolutionMode mode, const std::vector<Observable>& observables) {
  const TimeGrid grid = make_grid(cfg);
  Recorder recorder(m, cfg, mode, observables);

  require_hermitian(m.E, "Gram matrix E");
  const RegularizedGram gram(m.E, cfg.regularization_cutoff);
  const RVector sqrt_values = gram.kept_values().cwiseSqrt();
  const CMatrix whiten = gram.kept_vectors() * sqrt_values.cwiseInverse().asDiagonal();
  CMatrix projected = whiten.adjoint() * m.D * whiten;
  projected = 0.5 * (projected + projected.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(projected);
  if (eig.info() != Eigen::Success) throw DataError("projected Hamiltonian eigendecomposition failed");
  const RVector& energies = eig.eigenvalues();
  const CMatrix to_alpha = whiten * eig.eigenvectors();
  const CMatrix from_alpha = eig.eigenvectors().adjoint() * sqrt_values.asDiagonal() * gram.kept_vectors().adjoint();

  CVector y = from_alpha * alpha0;
  const bool renorm = renormalizes(cfg, mode);
  auto normalize = [&](CVector& v) {
    if (renorm) v /= v.norm();
  };

  auto imag_f = [&](const CVector& v) -> CVector {
    const double weight = v.squaredNorm();
    const double mean = (energies.array() * v.array().abs2()).sum() / weight;
    return -((energies.array() - mean) * v.array()).matrix();
  };

  auto record = [&](std::size_t k) {
    if (k > 0 && recorder.scalars_only()) {
      // whitened coordinates: alpha^+ E alpha = |y|^2, alpha^+ D alpha = sum e |y|^2
      const double weight = y.squaredNorm();
      recorder.record_scalars(grid.time(k), weight, (energies.array() * y.array().abs2()).sum() / weight);
      return;
    }
    // alpha0 and its projection onto the kept range describe the same state
    const CVector alpha = k == 0 ? alpha0 : CVector(to_alpha * y);
    if (recorder.monitoring()) {
      const CVector dot = to_alpha * (Complex(0.0, -1.0) * (energies.array() * y.array()).matrix());
      recorder.record(grid.time(k), alpha, &dot);
    } else {
      recorder.record(grid.time(k), alpha, nullptr);
    }
  };

  // Real time is linear and diagonal: each step multiplies by the method's
  // stability polynomial evaluated at -i e h.
  auto factors_for = [&](double h) {
    CVector g(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k) {
      const Complex z(0.0, -energies[k] * h);
      g[k] = cfg.method == IntegratorConfig::Method::ExplicitEuler
                 ? 1.0 + z
                 : 1.0 + z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)));
    }
    return g;
  };
  CVector factors;
  double factors_h = -1.0;

  record(0);
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double h = grid.step_size(k);
    if (mode == EvolutionMode::Real) {
      if (h != factors_h) {
        factors = factors_for(h);
        factors_h = h;
      }
      y = y.cwiseProduct(factors);
      normalize(y);
    } else {
      y = advance(y, h, cfg.method, imag_f, normalize);
    }
    if (!all_finite(y)) throw DivergenceError(k + 1, "non-finite coefficients");
    if (recorder.wants(k + 1, grid.steps)) record(k + 1);
  }
  return recorder.take();
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator.dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("integrator.t_final must be >= 0");
  if (!(regularization_cutoff >= 0.0 && regularization_cutoff < 1.0)) {
    throw ConfigError("integrator.regularization_cutoff must lie in [0, 1)");
  }
  if (record_every == 0) throw ConfigError("integrator.record_every must be >= 1");
  if (use_realified_solver && engine == Engine::Spectral) {
    throw ConfigError("integrator.use_realified_solver requires the direct engine");
  }
}

RegularizedGram::RegularizedGram(const CMatrix& E, double cutoff) {
  std::tie(kept_vectors_, kept_values_) = kept_eigenpairs(E, cutoff);
}

CVector RegularizedGram::solve(const CVector& rhs) const {
  if (rhs.size() != kept_vectors_.rows()) throw DimensionError("right-hand side size differs from E");
  const CVector coords = kept_vectors_.adjoint() * rhs;
  return kept_vectors_ * coords.cwiseQuotient(kept_values_.cast<Complex>());
}

CVector regularized_solve(const CMatrix& E, const CVector& rhs, double cutoff) {
  require_hermitian(E, "Gram matrix E");
  return RegularizedGram(E, cutoff).solve(rhs);
}

CVector alpha_dot_real(const OverlapMatrices& m, const CVector& alpha, double cutoff) {
  if (alpha.size() != m.E.rows() || m.D.rows() != m.E.rows()) throw DimensionError("coefficient and matrix sizes differ");
  return regularized_solve(m.E, Complex(0.0, -1.0) * (m.D * alpha), cutoff);
}

CVector alpha_dot_imag(const OverlapMatrices& m, const CVector& alpha, double cutoff) {
  if (alpha.size() != m.E.rows() || m.D.rows() != m.E.rows()) throw DimensionError("coefficient and matrix sizes differ");
  const double energy = expectation_of_hamiltonian(alpha, m);
  const CVector g = m.D * alpha - energy * (m.E * alpha);
  return regularized_solve(m.E, -g, cutoff);
}

RealifiedSystem realify_system(const CMatrix& E, const CMatrix& D) {
  if (E.rows() != E.cols() || D.rows() != D.cols() || E.rows() != D.rows()) {
    throw DimensionError("realify_system needs square matrices of equal size");
  }
  return {realify(E), realify(Complex(0.0, -1.0) * D)};
}

CVector alpha_dot_real_realified(const OverlapMatrices& m, const CVector& alpha, double cutoff) {
  if (alpha.size() != m.E.rows()) throw DimensionError("coefficient and matrix sizes differ");
  const RealifiedSystem sys = realify_system(m.E, m.D);
  const RealPseudoInverse pinv(sys.E, cutoff);
  return to_complex(pinv.solve(sys.rhs * to_real(alpha)));
}

double error_estimate(const OverlapMatrices& m, const CVector& alpha, const CVector& alpha_dot) {
  if (!m.F) throw ConfigError("error estimate needs the F overlap matrix");
  if (alpha.size() != m.E.rows() || alpha_dot.size() != m.E.rows()) throw DimensionError("coefficient and matrix sizes differ");
  const Complex i(0.0, 1.0);
  const Complex eps = alpha_dot.dot(m.E * alpha_dot) + i * alpha_dot.dot(m.D * alpha) -
                      i * alpha.dot(m.D * alpha_dot) + alpha.dot(*m.F * alpha);
  const double scale = std::max(1.0, std::abs(alpha.dot(*m.F * alpha)));
  if (eps.real() < -kErrorNegativeTolerance * scale) throw DataError("error estimate is significantly negative");
  return std::max(0.0, eps.real());
}

const Series* Trajectory::find(const std::string& name) const {
  for (const auto& s : observables) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Trajectory evolve(const OverlapMatrices& m, const CVector& alpha0, const IntegratorConfig& cfg, EvolutionMode mode,
                  const std::vector<Observable>& observables) {
  cfg.validate();
  if (alpha0.size() != static_cast<Eigen::Index>(m.dim) || m.E.rows() != alpha0.size() ||
      m.D.rows() != alpha0.size()) {
    throw DimensionError("initial coefficients do not match the basis size");
  }
  const double norm0 = alpha0.dot(m.E * alpha0).real();
  if (std::abs(norm0 - 1.0) > kInitialNormTolerance) {
    throw ArgumentError("initial coefficients are not normalized (alpha^dagger E alpha = " + std::to_string(norm0) + ")");
  }
  bool spectral = false;
  switch (cfg.engine) {
    case IntegratorConfig::Engine::Spectral: spectral = true; break;
    case IntegratorConfig::Engine::Direct: spectral = false; break;
    case IntegratorConfig::Engine::Auto:
      spectral = !cfg.use_realified_solver && hermitian_defect(m.D) <= kHermitianTolerance;
      break;
  }
  return spectral ? evolve_spectral(m, alpha0, cfg, mode, observables)
                  : evolve_direct(m, alpha0, cfg, mode, observables);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool with_alphas) {
  with_alphas = with_alphas && !traj.alphas.empty();
  const std::size_t m = with_alphas ? static_cast<std::size_t>(traj.alphas.front().size()) : 0;
  out << 't';
  for (std::size_t i = 0; i < m; ++i) out << ",alpha_" << i << "_re,alpha_" << i << "_im";
  out << ",norm,energy";
  if (traj.epsilon_t) out << ",epsilon_t";
  for (const auto& s : traj.observables) out << ',' << s.name;
  out << '\n';

  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), ",%.17g", v == 0.0 ? 0.0 : v);
    out << buf;
  };
  for (std::size_t r = 0; r < traj.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.times[r]);
    out << buf;
    for (std::size_t i = 0; i < m; ++i) {
      put(traj.alphas[r][static_cast<Eigen::Index>(i)].real());
      put(traj.alphas[r][static_cast<Eigen::Index>(i)].imag());
    }
    put(traj.norm[r]);
    put(traj.energy[r]);
    if (traj.epsilon_t) put((*traj.epsilon_t)[r]);
    for (const auto& s : traj.observables) put(s.values[r]);
    out << '\n';
  }
}

}  // namespace qas
