// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sqlab/types.hpp"

namespace sqlab {

// Default slack for state validation, eigenvalue clipping and the
// distance inequalities in this module.
inline constexpr double kStateTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kZeroBranchTol = 1e-14;

class DensityMatrix;

class PureState {
 public:
  explicit PureState(Vec amplitudes);

  static PureState basis(int num_qubits, std::size_t index);
  static PureState zeros(int num_qubits) { return basis(num_qubits, 0); }
  // Normalizes first. Throws on the zero vector.
  static PureState normalized(Vec v);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vec& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  PureState tensor(const PureState& other) const;
  DensityMatrix density() const;

 private:
  Vec amps_;
  int num_qubits_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity.
  explicit DensityMatrix(Mat matrix);

  static DensityMatrix maximally_mixed(int num_qubits);
  // Skips the eigenvalue check; the caller guarantees a valid state by
  // construction (outer products, partial traces, convex mixtures).
  static DensityMatrix trusted(Mat matrix);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Mat& matrix() const { return m_; }

  DensityMatrix tensor(const DensityMatrix& other) const;

 private:
  struct TrustedTag {};
  DensityMatrix(Mat matrix, TrustedTag);

  Mat m_;
  int num_qubits_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const PureState& a, const DensityMatrix& b);

// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)) (not squared).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
// Pure-versus-mixed simplification sqrt(<psi|b|psi>).
double fidelity(const PureState& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& traced_qubits);
// Reduced state of a pure state without forming the full density matrix.
DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& traced_qubits);

struct PostSelection {
  double probability;
  DensityMatrix state;  // on the remaining qubits, normalized
};

// Projects `qubit` onto `outcome` and removes it. Throws ZeroBranch when
// the branch probability is below kZeroBranchTol.
PostSelection post_select(const PureState& psi, int qubit, int outcome);

// 1 - F <= td <= sqrt(1 - F^2), with `slack` on both sides.
bool fuchs_vdg_check(const DensityMatrix& a, const DensityMatrix& b, double slack = kStateTol);

DensityMatrix mix(const std::vector<double>& weights, const std::vector<DensityMatrix>& states);
DensityMatrix apply_unitary(const Mat& u, const DensityMatrix& rho);

// Random objects. All draws go through the supplied engine so results are
// reproducible from a seed.
using Rng = std::mt19937_64;
Vec random_gaussian_vector(std::size_t dim, Rng& rng);
PureState random_pure_state(int num_qubits, Rng& rng);
DensityMatrix random_density_matrix(int num_qubits, Rng& rng, int rank = 0);
Mat random_unitary(std::size_t dim, Rng& rng);
Mat random_hermitian(std::size_t dim, Rng& rng);

}  // namespace sqlab
