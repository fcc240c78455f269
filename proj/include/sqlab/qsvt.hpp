// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sqlab/verifier.hpp"

namespace sqlab {

inline constexpr int kErfDegreeCap = 2000;
inline constexpr int kChebyshevDegreeCap = 5000;
inline constexpr int kPhaseDegreeCap = 500;
inline constexpr int kMaxEncodingQubits = 12;
// Measured over delta in [0.02, 0.4], eps in [1e-6, 0.1]; the largest ratio
// d * delta / ln(1/eps) seen was 2.26.
inline constexpr double kErfDegreeConstant = 2.5;

// Pi_in and Pi_out are computational-basis projectors stored as 0/1 masks
// over the basis of the unitary.
struct ProjectedUnitaryEncoding {
  Mat unitary;
  RVec pi_in;
  RVec pi_out;

  // Throws unless the masks are 0/1, sized to the unitary, and the unitary
  // is unitary within 1e-10.
  void validate() const;
  std::size_t dim() const { return static_cast<std::size_t>(unitary.rows()); }
  // Pi_out U Pi_in restricted to rows in Pi_out and columns in Pi_in.
  Mat encoded() const;
  std::vector<Eigen::Index> in_support() const;
  std::vector<Eigen::Index> out_support() const;
};

// Mask with 1 wherever every listed qubit reads the listed value.
RVec basis_projector(int num_qubits, const std::vector<int>& qubits, const std::vector<int>& values);

enum class InputProjector { WitnessFree, AllZero };
const char* to_string(InputProjector p);

// Pi_in = ancillas zero (WitnessFree) or every qubit zero (AllZero);
// Pi_out = output qubit reads 1.
ProjectedUnitaryEncoding encoding_of(const VerifierSpec& v, InputProjector p = InputProjector::WitnessFree);

enum class PolyBasis { Monomial, Chebyshev };
// Erf: numerically projected erf series. Chebyshev: closed-form series.
enum class PolyBackend { Erf, Chebyshev };
const char* to_string(PolyBackend b);

struct SignPolynomial {
  PolyBasis basis = PolyBasis::Chebyshev;
  RVec coefficients;  // c_0..c_d in the chosen basis
  int degree = 0;
  double delta = 0.0;
  double epsilon = 0.0;

  double operator()(double x) const;
  // Chebyshev coefficients regardless of the stored basis.
  RVec chebyshev() const;
  double coefficient_l1() const { return coefficients.cwiseAbs().sum(); }
};

double chebyshev_eval(const RVec& c, double x);  // Clenshaw
// Chebyshev coefficients c_0..c_{n-1} of f from its values at the n
// Chebyshev nodes of the first kind. Exact for polynomials of degree < n.
RVec chebyshev_project(const std::vector<double>& values_at_nodes);
std::vector<double> chebyshev_nodes(int n);

// Scaled erf(kx) expanded by Chebyshev projection; odd, |P| <= 1 - eps/8
// and |P - sgn| <= eps/2 outside (-delta, delta).
SignPolynomial approx_sign_erf(double delta, double eps);
// Closed-form Chebyshev series of the same scaled erf (modified Bessel
// coefficients), gap equal to eps.
SignPolynomial approx_sign_chebyshev(double eps);

// Odd approximant of 1/2[(1-e)sgn(x+t) + (1-e)sgn(x-t) + 2e sgn(x)] with
// t = (a+b)/2. Above b it is >= 1 - eps/2, in [0, a] it is in [-eps, eps].
SignPolynomial threshold_polynomial(double a, double b, double eps, PolyBackend backend = PolyBackend::Erf);

struct PhaseSequence {
  std::vector<double> angles;  // reflection convention, length = degree
  int newton_iterations = 0;
  double residual = 0.0;       // max grid error of Re P_Phi
};

// Re [prod_j e^{i phi_j Z} R(x)]_00 with R(x) = [[x, s], [s, -x]].
double qsp_response(const std::vector<double>& angles, double x);
// Newton iteration on symmetric phases. Throws InvalidArgument for an even
// or inadmissible polynomial, SizeLimit above kPhaseDegreeCap, and
// NonConvergence (with residual) when the grid check fails.
PhaseSequence find_phases(const SignPolynomial& p);

// Pi_out <+| U_Phi |+> Pi_in, restricted to out_support x in_support, built
// with one ancilla driving every projector-controlled phase.
Mat apply_qsvt(const ProjectedUnitaryEncoding& enc, const PhaseSequence& phases);
// Oracle: sum_i P(sigma_i) |l_i><r_i| on the same supports.
Mat functional_calculus(const ProjectedUnitaryEncoding& enc, const SignPolynomial& p);

struct Discrimination {
  SignPolynomial polynomial;
  PhaseSequence phases;
  Mat transformed;  // apply_qsvt output
  double a = 0.0, b = 0.0, epsilon = 0.0;

  // Squared norm of the transformed vector: acceptance of the amplified
  // encoding on `right` (coordinates in in_support order).
  double acceptance(const Vec& right) const { return (transformed * right).squaredNorm(); }
};

Discrimination discriminate(const ProjectedUnitaryEncoding& enc, double a, double b, double eps);

struct Amplified {
  VerifierSpec verifier;
  SignPolynomial polynomial;
  PhaseSequence phases;
  int repetitions = 0;  // uses of V or V^dag
};

// Gate-level QSVT around v: one phase ancilla (index n) and a flag qubit
// (index n+1) that is the new output. The resulting-state register is
// unchanged. Target parameters c' = 1 - 2^-l, s' = 2^-l.
Amplified amplify_verifier(const VerifierSpec& v, int l, InputProjector p = InputProjector::WitnessFree,
                           PolyBackend backend = PolyBackend::Erf);

}  // namespace sqlab
