// Copyright 2024 The sqlab Authors
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

// Thin wrappers around the Eigen decompositions. Keeping the solver
// instantiations in one translation unit keeps the rest of the build light.

#pragma once

#include "sqlab/types.hpp"

namespace sqlab {

struct HermitianEig {
  RVec values;  // ascending
  Mat vectors;  // columns
};

struct RealSymmetricEig {
  RVec values;  // ascending
  RMat vectors;
};

struct Svd {
  RVec singular_values;  // descending
  Mat left;              // columns are left singular vectors
  Mat right;             // columns are right singular vectors
};

HermitianEig hermitian_eig(const Mat& m);
RVec hermitian_eigenvalues(const Mat& m);
RealSymmetricEig symmetric_eig(const RMat& m);
RVec real_eigenvalues(const RMat& m);  // general real matrix, real parts, ascending

// Full SVD; left is rows x rows and right is cols x cols so that null
// directions are available too.
Svd svd(const Mat& m);
double op_norm(const Mat& m);

bool is_hermitian(const Mat& m, double tol);
bool is_unitary(const Mat& m, double tol);

// Square root of a positive semidefinite matrix. Eigenvalues in
// [-clip_tol, 0) are treated as 0; anything more negative is an error.
Mat psd_sqrt(const Mat& m, double clip_tol);

Mat kron(const Mat& a, const Mat& b);

}  // namespace sqlab
