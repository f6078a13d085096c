#pragma once

// Maps from symmetric 6x6 matrices to positive semi-definite ones.
//
// The polynomial and exponential maps commute with conjugation by an
// orthonormal matrix, so applied to Mandel matrices they are rotation
// equivariant. The eigenvalue clamp is equivariant too but its gradient is
// unstable near degenerate spectra; the Cholesky assembly treats its inputs as
// independent scalars and is not equivariant. Both are kept for comparison.

#include <array>
#include <optional>
#include <string_view>

#include "latmech/tensor4.hpp"

namespace latmech::psd {

enum class PsdMethod { Square, Fourth, Exp, TruncExp2, TruncExp4, EigenClamp, CholeskyAssemble };

/// Positive map applied to Cholesky diagonals or clamped eigenvalues.
enum class DiagMap { Exp, Relu };

/// CLI names: square, fourth, exp, trunc2, trunc4, eigclamp.
std::optional<PsdMethod> parse_method(std::string_view name);
std::string_view method_name(PsdMethod m);

/// Every method that takes a symmetric matrix as input.
inline constexpr std::array<PsdMethod, 6> kMatrixMethods{PsdMethod::Square, PsdMethod::Fourth,    PsdMethod::Exp,
                                                         PsdMethod::TruncExp2, PsdMethod::TruncExp4,
                                                         PsdMethod::EigenClamp};

/// The maps that avoid an explicit eigendecomposition.
inline constexpr std::array<PsdMethod, 5> kEquivariantPowerMethods{PsdMethod::Square, PsdMethod::Fourth, PsdMethod::Exp,
                                                                   PsdMethod::TruncExp2, PsdMethod::TruncExp4};

/// Apply a matrix-input method. `clamp` selects the eigenvalue map for
/// EigenClamp and is ignored otherwise. Throws std::invalid_argument on
/// asymmetric input (tolerance 1e-10) or for CholeskyAssemble.
Mat6 project(const Mat6& m, PsdMethod method, DiagMap clamp = DiagMap::Relu);

ElasticTensor4 project(const ElasticTensor4& c, PsdMethod method, DiagMap clamp = DiagMap::Relu);

/// L L^T with L the row-major lower triangle of `params` and the diagonal
/// passed through `diag_map`.
Mat6 cholesky_assemble(const std::array<double, 21>& params, DiagMap diag_map);

/// ||project(R M R^T) - R project(M) R^T||_F / ||project(M)||_F
double equivariance_defect(PsdMethod method, const Mat6& m, const RotationPair& rp, DiagMap clamp = DiagMap::Relu);

/// Pack the lower triangle of a symmetric matrix row by row, matching the
/// layout `cholesky_assemble` reads.
std::array<double, 21> lower_triangle(const Mat6& m);
Mat6 symmetric_from_lower(const std::array<double, 21>& params);

/// Defect of the Cholesky route when its 21 inputs are the lower triangle of
/// a Mandel matrix that is rotated before assembly:
/// ||A(tri(R M R^T)) - R A(tri(M)) R^T||_F / ||A(tri(M))||_F.
double cholesky_equivariance_defect(const std::array<double, 21>& params, const RotationPair& rp, DiagMap diag_map);

/// Same defect for the matrix square computed on Voigt matrices rotated
/// with the (non-orthonormal) Voigt stress rule.
double voigt_square_defect(const ElasticTensor4& c, const Mat3& r);

}  // namespace latmech::psd
