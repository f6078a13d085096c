#include "latmech/psd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "latmech/linalg.hpp"

namespace latmech::psd {

namespace {

void require_symmetric(const Mat6& m) {
  if (!m.allFinite()) throw std::invalid_argument("psd: non-finite input");
  const double defect = linalg::asymmetry(m);
  if (!(defect <= 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))) {
    std::ostringstream msg;
    msg << "psd: input is not symmetric (max |M - M^T| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
}

double apply_map(double x, DiagMap map) { return map == DiagMap::Exp ? std::exp(x) : std::max(x, 0.0); }

Mat6 eigen_clamp(const Mat6& m, DiagMap map) {
  const auto eig = linalg::jacobi_eigen(m);
  Vec6 mapped;
  for (int k = 0; k < 6; ++k) mapped(k) = apply_map(eig.values(k), map);
  const Mat6 out = eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

std::optional<PsdMethod> parse_method(std::string_view name) {
  if (name == "square") return PsdMethod::Square;
  if (name == "fourth") return PsdMethod::Fourth;
  if (name == "exp") return PsdMethod::Exp;
  if (name == "trunc2") return PsdMethod::TruncExp2;
  if (name == "trunc4") return PsdMethod::TruncExp4;
  if (name == "eigclamp") return PsdMethod::EigenClamp;
  return std::nullopt;
}

std::string_view method_name(PsdMethod m) {
  switch (m) {
    case PsdMethod::Square: return "square";
    case PsdMethod::Fourth: return "fourth";
    case PsdMethod::Exp: return "exp";
    case PsdMethod::TruncExp2: return "trunc2";
    case PsdMethod::TruncExp4: return "trunc4";
    case PsdMethod::EigenClamp: return "eigclamp";
    case PsdMethod::CholeskyAssemble: return "cholesky";
  }
  return "?";
}

Mat6 project(const Mat6& m_in, PsdMethod method, DiagMap clamp) {
  require_symmetric(m_in);
  const Mat6 m = 0.5 * (m_in + m_in.transpose());
  using linalg::symmetric_product;
  switch (method) {
    case PsdMethod::Square: return symmetric_product(m, m);
    case PsdMethod::Fourth: {
      const Mat6 sq = symmetric_product(m, m);
      return symmetric_product(sq, sq);
    }
    case PsdMethod::Exp: return linalg::expm(m);
    case PsdMethod::TruncExp2: {
      const Mat6 b = Mat6::Identity() + 0.5 * m;
      return symmetric_product(b, b);
    }
    case PsdMethod::TruncExp4: {
      const Mat6 b = Mat6::Identity() + 0.25 * m;
      const Mat6 b2 = symmetric_product(b, b);
      return symmetric_product(b2, b2);
    }
    case PsdMethod::EigenClamp: return eigen_clamp(m, clamp);
    case PsdMethod::CholeskyAssemble:
      throw std::invalid_argument("psd: cholesky assembly takes 21 parameters, not a matrix");
  }
  throw std::invalid_argument("psd: unknown method");
}

ElasticTensor4 project(const ElasticTensor4& c, PsdMethod method, DiagMap clamp) {
  return from_mandel(MandelMatrix(project(to_mandel(c).matrix(), method, clamp)));
}

Mat6 cholesky_assemble(const std::array<double, 21>& params, DiagMap diag_map) {
  Mat6 l = Mat6::Zero();
  int n = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j, ++n) l(i, j) = i == j ? apply_map(params[n], diag_map) : params[n];
  Mat6 out;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      const double s = l.row(i).dot(l.row(j));
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

double equivariance_defect(PsdMethod method, const Mat6& m, const RotationPair& rp, DiagMap clamp) {
  const Mat6& rm = rp.r_mandel;
  const Mat6 base = project(m, method, clamp);
  Mat6 rotated_in = rm * m * rm.transpose();
  rotated_in = 0.5 * (rotated_in + rotated_in.transpose());
  const Mat6 lhs = project(rotated_in, method, clamp);
  const Mat6 rhs = rm * base * rm.transpose();
  const double denom = base.norm();
  if (denom == 0.0) return (lhs - rhs).norm();
  return (lhs - rhs).norm() / denom;
}

std::array<double, 21> lower_triangle(const Mat6& m) {
  std::array<double, 21> out{};
  int n = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j) out[n++] = m(i, j);
  return out;
}

Mat6 symmetric_from_lower(const std::array<double, 21>& params) {
  Mat6 m;
  int n = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j, ++n) {
      m(i, j) = params[n];
      m(j, i) = params[n];
    }
  return m;
}

double cholesky_equivariance_defect(const std::array<double, 21>& params, const RotationPair& rp, DiagMap diag_map) {
  const Mat6& rm = rp.r_mandel;
  const Mat6 base = cholesky_assemble(params, diag_map);
  const Mat6 rotated_params = rm * symmetric_from_lower(params) * rm.transpose();
  const Mat6 lhs = cholesky_assemble(lower_triangle(rotated_params), diag_map);
  const Mat6 rhs = rm * base * rm.transpose();
  return (lhs - rhs).norm() / base.norm();
}

double voigt_square_defect(const ElasticTensor4& c, const Mat3& r) {
  const Mat6 v = to_voigt(c).entries;
  const Mat6 base = v * v;
  const Mat6 lhs = rotate_voigt(v, r) * rotate_voigt(v, r);
  const Mat6 rhs = rotate_voigt(base, r);
  return (lhs - rhs).norm() / base.norm();
}

}  // namespace latmech::psd
