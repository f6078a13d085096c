#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "latmech/linalg.hpp"
#include "latmech/psd.hpp"
#include "support.hpp"

using namespace latmech;
using testing::brute_rotate;
using testing::random_tensor;

namespace {

ElasticTensor4 single(int i, int j, int k, int l, double v = 1.0) {
  Tensor4Array raw{};
  raw[t4_index(i, j, k, l)] = v;
  raw[t4_index(j, i, k, l)] = v;
  raw[t4_index(i, j, l, k)] = v;
  raw[t4_index(j, i, l, k)] = v;
  raw[t4_index(k, l, i, j)] = v;
  raw[t4_index(l, k, i, j)] = v;
  raw[t4_index(k, l, j, i)] = v;
  raw[t4_index(l, k, j, i)] = v;
  return symmetrize(raw);
}

const Mat3 kRz90 = (Mat3() << 0, -1, 0, 1, 0, 0, 0, 0, 1).finished();

}  // namespace

TEST_CASE("symmetrize is an idempotent projection with the expected orbit weights") {
  Tensor4Array raw{};
  raw[t4_index(0, 1, 0, 0)] = 1.0;
  const ElasticTensor4 c = symmetrize(raw);
  for (auto idx : {t4_index(0, 1, 0, 0), t4_index(1, 0, 0, 0), t4_index(0, 0, 0, 1), t4_index(0, 0, 1, 0)})
    CHECK(c.components()[idx] == 0.25);
  double total = 0.0;
  for (double v : c.components()) total += v;
  CHECK(total == doctest::Approx(1.0));

  CHECK(symmetrize(c.components()) == c);
  CHECK(symmetrize(Tensor4Array{}) == ElasticTensor4::zero());

  const CounterRng rng(11);
  Tensor4Array noise;
  for (std::size_t n = 0; n < noise.size(); ++n) noise[n] = rng.normal(n);
  const ElasticTensor4 s = symmetrize(noise);
  CHECK(symmetrize(s.components()) == s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          CHECK(s(i, j, k, l) == s(j, i, k, l));
          CHECK(s(i, j, k, l) == s(i, j, l, k));
          CHECK(s(i, j, k, l) == s(k, l, i, j));
        }
}

TEST_CASE("symmetric subspace has 21 dimensions") {
  // Rank of the projection, from its 81x81 matrix.
  Eigen::MatrixXd p(81, 81);
  for (int n = 0; n < 81; ++n) {
    Tensor4Array e{};
    e[n] = 1.0;
    const auto col = symmetrize(e).components();
    for (int m = 0; m < 81; ++m) p(m, n) = col[m];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
  CHECK(lu.rank() == 21);
}

TEST_CASE("symmetrize rejects non-finite input") {
  Tensor4Array raw{};
  raw[5] = NAN;
  CHECK_THROWS_AS(symmetrize(raw), std::invalid_argument);
  raw[5] = INFINITY;
  CHECK_THROWS_AS(symmetrize(raw), std::invalid_argument);
}

TEST_CASE("Mandel layout") {
  const Mat6 iso = to_mandel(ElasticTensor4::isotropic(1.0, 1.0)).matrix();
  CHECK(iso(0, 0) == 3.0);
  CHECK(iso(0, 1) == 1.0);
  CHECK(iso(3, 3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(iso(0, 3) == 0.0);

  CHECK(to_mandel(ElasticTensor4::zero()).matrix().isZero(0.0));

  const Mat6 shear = to_mandel(single(1, 2, 1, 2)).matrix();
  CHECK(shear(3, 3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(shear.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-15));

  // Mixed block carries sqrt(2).
  const Mat6 mixed = to_mandel(single(0, 0, 1, 2)).matrix();
  CHECK(mixed(0, 3) == doctest::Approx(std::sqrt(2.0)));
  CHECK(mixed(3, 0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("Voigt layout") {
  CHECK(to_voigt(single(1, 2, 1, 2)).entries(3, 3) == 1.0);
  CHECK(to_voigt(ElasticTensor4::zero()).entries.isZero(0.0));
  const Mat6 iso = to_voigt(ElasticTensor4::isotropic(1.0, 1.0)).entries;
  CHECK(iso(3, 3) == 1.0);
  CHECK(iso(0, 0) == 3.0);
  const Mat6 v = to_voigt(random_tensor(CounterRng(3), 0)).entries;
  CHECK((v - v.transpose()).norm() == 0.0);
}

TEST_CASE("Mandel round trips") {
  const CounterRng rng(21);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ElasticTensor4 c = random_tensor(rng, s);
    const ElasticTensor4 back = from_mandel(to_mandel(c));
    CHECK(testing::array_distance(back.components(), c.components()) <= 1e-14 * c.frobenius_norm());
    const MandelMatrix m(testing::random_symmetric(rng, 1000 + s));
    CHECK((to_mandel(from_mandel(m)).matrix() - m.matrix()).norm() <= 1e-14 * m.matrix().norm());
  }
  CHECK(from_mandel(MandelMatrix()) == ElasticTensor4::zero());

  const ElasticTensor4 id = from_mandel(MandelMatrix(Mat6::Identity()));
  for (int k = 0; k < 3; ++k) CHECK(directional_modulus(id, Vec3::Unit(k)) == doctest::Approx(1.0));
}

TEST_CASE("from_mandel rejects asymmetric matrices") {
  Mat6 m = Mat6::Identity();
  m(0, 4) = 1e-6;
  CHECK_THROWS_AS(from_mandel(m), std::invalid_argument);
  m(0, 4) = 1e-12;
  CHECK_NOTHROW(from_mandel(m));
}

TEST_CASE("strain Mandel vectors preserve the norm") {
  const CounterRng rng(5);
  for (std::uint64_t s = 0; s < 100; ++s) {
    Mat3 e;
    for (int i = 0; i < 9; ++i) e(i / 3, i % 3) = rng.normal(s * 9 + i);
    e = 0.5 * (e + e.transpose()).eval();
    const Vec6 v = strain_to_mandel(e);
    CHECK(v.squaredNorm() == doctest::Approx((e.array() * e.array()).sum()).epsilon(1e-14));
    CHECK((mandel_to_strain(v) - e).norm() < 1e-15);
  }
}

TEST_CASE("mandel_rotation matches the literal block matrix") {
  CHECK((mandel_rotation(Mat3::Identity()).r_mandel - Mat6::Identity()).norm() == 0.0);
  const CounterRng rng(8);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Mat3 r = rng.rotation(s);
    const Mat6 rm = mandel_rotation(r).r_mandel;
    CHECK((rm - testing::literal_mandel_rotation(r)).norm() < 1e-15);
    CHECK((rm.transpose() * rm - Mat6::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("90 degree rotation about z permutes slots with signs") {
  const Mat6 rm = mandel_rotation(kRz90).r_mandel;
  Mat6 expect = Mat6::Zero();
  expect(0, 1) = 1;   // new 11 from old 22
  expect(1, 0) = 1;   // new 22 from old 11
  expect(2, 2) = 1;
  expect(3, 4) = 1;   // new 23 = old 13
  expect(4, 3) = -1;  // new 13 = -old 23
  expect(5, 5) = -1;  // new 12 = -old 12
  CHECK((rm - expect).norm() < 1e-15);
}

TEST_CASE("check_rotation reports the defect") {
  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 1.001;
  CHECK_THROWS_WITH_AS(check_rotation(bad), doctest::Contains("||R^T R - I||"), std::invalid_argument);
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1;
  CHECK_THROWS_AS(mandel_rotation(reflection), std::invalid_argument);
  CHECK_THROWS_AS(rotate(ElasticTensor4::zero(), bad), std::invalid_argument);
}

TEST_CASE("rotate agrees with the full index contraction") {
  const CounterRng rng(13);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ElasticTensor4 c = random_tensor(rng, s);
    const Mat3 r = rng.rotation(100 + s);
    CHECK(testing::array_distance(rotate(c, r).components(), brute_rotate(c, r)) < 1e-13 * c.frobenius_norm());
  }
}

TEST_CASE("rotation leaves symmetric tensors invariant where it should") {
  const ElasticTensor4 iso = ElasticTensor4::isotropic(1.3, 0.7);
  const CounterRng rng(2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Mat3 r = rng.rotation(s);
    CHECK(testing::array_distance(rotate(iso, r).components(), iso.components()) < 1e-12);
    const MandelMatrix m = rotate_mandel(to_mandel(iso), mandel_rotation(r));
    CHECK((m.matrix() - to_mandel(iso).matrix()).norm() < 1e-12);
  }
  CHECK(rotate(iso, Mat3::Identity()) == iso);

  const ElasticTensor4 cub = ElasticTensor4::cubic(2.0, 0.7, 0.4);
  CHECK(testing::array_distance(brute_rotate(cub, kRz90), cub.components()) < 1e-15);
  CHECK(testing::array_distance(rotate(cub, kRz90).components(), cub.components()) < 1e-15);
}

TEST_CASE("Cartesian and Mandel rotation paths commute") {
  const CounterRng rng(17);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ElasticTensor4 c = random_tensor(rng, s);
    const Mat3 r = rng.rotation(500 + s);
    const Mat6 cart = to_mandel(rotate(c, r)).matrix();
    const Mat6 mand = rotate_mandel(to_mandel(c), mandel_rotation(r)).matrix();
    CHECK(testing::relative(mand, cart) < 1e-10);
  }
  const MandelMatrix m(testing::random_symmetric(rng, 77));
  CHECK(rotate_mandel(m, mandel_rotation(Mat3::Identity())) == m);
}

TEST_CASE("Voigt rotation rule is consistent but not orthonormal") {
  const CounterRng rng(19);
  const ElasticTensor4 c = random_tensor(rng, 0);
  const Mat3 r = rng.rotation(1);
  const Mat6 via_cart = to_voigt(rotate(c, r)).entries;
  CHECK((rotate_voigt(to_voigt(c).entries, r) - via_cart).norm() < 1e-12 * via_cart.norm());
  const Mat6 rs = voigt_stress_rotation(r);
  CHECK((rs.inverse() - voigt_strain_rotation(r).transpose()).norm() < 1e-12);
  CHECK((rs.transpose() * rs - Mat6::Identity()).norm() > 1e-2);
}

TEST_CASE("directional modulus") {
  const ElasticTensor4 iso = ElasticTensor4::isotropic(1.0, 1.0);
  const CounterRng rng(4);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(directional_modulus(iso, rng.unit_vector(s)) == doctest::Approx(3.0));
  CHECK(directional_modulus(ElasticTensor4::zero(), Vec3::UnitX()) == 0.0);
  CHECK(directional_modulus(single(0, 0, 0, 0), Vec3::UnitX()) == 1.0);
  CHECK_THROWS_AS(directional_modulus(iso, Vec3(1.0, 1e-3, 0.0)), std::invalid_argument);
}

TEST_CASE("strain energy") {
  const ElasticTensor4 iso = ElasticTensor4::isotropic(1.0, 1.0);
  CHECK(strain_energy(iso, Mat3::Zero()) == 0.0);
  Mat3 shear = Mat3::Zero();
  shear(0, 1) = shear(1, 0) = 0.5;
  CHECK(strain_energy(iso, shear) == doctest::Approx(0.5));
  Mat3 asym = Mat3::Zero();
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(strain_energy(iso, asym), std::invalid_argument);

  const CounterRng rng(23);
  const ElasticTensor4 c = random_tensor(rng, 0);
  const ElasticTensor4 psd_c = psd::project(c, psd::PsdMethod::Square);
  const Mat6 m = to_mandel(c).matrix();
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Mat3 e;
    for (int i = 0; i < 9; ++i) e(i / 3, i % 3) = rng.normal(100 + s * 9 + i);
    e = 0.5 * (e + e.transpose()).eval();
    const Vec6 v = strain_to_mandel(e);
    CHECK(strain_energy(c, e) == doctest::Approx(0.5 * v.dot(m * v)).epsilon(1e-12));
    CHECK(strain_energy(psd_c, e) >= -1e-12);
  }
}

TEST_CASE("Kelvin spectrum of the isotropic tensor") {
  const auto s = kelvin_spectrum(ElasticTensor4::isotropic(1.0, 1.0));
  CHECK(s.eigenvalues(0) == doctest::Approx(5.0).epsilon(1e-12));
  for (int k = 1; k < 6; ++k) CHECK(std::abs(s.eigenvalues(k) - 2.0) < 1e-10);
  // Dominant eigentensor is the normalised identity.
  const Mat3 e0 = s.eigentensors[0];
  CHECK((e0.cwiseAbs() - Mat3::Identity() / std::sqrt(3.0)).norm() < 1e-10);

  const auto z = kelvin_spectrum(ElasticTensor4::zero());
  CHECK(z.eigenvalues.isZero(0.0));

  const auto g = kelvin_spectrum(ElasticTensor4::isotropic(2.0, 0.5));
  CHECK(g.eigenvalues(0) == doctest::Approx(3 * 2.0 + 2 * 0.5));
}

TEST_CASE("Kelvin spectrum against an independent solver") {
  const CounterRng rng(29);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ElasticTensor4 c = random_tensor(rng, s);
    const auto spec = kelvin_spectrum(c);
    Eigen::SelfAdjointEigenSolver<Mat6> ref(to_mandel(c).matrix());
    Vec6 expect = ref.eigenvalues().reverse();
    CHECK((spec.eigenvalues - expect).norm() < 1e-10 * expect.norm());

    for (int a = 0; a < 6; ++a) {
      const Mat3& ea = spec.eigentensors[a];
      CHECK((ea - ea.transpose()).norm() == 0.0);
      for (int b = 0; b < 6; ++b) {
        const double dot = (ea.array() * spec.eigentensors[b].array()).sum();
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
      }
      CHECK((double_contract(c, ea) - spec.eigenvalues(a) * ea).norm() < 1e-9);
    }
    const ElasticTensor4 back = kelvin_reconstruct(spec);
    CHECK(testing::array_distance(back.components(), c.components()) < 1e-9);
  }
}

TEST_CASE("Jacobi solver on a diagonal and a degenerate matrix") {
  Vec6 d;
  d << 3, -1, 4, 1, -5, 9;
  const auto e = linalg::jacobi_eigen(d.asDiagonal());
  Vec6 sorted;
  sorted << 9, 4, 3, 1, -1, -5;
  CHECK(e.values == sorted);
  const auto id = linalg::jacobi_eigen(Mat6::Identity());
  CHECK((id.vectors.transpose() * id.vectors - Mat6::Identity()).norm() < 1e-14);
}
