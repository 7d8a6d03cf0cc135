#include "doctest.h"

#include "torsionlab/zlinalg.hpp"

#include <random>

using namespace torsionlab;

namespace {

MatZ rand_mat(std::mt19937_64& rng, Index r, Index c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  MatZ m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_zero(const MatZ& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("bareiss determinant") {
  MatZ d(2, 2);
  d << 2, 0, 0, 3;
  CHECK(bareiss_det(d) == 6);

  MatZ swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(bareiss_det(swap) == -1);

  CHECK(bareiss_det(MatZ(0, 0)) == 1);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const MatZ a = rand_mat(rng, 4, 4, 6);
    const MatZ b = rand_mat(rng, 4, 4, 6);
    const Int prod = bareiss_det(a) * bareiss_det(b);
    CHECK(bareiss_det(a * b) == prod);
    CHECK(bareiss_det(a.transpose()) == bareiss_det(a));
  }
}

TEST_CASE("smith form") {
  MatZ d(2, 2);
  d << 2, 0, 0, 3;
  const SmithForm sf = smith_form(d);
  CHECK(sf.divisors == std::vector<Int>{1, 6});
  CHECK(sf.rank == 2);
  CHECK(det_prime_squared(d) == 36);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const MatZ m = rand_mat(rng, 3, 4, 8);
    const SmithTransforms st = smith_form_with_transforms(m);
    Int du = bareiss_det(st.U), dv = bareiss_det(st.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    const MatZ umv = st.U * m * st.V;
    for (Index i = 0; i < umv.rows(); ++i)
      for (Index j = 0; j < umv.cols(); ++j) {
        const Int want = (i == j && i < st.form.rank)
                             ? st.form.divisors[static_cast<size_t>(i)]
                             : Int(0);
        CHECK(umv(i, j) == want);
      }
    for (size_t k = 1; k < st.form.divisors.size(); ++k)
      CHECK(st.form.divisors[k] % st.form.divisors[k - 1] == 0);

    // Invariance under unimodular row and column operations.
    MatZ m2 = m;
    for (Index j = 0; j < m2.cols(); ++j) m2(0, j) += 3 * m2(2, j);
    for (Index i = 0; i < m2.rows(); ++i) m2(i, 1) -= 2 * m2(i, 3);
    CHECK(smith_form(m2).divisors == st.form.divisors);
  }
}

TEST_CASE("hermite form and kernel") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const MatZ m = rand_mat(rng, 4, 3, 7);
    const HermiteForm hf = hermite_form(m);
    Int du = bareiss_det(hf.U);
    CHECK((du == 1 || du == -1));
    CHECK(hf.U * m == hf.H);
    CHECK(hf.rank == rank(m));
    for (Index i = hf.rank; i < hf.H.rows(); ++i)
      for (Index j = 0; j < hf.H.cols(); ++j) CHECK(hf.H(i, j) == 0);

    const LatticeBasis ker = kernel_lattice(m);
    CHECK(ker.ambient == m.rows());
    CHECK(ker.basis.rows() == m.rows() - rank(m));
    CHECK(is_zero(ker.basis * m));
    CHECK(ker.vol2 == gram_det2(ker.basis));
  }

  MatZ col(2, 1);
  col << 1, -1;
  const LatticeBasis ker = kernel_lattice(col);
  REQUIRE(ker.basis.rows() == 1);
  const Int prod = ker.basis(0, 0) * ker.basis(0, 1);
  CHECK(prod == 1);
  CHECK(ker.vol2 == 2);
}

TEST_CASE("saturation") {
  LatticeBasis l;
  l.ambient = 2;
  l.basis = MatZ(1, 2);
  l.basis << 2, 0;
  l.vol2 = gram_det2(l.basis);
  LatticeBasis sat = saturate(l);
  CHECK(sat.basis.rows() == 1);
  CHECK(sat.vol2 == 1);
  CHECK(saturation_index(l, sat) == 2);

  l.basis << 2, 2;
  l.vol2 = gram_det2(l.basis);
  CHECK(l.vol2 == 8);
  sat = saturate(l);
  CHECK(sat.vol2 == 2);
  CHECK(saturation_index(l, sat) == 2);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const MatZ m = rand_mat(rng, 3, 5, 6);
    const LatticeBasis im = image_lattice(m);
    CHECK(im.vol2 == gram_det2(im.basis));
    const LatticeBasis s = saturate(im);
    CHECK(s.basis.rows() == im.basis.rows());
    const Int idx = saturation_index(im, s);
    const Int idx2vol = idx * idx * s.vol2;
    CHECK(idx2vol == im.vol2);
    const LatticeBasis ss = saturate(s);
    CHECK(saturation_index(s, ss) == 1);
    CHECK(ss.vol2 == s.vol2);

    // Doubling the matrix scales the image Gram determinant by 4^rank.
    const LatticeBasis im2 = image_lattice(MatZ(m + m));
    Int scale = 1;
    for (Index i = 0; i < im.basis.rows(); ++i) scale *= 4;
    const Int scaled = scale * im.vol2;
    CHECK(im2.vol2 == scaled);
  }
}

TEST_CASE("modified determinant") {
  MatZ perm(3, 3);
  perm << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(det_prime_squared(perm) == 1);

  CHECK(det_prime_squared(MatZ::Zero(2, 3)) == 1);

  MatZ col(2, 1);
  col << 1, -1;
  CHECK(det_prime_squared(col) == 2);  // vol2(ker) = 2, vol2(im) = 1

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const MatZ m = rand_mat(rng, 4, 4, 5);
    const Int direct = det_prime_squared(m);
    CHECK(direct == kernel_lattice(m).vol2 * image_lattice(m).vol2);
    if (rank(m) == 4) {
      const Int det = bareiss_det(m);
      const Int det2 = det * det;
      CHECK(direct == det2);
    }
  }
}

TEST_CASE("cokernel and torsion bounds") {
  MatZ two(1, 1);
  two << 2;
  CokernelSummary cs = cokernel_summary(two);
  CHECK(cs.torsion == 2);
  CHECK(cs.free_rank == 0);

  cs = cokernel_summary(MatZ::Zero(1, 1));
  CHECK(cs.torsion == 1);
  CHECK(cs.free_rank == 1);

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const MatZ m = rand_mat(rng, 3, 4, 6);
    const TorsionBoundReport rep = torsion_bound_report(m);
    CHECK(rep.det2 == det_prime_squared(m));
    CHECK(rep.vol2_kernel == kernel_lattice(m).vol2);
    Int divprod = 1;
    for (const Int& d : smith_form(m).divisors) divprod *= d;
    CHECK(rep.torsion == divprod);
    CHECK(rep.torsion_bound_ok);
    CHECK(rep.kernel_bound_ok);
    const Int t2 = rep.torsion * rep.torsion;
    const Int t2ker = t2 * rep.vol2_kernel;
    CHECK(t2 <= rep.det2);
    CHECK(t2ker <= rep.det2);

    const CokernelSummary sum = cokernel_summary(m);
    CHECK(sum.free_rank == m.cols() - rank(m));
  }
}
