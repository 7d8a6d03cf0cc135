#include "torsionlab/zlinalg.hpp"

namespace torsionlab {

namespace {

void row_axpy(MatZ& m, Index dst, Index src, const Int& q) {
  if (q == 0) return;
  for (Index j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void col_axpy(MatZ& m, Index dst, Index src, const Int& q) {
  if (q == 0) return;
  for (Index i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_row(MatZ& m, Index i) {
  for (Index j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

LatticeBasis make_lattice(MatZ basis, Index ambient) {
  LatticeBasis l;
  l.vol2 = gram_det2(basis);
  if (basis.rows() > 0 && l.vol2 == 0)
    throw Error("LatticeBasis: rows are not independent");
  l.basis = std::move(basis);
  l.ambient = ambient;
  return l;
}

}  // namespace

Int bareiss_det(MatZ m) {
  if (m.rows() != m.cols()) throw Error("bareiss_det: matrix not square");
  const Index n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index piv = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Int d = m(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

HermiteForm hermite_form(const MatZ& m) {
  HermiteForm hf;
  hf.H = m;
  hf.U = MatZ::Identity(m.rows(), m.rows());
  MatZ& H = hf.H;
  MatZ& U = hf.U;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    while (true) {
      Index piv = -1;
      for (Index i = row; i < m.rows(); ++i)
        if (H(i, col) != 0 && (piv < 0 || abs(H(i, col)) < abs(H(piv, col)))) piv = i;
      if (piv < 0) break;
      if (piv != row) {
        H.row(piv).swap(H.row(row));
        U.row(piv).swap(U.row(row));
      }
      bool clean = true;
      for (Index i = row + 1; i < m.rows(); ++i) {
        if (H(i, col) == 0) continue;
        Int q = round_div(H(i, col), H(row, col));
        row_axpy(H, i, row, q);
        row_axpy(U, i, row, q);
        if (H(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      negate_row(H, row);
      negate_row(U, row);
    }
    for (Index i = 0; i < row; ++i) {
      Int q = floor_div(H(i, col), H(row, col));
      row_axpy(H, i, row, q);
      row_axpy(U, i, row, q);
    }
    ++row;
  }
  hf.rank = row;
  return hf;
}

Index rank(const MatZ& m) { return hermite_form(m).rank; }

SmithTransforms smith_form_with_transforms(const MatZ& m) {
  const Index r = m.rows(), c = m.cols();
  MatZ A = m;
  MatZ U = MatZ::Identity(r, r);
  MatZ V = MatZ::Identity(c, c);

  auto swap_rows = [&](Index a, Index b) {
    A.row(a).swap(A.row(b));
    U.row(a).swap(U.row(b));
  };
  auto swap_cols = [&](Index a, Index b) {
    A.col(a).swap(A.col(b));
    V.col(a).swap(V.col(b));
  };

  Index t = 0;
  while (t < r && t < c) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < r; ++i)
      for (Index j = t; j < c; ++j)
        if (A(i, j) != 0 && (pi < 0 || abs(A(i, j)) < abs(A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) swap_rows(pi, t);
    if (pj != t) swap_cols(pj, t);

    while (true) {
      bool restart = false;
      for (Index i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Int q = round_div(A(i, t), A(t, t));
        row_axpy(A, i, t, q);
        row_axpy(U, i, t, q);
        if (A(i, t) != 0) {
          swap_rows(i, t);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (Index j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Int q = round_div(A(t, j), A(t, t));
        col_axpy(A, j, t, q);
        col_axpy(V, j, t, q);
        if (A(t, j) != 0) {
          swap_cols(j, t);
          restart = true;
          break;
        }
      }
      if (!restart) break;
    }
    if (A(t, t) < 0) {
      negate_row(A, t);
      negate_row(U, t);
    }
    ++t;
  }
  const Index rk = t;

  // Enforce the divisibility chain with 2x2 unimodular fixes on the diagonal.
  bool dirty = rk > 1;
  while (dirty) {
    dirty = false;
    for (Index k = 0; k + 1 < rk; ++k) {
      const Int a = A(k, k), b = A(k + 1, k + 1);
      if (b % a == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      const Int ag = a / g, bg = b / g;
      // P * diag(a,b) * Q = diag(g, lcm) with P = [[x,y],[-b/g,a/g]],
      // Q = [[1,-y*b/g],[1,x*a/g]]; apply P to U rows and Q to V columns.
      for (Index j = 0; j < U.cols(); ++j) {
        Int u0 = U(k, j), u1 = U(k + 1, j);
        U(k, j) = x * u0 + y * u1;
        U(k + 1, j) = ag * u1 - bg * u0;
      }
      for (Index i = 0; i < V.rows(); ++i) {
        Int v0 = V(i, k), v1 = V(i, k + 1);
        V(i, k) = v0 + v1;
        V(i, k + 1) = x * ag * v1 - y * bg * v0;
      }
      A(k, k) = g;
      A(k + 1, k + 1) = ag * b;
      dirty = true;
    }
  }

  SmithTransforms st;
  st.form.rank = rk;
  st.form.divisors.reserve(static_cast<size_t>(rk));
  for (Index k = 0; k < rk; ++k) st.form.divisors.push_back(A(k, k));
  st.U = std::move(U);
  st.V = std::move(V);
  return st;
}

SmithForm smith_form(MatZ m) { return smith_form_with_transforms(m).form; }

Int gram_det2(const MatZ& basis) {
  if (basis.rows() == 0) return 1;
  MatZ g = basis * basis.transpose();
  return bareiss_det(std::move(g));
}

LatticeBasis kernel_lattice(const MatZ& m) {
  HermiteForm hf = hermite_form(m);
  const Index k = m.rows() - hf.rank;
  return make_lattice(hf.U.bottomRows(k), m.rows());
}

LatticeBasis image_lattice(const MatZ& m) {
  HermiteForm hf = hermite_form(m);
  return make_lattice(hf.H.topRows(hf.rank), m.cols());
}

LatticeBasis saturate(const LatticeBasis& l) {
  if (l.basis.rows() == 0) return l;
  // Two column-kernel passes: the integer points of the Q-span of L are the
  // vectors orthogonal to everything orthogonal to L.
  LatticeBasis w = kernel_lattice(MatZ(l.basis.transpose()));
  LatticeBasis sat = kernel_lattice(MatZ(w.basis.transpose()));
  if (sat.basis.rows() != l.basis.rows())
    throw Error("saturate: rank changed, inconsistent input lattice");
  return sat;
}

Int saturation_index(const LatticeBasis& l, const LatticeBasis& sat) {
  if (sat.vol2 == 0) throw Error("saturation_index: degenerate lattice");
  Int q = l.vol2 / sat.vol2;
  if (q * sat.vol2 != l.vol2)
    throw Error("saturation_index: covolume ratio not integral");
  return exact_sqrt(q);
}

Int det_prime_squared(const MatZ& m) {
  HermiteForm hf = hermite_form(m);
  if (hf.rank == 0) return 1;
  Int vol2_im = gram_det2(hf.H.topRows(hf.rank));
  Int vol2_ker = gram_det2(hf.U.bottomRows(m.rows() - hf.rank));
  return vol2_im * vol2_ker;
}

CokernelSummary cokernel_summary(const MatZ& m) {
  SmithForm sf = smith_form(m);
  CokernelSummary s;
  for (const Int& d : sf.divisors) s.torsion *= d;
  s.free_rank = m.cols() - sf.rank;
  return s;
}

TorsionBoundReport torsion_bound_report(const MatZ& m) {
  TorsionBoundReport rep;
  rep.torsion = cokernel_summary(m).torsion;
  HermiteForm hf = hermite_form(m);
  rep.vol2_kernel = gram_det2(hf.U.bottomRows(m.rows() - hf.rank));
  rep.det2 = hf.rank == 0 ? Int(1) : rep.vol2_kernel * gram_det2(hf.H.topRows(hf.rank));
  Int t2 = rep.torsion * rep.torsion;
  rep.torsion_bound_ok = t2 <= rep.det2;
  rep.kernel_bound_ok = t2 * rep.vol2_kernel <= rep.det2;
  return rep;
}

}  // namespace torsionlab
