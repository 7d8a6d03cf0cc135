#include "torsionlab/complexes.hpp"

#include <algorithm>

namespace torsionlab {

MatZ induce_matrix(const GroupRingMatrix& b, const CosetTable& t) {
  const Index n = t.index;
  MatZ out = MatZ::Zero(b.rows() * n, b.cols() * n);
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (const auto& [w, c] : b(i, j).terms()) {
        const std::vector<int> act = word_action(t, w);
        for (Index s = 0; s < n; ++s)
          out(i * n + s, j * n + act[static_cast<size_t>(s)]) += c;
      }
  return out;
}

ChainComplex make_chain_complex(std::vector<Index> dims, std::vector<MatZ> boundaries) {
  if (dims.empty()) throw Error("ChainComplex: no degrees");
  if (boundaries.size() + 1 != dims.size())
    throw Error("ChainComplex: need one boundary per adjacent degree pair");
  for (size_t k = 0; k < boundaries.size(); ++k) {
    if (dims[k] < 0) throw Error("ChainComplex: negative dimension");
    if (boundaries[k].rows() != dims[k + 1] || boundaries[k].cols() != dims[k])
      throw Error("ChainComplex: boundary shape mismatch");
  }
  for (size_t k = 0; k + 1 < boundaries.size(); ++k) {
    MatZ comp = boundaries[k + 1] * boundaries[k];
    for (Index i = 0; i < comp.rows(); ++i)
      for (Index j = 0; j < comp.cols(); ++j)
        if (comp(i, j) != 0)
          throw Error("ChainComplex: consecutive boundaries do not compose to zero");
  }
  ChainComplex c;
  c.dims = std::move(dims);
  c.boundaries = std::move(boundaries);
  return c;
}

ChainComplex cover_complex(const GroupPresentation& p, const CosetTable& t) {
  if (static_cast<Index>(t.perms.size()) != p.rank())
    throw Error("cover_complex: table generator count mismatch");
  if (!kills_relators(t, p))
    throw Error("cover_complex: table does not kill the relators");
  const BoundaryMaps maps = boundary_matrices(p);
  const Index n = t.index;
  std::vector<Index> dims = {n, p.rank() * n,
                             static_cast<Index>(p.relators.size()) * n};
  std::vector<MatZ> boundaries = {induce_matrix(maps.d1, t),
                                  induce_matrix(maps.d2, t)};
  if (maps.d3) {
    dims.push_back(n);
    boundaries.push_back(induce_matrix(*maps.d3, t));
  }
  const CokernelSummary h0 = cokernel_summary(boundaries[0]);
  if (h0.torsion != 1 || h0.free_rank != 1)
    throw Error("cover_complex: H_0 is not infinite cyclic");
  return make_chain_complex(std::move(dims), std::move(boundaries));
}

HomologySummary homology(const ChainComplex& c) {
  const Index top = c.top();
  HomologySummary h;
  h.betti.resize(static_cast<size_t>(top) + 1);
  h.torsion.assign(static_cast<size_t>(top) + 1, Int(1));
  std::vector<Index> rk(static_cast<size_t>(top) + 2, 0);
  for (Index k = 1; k <= top; ++k)
    rk[static_cast<size_t>(k)] = rank(c.boundaries[static_cast<size_t>(k - 1)]);
  for (Index k = 0; k <= top; ++k) {
    h.betti[static_cast<size_t>(k)] = c.dims[static_cast<size_t>(k)] -
                                      rk[static_cast<size_t>(k)] -
                                      rk[static_cast<size_t>(k) + 1];
    if (k < top) {
      const SmithForm sf = smith_form(c.boundaries[static_cast<size_t>(k)]);
      for (const Int& d : sf.divisors) h.torsion[static_cast<size_t>(k)] *= d;
    }
  }
  return h;
}

Int circle_det(const std::vector<int>& perm) {
  Int out = 1;
  for (const auto& [len, cnt] : cycle_type(perm).counts)
    for (Index i = 0; i < cnt; ++i) out *= len;
  return out;
}

namespace {

ConnectingMap make_connecting(const MatZ& jg, const MatZ& cg) {
  ConnectingMap cm;
  cm.domain = kernel_lattice(jg);
  cm.matrix = cm.domain.basis * cg;
  cm.rank = rank(cm.matrix);
  if (cm.domain.basis.rows() == 0) {
    cm.det2 = 1;
    return cm;
  }
  const LatticeBasis ker = kernel_lattice(cm.matrix);
  const MatZ embedded = ker.basis * cm.domain.basis;
  const Int vol2_ker = gram_det2(embedded);
  const Int vol2_im = image_lattice(cm.matrix).vol2;
  cm.det2 = Rat(vol2_ker * vol2_im) / Rat(cm.domain.vol2);
  cm.det2.canonicalize();
  return cm;
}

}  // namespace

ConnectingMap connecting_map(const GroupPresentation& p, const CosetTable& t) {
  const ReducedJacobian rj = reduced_jacobian(p);
  return make_connecting(induce_matrix(rj.J, t), induce_matrix(rj.c, t));
}

CoverInequalityReport cover_inequality_report(const GroupPresentation& p,
                                              const CosetTable& t) {
  const ChainComplex cc = cover_complex(p, t);
  const HomologySummary h = homology(cc);
  const ReducedJacobian rj = reduced_jacobian(p);
  const MatZ jg = induce_matrix(rj.J, t);
  const ConnectingMap cm = make_connecting(jg, induce_matrix(rj.c, t));
  CoverInequalityReport rep;
  rep.index = t.index;
  rep.b1 = h.betti[1];
  rep.t1 = h.torsion[1];
  rep.det2_jacobian = det_prime_squared(jg);
  rep.det2_beta = cm.det2;
  rep.ok = Rat(rep.t1 * rep.t1) <= rep.det2_beta * Rat(rep.det2_jacobian);
  return rep;
}

BranchedHomology branched_homology(const GroupPresentation& p, const CosetTable& t) {
  if (!p.meridian)
    throw Error("branched_homology: presentation has no declared meridian");
  const ReducedJacobian rj = reduced_jacobian(p);
  const CokernelSummary s = cokernel_summary(induce_matrix(rj.J, t));
  return BranchedHomology{s.torsion, s.free_rank};
}

TorsionReport torsion_report(const ChainComplex& c) {
  const Index top = c.top();
  TorsionReport rep;
  rep.betti.resize(static_cast<size_t>(top) + 1);
  rep.torsion.assign(static_cast<size_t>(top) + 1, Int(1));
  rep.regulator2.resize(static_cast<size_t>(top) + 1);
  rep.det2.resize(static_cast<size_t>(top));

  std::vector<Index> rk(static_cast<size_t>(top) + 2, 0);
  std::vector<Int> ker_vol2(static_cast<size_t>(top) + 1, Int(1));
  std::vector<Int> sat_vol2(static_cast<size_t>(top) + 1, Int(1));
  for (Index k = 1; k <= top; ++k) {
    const MatZ& d = c.boundaries[static_cast<size_t>(k - 1)];
    const HermiteForm hf = hermite_form(d);
    rk[static_cast<size_t>(k)] = hf.rank;
    const Int vker = gram_det2(hf.U.bottomRows(d.rows() - hf.rank));
    ker_vol2[static_cast<size_t>(k)] = vker;
    rep.det2[static_cast<size_t>(k - 1)] =
        hf.rank == 0 ? Int(1) : Int(vker * gram_det2(hf.H.topRows(hf.rank)));
    if (hf.rank > 0) {
      LatticeBasis im;
      im.basis = hf.H.topRows(hf.rank);
      im.ambient = d.cols();
      im.vol2 = gram_det2(im.basis);
      sat_vol2[static_cast<size_t>(k - 1)] = saturate(im).vol2;
    }
    const SmithForm sf = smith_form(d);
    for (const Int& dd : sf.divisors) rep.torsion[static_cast<size_t>(k - 1)] *= dd;
  }

  rep.tau_rs2 = 1;
  rep.tau_h2 = 1;
  rep.reg2 = 1;
  for (Index k = 0; k <= top; ++k) {
    rep.betti[static_cast<size_t>(k)] = c.dims[static_cast<size_t>(k)] -
                                        rk[static_cast<size_t>(k)] -
                                        rk[static_cast<size_t>(k) + 1];
    Rat r2 = Rat(ker_vol2[static_cast<size_t>(k)]) / Rat(sat_vol2[static_cast<size_t>(k)]);
    r2.canonicalize();
    rep.regulator2[static_cast<size_t>(k)] = r2;
    const bool even = k % 2 == 0;
    const Rat t2 = Rat(rep.torsion[static_cast<size_t>(k)] *
                       rep.torsion[static_cast<size_t>(k)]);
    // tau_h carries inverted alternating torsion, regulators alternate plain.
    if (even) {
      rep.tau_h2 /= t2;
      rep.reg2 *= r2;
    } else {
      rep.tau_h2 *= t2;
      rep.reg2 /= r2;
    }
    if (k >= 1) {
      const Rat d2 = Rat(rep.det2[static_cast<size_t>(k - 1)]);
      if (even)
        rep.tau_rs2 *= d2;
      else
        rep.tau_rs2 /= d2;
    }
    if (rep.betti[static_cast<size_t>(k)] == 0 && r2 != 1)
      throw Error("torsion_report: acyclic degree with nontrivial regulator");
  }
  rep.tau_rs2.canonicalize();
  rep.tau_h2.canonicalize();
  rep.reg2.canonicalize();
  if (rep.tau_rs2 != rep.tau_h2 * rep.reg2)
    throw Error("torsion_report: determinant-torsion-regulator identity failed");
  return rep;
}

ClosedCoverReport closed_cover_report(const GroupPresentation& p, const CosetTable& t) {
  if (shape(p) != PresentationShape::Closed)
    throw Error("closed_cover_report: closed shape required");
  const ChainComplex cc = cover_complex(p, t);
  ClosedCoverReport rep;
  rep.index = t.index;
  rep.torsion = torsion_report(cc);
  const BoundaryMaps maps = boundary_matrices(p);
  const Index n = p.rank() - 1;
  rep.det2_jacobian = det_prime_squared(induce_matrix(maps.d2.block(0, 0, n, n), t));
  GroupRingMatrix last_gen(1, 1), last_dual(1, 1);
  last_gen(0, 0) = GroupRingElement::one() -
                   GroupRingElement::of_word(Word::generator(static_cast<int>(n)));
  last_dual(0, 0) = GroupRingElement::one() -
                    GroupRingElement::of_word(p.duals[static_cast<size_t>(n)]);
  rep.det2_one_minus_a = det_prime_squared(induce_matrix(last_gen, t));
  rep.det2_one_minus_b = det_prime_squared(induce_matrix(last_dual, t));
  rep.rhs2 = Rat(rep.det2_jacobian) /
             Rat(rep.det2_one_minus_a * rep.det2_one_minus_b);
  rep.rhs2.canonicalize();
  rep.ratio2 = rep.torsion.tau_rs2 / rep.rhs2;
  rep.ratio2.canonicalize();
  return rep;
}

ChainComplex random_chain_complex(std::mt19937_64& rng, Index top_degree,
                                  Index max_dim, long coeff_bound) {
  if (top_degree < 1) throw Error("random_chain_complex: need at least degree 1");
  std::uniform_int_distribution<Index> dim_dist(0, max_dim);
  std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
  std::vector<Index> dims(static_cast<size_t>(top_degree) + 1);
  for (Index& d : dims) d = dim_dist(rng);
  std::vector<MatZ> boundaries(static_cast<size_t>(top_degree));

  MatZ dtop(dims[static_cast<size_t>(top_degree)],
            dims[static_cast<size_t>(top_degree) - 1]);
  for (Index i = 0; i < dtop.rows(); ++i)
    for (Index j = 0; j < dtop.cols(); ++j) dtop(i, j) = coeff(rng);
  boundaries[static_cast<size_t>(top_degree) - 1] = dtop;

  for (Index k = top_degree - 1; k >= 1; --k) {
    const MatZ& above = boundaries[static_cast<size_t>(k)];
    // Columns must land in the column kernel of the boundary above.
    const LatticeBasis w = kernel_lattice(MatZ(above.transpose()));
    MatZ r(w.basis.rows(), dims[static_cast<size_t>(k - 1)]);
    for (Index i = 0; i < r.rows(); ++i)
      for (Index j = 0; j < r.cols(); ++j) r(i, j) = coeff(rng);
    boundaries[static_cast<size_t>(k - 1)] = MatZ(w.basis.transpose()) * r;
  }
  return make_chain_complex(std::move(dims), std::move(boundaries));
}

}  // namespace torsionlab
