#include "torsionlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace torsionlab {

namespace {

struct SuiteContext {
  std::mt19937_64 rng;
  const std::map<std::string, std::string>& texts;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

void require_close(double a, double b, double tol, const std::string& msg) {
  if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)}))
    throw Error(msg + " (" + format_double(a) + " vs " + format_double(b) + ")");
}

GroupPresentation named(const SuiteContext& ctx, const std::string& key) {
  const auto it = ctx.texts.find(key);
  if (it == ctx.texts.end()) throw Error("missing bundled presentation: " + key);
  return parse_presentation(it->second);
}

Word random_word(std::mt19937_64& rng, int ngens, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, ngens - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> letters;
  const int n = len(rng);
  letters.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return Word(std::move(letters));
}

GroupRingElement random_ring_element(std::mt19937_64& rng, int ngens) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<long> coeff(-3, 3);
  GroupRingElement e;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    e += GroupRingElement::of_word(random_word(rng, ngens, 4), Int(coeff(rng)));
  return e;
}

MatZ random_matrix(std::mt19937_64& rng, Index rows, Index cols, long bound) {
  std::uniform_int_distribution<long> entry(-bound, bound);
  MatZ m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Int(entry(rng));
  return m;
}

bool same_matrix(const MatZ& a, const MatZ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool zero_matrix(const MatZ& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

void suite_word_algebra(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  require((Word::generator(0) * Word::generator(0, -1)).empty(),
          "adjacent inverse pair survives");
  for (int iter = 0; iter < 40; ++iter) {
    const Word u = random_word(rng, 3, 6);
    const Word v = random_word(rng, 3, 6);
    const Word w = random_word(rng, 3, 6);
    require((u * v) * w == u * (v * w), "word product not associative");
    require((u * u.inverse()).empty(), "word times its inverse not empty");
    require(u.pow(3) == u * u * u, "positive power mismatch");
    require(u.pow(-2) == (u * u).inverse(), "negative power mismatch");
    require((u * v).exponent_sum(1) == u.exponent_sum(1) + v.exponent_sum(1),
            "exponent sum not additive");
    const GroupRingElement x = random_ring_element(rng, 3);
    const GroupRingElement y = random_ring_element(rng, 3);
    const GroupRingElement z = random_ring_element(rng, 3);
    require(x * (y + z) == x * y + x * z, "ring distributivity failed");
    require((x * y).augmentation() == x.augmentation() * y.augmentation(),
            "augmentation not multiplicative");
    require((x * y).l1_norm() <= x.l1_norm() * y.l1_norm(),
            "l1 norm not submultiplicative");
    require((x - x).is_zero(), "x - x nonzero");
  }
}

void suite_fox_calculus(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  const GroupRingElement one = GroupRingElement::one();
  require(fox_derivative(Word::generator(0), 0) == one, "derivative of a by a");
  require(fox_derivative(Word::generator(0), 1).is_zero(), "derivative of a by b");
  require(fox_derivative(Word::generator(0, -1), 0) ==
              -GroupRingElement::of_word(Word::generator(0, -1)),
          "derivative of an inverse letter");
  for (int iter = 0; iter < 40; ++iter) {
    const Word u = random_word(rng, 3, 6);
    const Word v = random_word(rng, 3, 6);
    for (int j = 0; j < 3; ++j) {
      const GroupRingElement lhs = fox_derivative(u * v, j);
      const GroupRingElement rhs =
          fox_derivative(u, j) + GroupRingElement::of_word(u) * fox_derivative(v, j);
      require(lhs == rhs, "product rule failed");
    }
    GroupRingElement total;
    for (int j = 0; j < 3; ++j)
      total += fox_derivative(u, j) *
               (GroupRingElement::of_word(Word::generator(j)) - one);
    require(total == GroupRingElement::of_word(u) - one,
            "fundamental derivative identity failed");
  }
}

void suite_presentation_io(SuiteContext& ctx) {
  for (const char* key : {"trefoil", "figure8", "unknot"}) {
    const GroupPresentation p = named(ctx, key);
    require(shape(p) == PresentationShape::KnotExterior,
            std::string(key) + ": wrong shape");
    require(p.meridian && *p.meridian == p.rank() - 1, "meridian not in last slot");
    const GroupPresentation q = parse_presentation(serialize(p));
    require(p == q, std::string(key) + ": serialize round trip failed");
  }
  const GroupPresentation tre = named(ctx, "trefoil");
  require(tre.generators == std::vector<std::string>({"b", "a"}),
          "meridian reorder failed");
  require(tre.relators.size() == 1 && tre.relators[0].size() == 6,
          "unexpected relator shape");

  bool threw = false;
  try {
    parse_presentation("generators: a b\nrelators: c\n");
  } catch (const ParseError& e) {
    threw = true;
    require(e.line == 2, "wrong error line");
    require(e.col > 0, "missing error column");
  }
  require(threw, "unknown generator accepted");

  threw = false;
  try {
    parse_presentation("generators: a\ngenerators: b\n");
  } catch (const ParseError&) {
    threw = true;
  }
  require(threw, "duplicate key accepted");

  threw = false;
  try {
    parse_presentation("relators: a\ngenerators: a\n");
  } catch (const ParseError&) {
    threw = true;
  }
  require(threw, "relators before generators accepted");
}

void suite_alexander_oracles(SuiteContext& ctx) {
  const LaurentPoly tre = abelianized_alexander(named(ctx, "trefoil"));
  const LaurentPoly fig = abelianized_alexander(named(ctx, "figure8"));
  const LaurentPoly unk = abelianized_alexander(named(ctx, "unknot"));
  require(tre.shifted_coeffs() == std::vector<Int>({Int(1), Int(-1), Int(1)}),
          "trefoil Alexander polynomial");
  require(fig.shifted_coeffs() == std::vector<Int>({Int(1), Int(-3), Int(1)}),
          "figure-eight Alexander polynomial");
  require(unk.shifted_coeffs() == std::vector<Int>({Int(1)}),
          "unknot Alexander polynomial");
  for (const LaurentPoly* d : {&tre, &fig}) {
    Int at_one = d->eval(Int(1));
    if (at_one < 0) at_one = -at_one;
    require(at_one == 1, "Alexander polynomial at 1 not a unit");
  }
  Int dtre = tre.eval(Int(-1));
  if (dtre < 0) dtre = -dtre;
  Int dfig = fig.eval(Int(-1));
  if (dfig < 0) dfig = -dfig;
  require(dtre == 3, "trefoil determinant");
  require(dfig == 5, "figure-eight determinant");
}

void suite_integer_linalg(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  MatZ d23 = MatZ::Zero(2, 2);
  d23(0, 0) = 2;
  d23(1, 1) = 3;
  const SmithForm sf = smith_form(d23);
  require(sf.rank == 2 && sf.divisors == std::vector<Int>({Int(1), Int(6)}),
          "divisors of diag(2,3)");
  require(det_prime_squared(d23) == 36, "squared determinant of diag(2,3)");

  MatZ col(2, 1);
  col(0, 0) = 1;
  col(1, 0) = 1;
  const LatticeBasis ker = kernel_lattice(col);
  require(ker.basis.rows() == 1 && ker.vol2 == 2, "kernel of the column (1,1)");
  require(zero_matrix(MatZ(ker.basis * col)), "kernel rows not annihilated");

  std::uniform_int_distribution<int> dim(1, 5);
  for (int iter = 0; iter < 12; ++iter) {
    const MatZ m = random_matrix(rng, dim(rng), dim(rng), 4);
    const SmithTransforms st = smith_form_with_transforms(m);
    MatZ diag = MatZ::Zero(m.rows(), m.cols());
    for (Index i = 0; i < st.form.rank; ++i) diag(i, i) = st.form.divisors[i];
    require(same_matrix(MatZ(st.U * m * st.V), diag), "U m V is not the divisor matrix");
    for (Index i = 0; i + 1 < st.form.rank; ++i)
      require(st.form.divisors[static_cast<size_t>(i) + 1] %
                      st.form.divisors[static_cast<size_t>(i)] ==
                  0,
              "divisor chain broken");
    Int du = bareiss_det(st.U);
    if (du < 0) du = -du;
    Int dv = bareiss_det(st.V);
    if (dv < 0) dv = -dv;
    require(du == 1 && dv == 1, "transform not unimodular");

    const HermiteForm h = hermite_form(m);
    require(same_matrix(MatZ(h.U * m), h.H), "U m is not the echelon form");
    require(h.rank == st.form.rank && rank(m) == st.form.rank, "rank disagreement");

    const LatticeBasis k = kernel_lattice(m);
    require(k.basis.rows() == m.rows() - st.form.rank, "kernel rank");
    require(zero_matrix(MatZ(k.basis * m)), "kernel not annihilated");

    const LatticeBasis im2 = image_lattice(MatZ(m * Int(2)));
    const LatticeBasis sat = saturate(im2);
    require(saturate(sat).vol2 == sat.vol2, "saturation not idempotent");
    const Int idx = saturation_index(im2, sat);
    require(idx >= 1 && idx * idx * sat.vol2 == im2.vol2, "saturation index mismatch");

    const LatticeBasis im = image_lattice(m);
    Int scale = 1;
    for (Index i = 0; i < im.basis.rows(); ++i) scale *= 4;
    require(gram_det2(MatZ(im.basis * Int(2))) == scale * im.vol2,
            "squared volume scaling");

    const TorsionBoundReport tb = torsion_bound_report(m);
    require(tb.torsion_bound_ok && tb.kernel_bound_ok, "torsion bounds violated");
    Int divprod = 1;
    for (const Int& d : st.form.divisors) divprod *= d;
    require(tb.torsion == divprod, "torsion against divisor product");
    require(tb.det2 == det_prime_squared(m), "squared determinant mismatch");

    const CokernelSummary ck = cokernel_summary(m);
    require(ck.free_rank == m.cols() - st.form.rank, "cokernel free rank");
    require(ck.torsion == divprod, "cokernel torsion");
  }
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> base(static_cast<size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

bool transitive_pair(const std::vector<int>& pa, const std::vector<int>& pb) {
  const int n = static_cast<int>(pa.size());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (const int t : {pa[static_cast<size_t>(s)], pb[static_cast<size_t>(s)]}) {
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = 1;
        ++count;
        stack.push_back(t);
      }
    }
  }
  return count == n;
}

void suite_coset_actions(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  const GroupPresentation tre = named(ctx, "trefoil");
  for (int n = 1; n <= 6; ++n) {
    const CosetTable t = cyclic_cover_table(tre, n);
    require(t.index == n, "cyclic cover index");
    require(kills_relators(t, tre), "cyclic table misses a relator");
    require(normalized_trace(t, Word()) == 1, "empty word trace");
    if (n > 1)
      require(normalized_trace(t, Word::generator(*tre.meridian)) == 0,
              "meridian trace on a cyclic cover");
  }

  const CosetTable c4 = cyclic_cover_table(tre, 4);
  for (int iter = 0; iter < 30; ++iter) {
    const Word u = random_word(rng, tre.rank(), 6);
    const Word v = random_word(rng, tre.rank(), 6);
    const std::vector<int> au = word_action(c4, u);
    const std::vector<int> av = word_action(c4, v);
    const std::vector<int> auv = word_action(c4, u * v);
    for (int s = 0; s < 4; ++s) {
      require(auv[static_cast<size_t>(s)] ==
                  av[static_cast<size_t>(au[static_cast<size_t>(s)])],
              "action not a homomorphism");
      require(apply_word(c4, apply_word(c4, s, u), u.inverse()) == s,
              "inverse word does not undo the action");
    }

    // Cycle-type bookkeeping: sum of n * d_n is the index, and the number of
    // one-cycles is index times the normalized trace.
    const CycleType ct = cycle_type(c4, u);
    require(ct.degree == 4, "cycle type degree");
    Index mass = 0;
    for (const auto& [len, cnt] : ct.counts) mass += len * cnt;
    require(mass == 4, "cycle lengths do not sum to the index");
    const Index fixed = ct.counts.count(1) ? ct.counts.at(1) : 0;
    Rat trace_scaled = normalized_trace(c4, u) * 4;
    trace_scaled.canonicalize();
    require(trace_scaled == static_cast<long>(fixed),
            "fixed points disagree with the trace");
  }

  const std::vector<CosetTable> classes4 = low_index_tables(tre, 4);
  const std::vector<CosetTable> classes5 = low_index_tables(tre, 5);
  require(classes4.size() <= classes5.size(), "class count not monotone");
  for (std::size_t i = 0; i < classes4.size(); ++i)
    require(classes4[i] == classes5[i], "prefix property violated");

  LowIndexOptions all;
  all.expand_conjugates = true;
  const std::vector<CosetTable> subgroups = low_index_tables(tre, 4, all);
  require(classes4.size() <= subgroups.size(), "more classes than subgroups");
  const long fact[] = {1, 1, 2, 6};
  for (int n = 1; n <= 4; ++n) {
    long brute = 0;
    const std::vector<std::vector<int>> perms = all_permutations(n);
    for (const auto& pa : perms) {
      for (const auto& pb : perms) {
        if (!transitive_pair(pa, pb)) continue;
        if (kills_relators(make_coset_table(n, {pa, pb}), tre)) ++brute;
      }
    }
    require(brute % fact[n - 1] == 0, "transitive action count not divisible");
    const long expected = brute / fact[n - 1];
    long got = 0;
    long class_count = 0;
    for (const CosetTable& t : subgroups)
      if (t.index == n) ++got;
    for (const CosetTable& t : classes4)
      if (t.index == n) ++class_count;
    require(got == expected, "subgroup count disagrees with brute force");
    require(class_count <= got, "class count exceeds subgroup count");
  }

  const CosetTable c3 = cyclic_cover_table(tre, 3);
  const CosetTable back = table_from_text(to_text(c3, tre.generators), tre.generators);
  require(back == c3, "table text round trip");

  const TraceReport tr =
      trace_convergence_report({Word(), Word::generator(0)}, {c3, c4});
  require(tr.target == std::vector<Rat>({Rat(1), Rat(0)}), "trace targets");
  require(tr.values.size() == 2 && tr.values[0].size() == 2, "trace table shape");
  require(tr.values[0][0] == 1 && tr.values[0][1] == 1, "empty word traces");
  require(tr.indices == std::vector<Index>({3, 4}), "trace report indices");
}

void suite_spectral_density(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  MatD d23 = MatD::Zero(2, 2);
  d23(0, 0) = 2;
  d23(1, 1) = 3;
  const StepDensity f = spectral_density(d23, 1, 2);
  require(f.value_at_zero == 0, "kernel mass of an invertible matrix");
  require(f.jumps.size() == 2, "jump count of diag(2,3)");
  require_close(f.jumps[0].first, 4, 1e-9, "first squared singular value");
  require_close(f.jumps[1].first, 9, 1e-9, "second squared singular value");
  require_close(f.eval(3.5), 0, 1e-12, "distribution left of the spectrum");
  require_close(f.eval(6.0), 1, 1e-12, "distribution between eigenvalues");
  require_close(f.total(), 2, 1e-12, "total mass");
  require_close(density_log_det(f), std::log(36.0), 1e-9, "log determinant route");
  require_close(det_prime_float(d23, 2), 6.0, 1e-12, "modified determinant");

  MatD rowm(1, 2);
  rowm(0, 0) = 1;
  rowm(0, 1) = 1;
  const StepDensity g = spectral_density(rowm, 1, 1);
  require(g.jumps.size() == 1, "jump count of a rank one row");
  require_close(g.jumps[0].first, 2, 1e-9, "Gram eigenvalue of (1 1)");
  require_close(det_prime_float(rowm, 1), std::sqrt(2.0), 1e-12,
                "modified determinant of (1 1)");

  const MatD zero = MatD::Zero(2, 3);
  const StepDensity z = spectral_density(zero, 1, 0);
  require(z.value_at_zero == 2 && z.jumps.empty(), "density of the zero matrix");
  require_close(density_log_det(z), 0, 1e-12, "log determinant of the zero map");
  require_close(det_prime_float(zero, 0), 1, 1e-12, "modified determinant of zero");

  for (int iter = 0; iter < 10; ++iter) {
    const MatZ a = random_matrix(rng, 3, 4, 3);
    const MatZ b = random_matrix(rng, 2, 4, 3);
    const Index ra = rank(a);
    const StepDensity fa = spectral_density(to_double(a), 2, ra);
    const StepDensity fb = spectral_density(to_double(b), 2, rank(b));
    const StepDensity fmin = pointwise_min({fa, fb});
    std::vector<double> samples = {0.0, fa.cutoff + 1, fb.cutoff + 1};
    for (const auto& [lam, mass] : fa.jumps) {
      samples.push_back(lam);
      samples.push_back(lam * 0.5);
    }
    for (const auto& [lam, mass] : fb.jumps) samples.push_back(lam);
    for (const double s : samples)
      require_close(fmin.eval(s), std::min(fa.eval(s), fb.eval(s)), 1e-9,
                    "pointwise minimum");
    const StepDensity f1 = spectral_density(to_double(a), 1, ra);
    require_close(std::sqrt(std::exp(density_log_det(f1))),
                  det_prime_float(to_double(a), ra), 1e-6,
                  "density route against the singular value product");
  }

  GroupRingMatrix b1(1, 1);
  b1(0, 0) = GroupRingElement::of_word(Word::generator(0)) - GroupRingElement::one();
  require(norm_bound(b1) == 2, "norm bound of a - 1");
  require(norm_bound(GroupRingMatrix()) == 0, "norm bound of the empty matrix");
  GroupRingMatrix b2(1, 1);
  b2(0, 0) = GroupRingElement::of_word(Word::generator(0)) +
             GroupRingElement::of_word(Word::generator(1)) + GroupRingElement::one();
  require(norm_bound(b2) == 3, "norm bound of a + b + 1");

  const GroupPresentation tre = named(ctx, "trefoil");
  for (int iter = 0; iter < 6; ++iter) {
    GroupRingMatrix b(2, 2);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) b(i, j) = random_ring_element(rng, 2);
    const Int bound = norm_bound(b);
    for (int n = 1; n <= 4; ++n) {
      const CosetTable t = cyclic_cover_table(tre, n);
      const double opn = operator_norm(to_double(induce_matrix(b, t)));
      require(opn <= bound.get_d() + 1e-6, "norm bound does not dominate");
    }
  }
}

ChainComplex times_two_complex() {
  MatZ d(1, 1);
  d(0, 0) = 2;
  return make_chain_complex({1, 1}, {d});
}

void suite_cover_complexes(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  const GroupPresentation tre = named(ctx, "trefoil");
  const GroupPresentation fig = named(ctx, "figure8");

  bool threw = false;
  try {
    MatZ one(1, 1);
    one(0, 0) = 1;
    make_chain_complex({1, 1, 1}, {one, one});
  } catch (const Error&) {
    threw = true;
  }
  require(threw, "non-composing boundaries accepted");

  const ChainComplex c1 = cover_complex(tre, cyclic_cover_table(tre, 1));
  require(c1.dims == std::vector<Index>({1, 2, 1}), "trivial cover dimensions");
  const HomologySummary h1 = homology(c1);
  require(h1.betti == std::vector<Index>({1, 1, 0}), "knot exterior betti numbers");
  require(h1.torsion == std::vector<Int>({Int(1), Int(1), Int(1)}),
          "knot exterior torsion");

  const HomologySummary h2 = homology(cover_complex(tre, cyclic_cover_table(tre, 2)));
  require(h2.betti == std::vector<Index>({1, 1, 0}), "double cover betti numbers");
  require(h2.torsion[1] == 3, "double cover first homology torsion");

  for (const GroupPresentation* p : {&tre, &fig}) {
    for (const CosetTable& t : low_index_tables(*p, 4)) {
      const HomologySummary h = homology(cover_complex(*p, t));
      require(h.betti[0] == 1, "cover not connected");
      require(h.betti[1] == h.betti[2] + 1, "Euler characteristic violated");
      const CoverInequalityReport rep = cover_inequality_report(*p, t);
      require(rep.ok, "torsion-determinant inequality failed");
      require(rep.b1 == h.betti[1] && rep.t1 == h.torsion[1],
              "report disagrees with homology");
      require(Rat(rep.t1 * rep.t1) <= rep.det2_beta * Rat(rep.det2_jacobian),
              "inequality verdict not reproducible");
    }
  }

  require(circle_det(std::vector<int>{1, 2, 0, 4, 3}) == 6,
          "circle determinant of a (3,2) permutation");
  require(circle_det(std::vector<int>{0, 1, 2, 3}) == 1,
          "circle determinant of the identity");

  const BranchedHomology tb1 = branched_homology(tre, cyclic_cover_table(tre, 1));
  require(tb1.torsion == 1 && tb1.free_rank == 0, "branched onefold cover");
  const BranchedHomology tb2 = branched_homology(tre, cyclic_cover_table(tre, 2));
  require(tb2.torsion == 3 && tb2.free_rank == 0, "branched double cover of the trefoil");
  const BranchedHomology tb6 = branched_homology(tre, cyclic_cover_table(tre, 6));
  require(tb6.torsion == 1 && tb6.free_rank == 2, "branched sixfold cover of the trefoil");
  const BranchedHomology fb2 = branched_homology(fig, cyclic_cover_table(fig, 2));
  require(fb2.torsion == 5 && fb2.free_rank == 0,
          "branched double cover of the figure-eight");

  const TorsionReport doubling = torsion_report(times_two_complex());
  require(doubling.tau_rs2 == Rat(1, 4), "squared torsion of multiplication by two");
  require(doubling.tau_h2 == Rat(1, 4), "homology torsion side of the identity");
  require(doubling.reg2 == 1, "regulator of multiplication by two");
  require(doubling.betti == std::vector<Index>({0, 0}), "betti of multiplication by two");
  require(doubling.torsion[0] == 2, "cokernel of multiplication by two");

  for (int iter = 0; iter < 15; ++iter) {
    const ChainComplex c = random_chain_complex(rng, 3, 5, 3);
    const TorsionReport tr = torsion_report(c);
    const HomologySummary h = homology(c);
    require(tr.betti == h.betti && tr.torsion == h.torsion,
            "torsion report disagrees with homology");
    require(tr.tau_rs2 == tr.tau_h2 * tr.reg2, "determinant torsion regulator identity");
    for (std::size_t k = 0; k + 1 < c.dims.size(); ++k) {
      const LatticeBasis im = image_lattice(c.boundaries[k]);
      require(tr.torsion[k] == saturation_index(im, saturate(im)),
              "homology torsion against the saturation index");
    }
  }

  const GroupPresentation torus3 = parse_presentation(
      "generators: a b c\n"
      "relators: b c b^-1 c^-1 ; c a c^-1 a^-1 ; a b a^-1 b^-1\n"
      "duals: a ; b ; c\n");
  require(shape(torus3) == PresentationShape::Closed, "three-torus shape");
  const ClosedCoverReport cr1 =
      closed_cover_report(torus3, make_coset_table(1, {{0}, {0}, {0}}));
  require(cr1.torsion.betti == std::vector<Index>({1, 3, 3, 1}), "three-torus betti");
  require(cr1.ratio2 == 1, "three-torus determinant ratio");
  const CosetTable t3double = make_coset_table(2, {{1, 0}, {0, 1}, {0, 1}});
  require(kills_relators(t3double, torus3), "abelian table must kill commutators");
  const ClosedCoverReport cr2 = closed_cover_report(torus3, t3double);
  require(cr2.torsion.betti == std::vector<Index>({1, 3, 3, 1}),
          "betti of the double cover of the three-torus");
  require(cr2.torsion.torsion ==
              std::vector<Int>({Int(1), Int(1), Int(1), Int(1)}),
          "torsion of the double cover of the three-torus");
  require(cr2.ratio2 == cr2.torsion.tau_rs2 / cr2.rhs2 && cr2.ratio2 > 0,
          "closed ratio bookkeeping");
}

void suite_branched_growth(SuiteContext& ctx) {
  auto& rng = ctx.rng;
  std::uniform_int_distribution<long> coeff(-3, 3);
  auto random_poly = [&](long maxdeg) {
    LaurentPoly p;
    for (long d = 0; d <= maxdeg; ++d)
      p = p + LaurentPoly::monomial(d, Int(coeff(rng)));
    return p;
  };
  for (int iter = 0; iter < 20; ++iter) {
    const LaurentPoly f = random_poly(3);
    const LaurentPoly g = random_poly(3);
    const LaurentPoly h = random_poly(2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    require(resultant((f * g).shifted_coeffs(), h.shifted_coeffs()) ==
                resultant(f.shifted_coeffs(), h.shifted_coeffs()) *
                    resultant(g.shifted_coeffs(), h.shifted_coeffs()),
            "resultant not multiplicative");
    Int ab = resultant(f.shifted_coeffs(), g.shifted_coeffs());
    Int ba = resultant(g.shifted_coeffs(), f.shifted_coeffs());
    if (ab < 0) ab = -ab;
    if (ba < 0) ba = -ba;
    require(ab == ba, "resultant not symmetric up to sign");
  }

  const GroupPresentation tre = named(ctx, "trefoil");
  const GroupPresentation fig = named(ctx, "figure8");
  const GroupPresentation unk = named(ctx, "unknot");

  const GrowthReport gt = growth_report(tre, 6);
  const long tre_orders[] = {3, 4, 3, 1, 0};
  require(gt.rows.size() == 5, "growth row count");
  for (int n = 2; n <= 6; ++n) {
    require(gt.rows[static_cast<size_t>(n - 2)].n == n, "growth row numbering");
    require(gt.rows[static_cast<size_t>(n - 2)].torsion == tre_orders[n - 2],
            "trefoil branched torsion orders");
    require(gt.rows[static_cast<size_t>(n - 2)].betti_jump == (n == 6),
            "trefoil betti jump placement");
  }
  require_close(gt.mahler, 1.0, 1e-9, "Mahler measure of the trefoil polynomial");
  require(cyclic_branched_torsion(gt.alexander, 6) == 0, "sixfold cover jump");
  require(cyclic_branched_torsion(gt.alexander, 5) == 1, "fivefold cover torsion");

  const GrowthReport gf = growth_report(fig, 8);
  Int trace_prev = 3, trace = 7;
  for (int n = 2; n <= 8; ++n) {
    require(gf.rows[static_cast<size_t>(n - 2)].torsion == trace - 2,
            "figure-eight branched torsion orders");
    require(!gf.rows[static_cast<size_t>(n - 2)].betti_jump,
            "figure-eight has no betti jumps");
    const Int next = 3 * trace - trace_prev;
    trace_prev = trace;
    trace = next;
  }
  require(gf.rows[4].log_torsion_over_n.has_value(), "missing log torsion entry");
  require_close(*gf.rows[4].log_torsion_over_n, std::log(320.0) / 6, 1e-12,
                "log torsion of the sixfold cover");
  require_close(gf.mahler, (3 + std::sqrt(5.0)) / 2, 1e-9, "figure-eight Mahler measure");
  require_close(gf.log_mahler, std::log(gf.mahler), 1e-12, "log Mahler field");

  const LaurentPoly tminus2 = LaurentPoly::monomial(1) - LaurentPoly(Int(2));
  require_close(mahler_measure(tminus2), 2.0, 1e-9, "Mahler measure of t - 2");
  LaurentPoly cyc5;
  for (long d = 0; d <= 4; ++d) cyc5 = cyc5 + LaurentPoly::monomial(d);
  require_close(mahler_measure(cyc5), 1.0, 1e-6,
                "Mahler measure of a cyclotomic polynomial");

  const GrowthReport gu = growth_report(unk, 5);
  for (const GrowthRow& row : gu.rows)
    require(row.torsion == 1 && !row.betti_jump, "unknot branched covers");
  require_close(gu.mahler, 1.0, 1e-12, "unknot Mahler measure");
}

void suite_experiment_harness(SuiteContext& ctx) {
  const GroupPresentation tre = named(ctx, "trefoil");
  const GroupPresentation unk = named(ctx, "unknot");

  ExperimentConfig cfg;
  cfg.max_index = 3;
  cfg.jobs = 2;
  const ExperimentResult r1 = run_experiment(tre, cfg);
  cfg.jobs = 1;
  const ExperimentResult r2 = run_experiment(tre, cfg);
  require(to_csv(r1) == to_csv(r2), "experiment output not deterministic");
  require(summary_text(r1) == summary_text(r2), "summary not deterministic");
  require(!r1.rows.empty(), "no rows produced");

  int lowindex = 0, cyclic = 0;
  for (const ResultRow& row : r1.rows) {
    require(row.error.empty(), "unexpected row error: " + row.error);
    require(row.ineq_ok, "inequality verdict false on a sample knot");
    require(Rat(row.t1 * row.t1) <= row.det2_beta * Rat(row.det2_jacobian),
            "row verdict not recomputable");
    require_close(row.ln_t1_over_n, log_int(row.t1) / static_cast<double>(row.index),
                  1e-12, "log torsion field");
    require_close(row.ln_det_jacobian_over_n,
                  0.5 * log_int(row.det2_jacobian) / static_cast<double>(row.index),
                  1e-12, "log determinant field");
    if (row.kind == "lowindex") {
      ++lowindex;
      require(row.id == "L" + std::to_string(lowindex), "low-index row ids");
    } else {
      require(row.kind == "cyclic", "unknown row kind");
      ++cyclic;
      require(row.id == "C" + std::to_string(cyclic), "cyclic row ids");
      require(row.index == cyclic, "cyclic cover degrees in order");
    }
    require(row.branched_torsion && row.branched_free_rank && row.meridian_trace,
            "meridian columns missing");
  }
  require(lowindex > 0, "no low-index rows");
  require(cyclic == 3, "cyclic tower length should follow max_index");

  std::optional<double> mt, md;
  for (const ResultRow& row : r1.rows) {
    if (row.kind != "lowindex") continue;
    if (!mt || row.ln_t1_over_n > *mt) mt = row.ln_t1_over_n;
    if (!md || row.ln_det_jacobian_over_n > *md) md = row.ln_det_jacobian_over_n;
  }
  require(r1.summary.max_ln_t1_lowindex == mt, "summary torsion maximum");
  require(r1.summary.max_ln_det_lowindex == md, "summary determinant maximum");
  require(r1.summary.log_mahler.has_value(), "missing Mahler reference");
  require(!r1.summary.notes.empty(), "missing assumption note");

  const ExperimentResult ru = run_experiment(unk, cfg);
  for (const ResultRow& row : ru.rows) {
    require(row.t1 == 1 && row.det2_jacobian == 1, "unknot covers must be trivial");
    require(row.ineq_ok, "unknot inequality");
  }

  const auto conf = parse_config("max_index = 5 # five\n\njobs=2\nmax_index =6\n");
  require(conf.at("max_index") == "6" && conf.at("jobs") == "2", "config parsing");
  bool threw = false;
  try {
    parse_config("oops\n");
  } catch (const Error&) {
    threw = true;
  }
  require(threw, "config line without '=' accepted");

  require(bundled_presentations().count("trefoil") == 1, "bundle missing the trefoil");
}

}  // namespace

SelfcheckResult run_selfcheck(uint64_t seed, std::ostream* log,
                              const std::map<std::string, std::string>* presentations) {
  const std::map<std::string, std::string>& texts =
      presentations ? *presentations : bundled_presentations();
  using SuiteFn = void (*)(SuiteContext&);
  const std::pair<const char*, SuiteFn> suites[] = {
      {"word-algebra", suite_word_algebra},
      {"fox-calculus", suite_fox_calculus},
      {"presentation-io", suite_presentation_io},
      {"alexander-oracles", suite_alexander_oracles},
      {"integer-linalg", suite_integer_linalg},
      {"coset-actions", suite_coset_actions},
      {"spectral-density", suite_spectral_density},
      {"cover-complexes", suite_cover_complexes},
      {"branched-growth", suite_branched_growth},
      {"experiment-harness", suite_experiment_harness},
  };
  SelfcheckResult result;
  result.all_pass = true;
  uint64_t salt = 0;
  for (const auto& [name, fn] : suites) {
    SelfcheckSuite s;
    s.name = name;
    SuiteContext ctx{std::mt19937_64(seed + salt++), texts};
    try {
      fn(ctx);
      s.pass = true;
    } catch (const std::exception& e) {
      s.pass = false;
      s.detail = e.what();
    }
    result.all_pass = result.all_pass && s.pass;
    if (log)
      *log << "suite " << s.name << ": " << (s.pass ? "PASS" : "FAIL")
           << (s.detail.empty() ? "" : " (" + s.detail + ")") << '\n';
    result.suites.push_back(std::move(s));
  }
  return result;
}

}  // namespace torsionlab
