#include "torsionlab/presentation.hpp"

#include "torsionlab/zlinalg.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>

namespace torsionlab {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct LineCursor {
  const std::string& text;
  int line_no;
  size_t pos = 0;

  [[noreturn]] void fail(size_t at, const std::string& msg) const {
    throw ParseError(line_no, static_cast<int>(at) + 1, msg);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

Word parse_word(LineCursor& cur, const std::unordered_map<std::string, int>& gens,
                size_t end) {
  std::vector<Letter> letters;
  while (true) {
    cur.skip_ws();
    if (cur.pos >= end) break;
    size_t start = cur.pos;
    if (!is_name_start(cur.text[cur.pos]))
      cur.fail(cur.pos, std::string("unexpected character '") + cur.text[cur.pos] + "'");
    while (cur.pos < end && is_name_char(cur.text[cur.pos])) ++cur.pos;
    std::string name = cur.text.substr(start, cur.pos - start);
    auto it = gens.find(name);
    if (it == gens.end()) cur.fail(start, "unknown generator '" + name + "'");
    long exp = 1;
    if (cur.pos < end && cur.text[cur.pos] == '^') {
      ++cur.pos;
      size_t es = cur.pos;
      if (cur.pos < end && (cur.text[cur.pos] == '-' || cur.text[cur.pos] == '+')) ++cur.pos;
      size_t digits = cur.pos;
      while (cur.pos < end && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])))
        ++cur.pos;
      if (cur.pos == digits) cur.fail(es, "expected integer exponent after '^'");
      exp = std::stol(cur.text.substr(es, cur.pos - es));
      if (exp == 0) cur.fail(es, "zero exponent");
    }
    int sign = exp < 0 ? -1 : 1;
    for (long i = 0; i < std::labs(exp); ++i) letters.push_back({it->second, sign});
  }
  return Word(letters);
}

std::vector<Word> parse_word_list(LineCursor& cur,
                                  const std::unordered_map<std::string, int>& gens) {
  std::vector<Word> words;
  if (cur.done()) return words;
  while (true) {
    size_t semi = cur.text.find(';', cur.pos);
    size_t end = semi == std::string::npos ? cur.text.size() : semi;
    {
      size_t probe = cur.pos;
      while (probe < end && std::isspace(static_cast<unsigned char>(cur.text[probe])))
        ++probe;
      if (probe == end) cur.fail(probe, "empty word in list");
    }
    words.push_back(parse_word(cur, gens, end));
    if (semi == std::string::npos) break;
    cur.pos = semi + 1;
  }
  return words;
}

void remap_word(Word& w, const std::vector<int>& newidx) {
  std::vector<Letter> ls = w.letters();
  for (Letter& l : ls) l.gen = newidx[static_cast<size_t>(l.gen)];
  w = Word(std::move(ls));
}

/// Determinant of a square Laurent polynomial matrix by column-mask
/// expansion with memoization.
LaurentPoly laurent_det(const std::vector<LaurentPoly>& a, Index n) {
  if (n == 0) return LaurentPoly(1);
  if (n > 62) throw Error("laurent_det: matrix too large");
  std::map<uint64_t, LaurentPoly> memo;
  auto at = [&](Index i, Index j) -> const LaurentPoly& {
    return a[static_cast<size_t>(i * n + j)];
  };
  auto rec = [&](auto&& self, uint64_t mask, Index row) -> LaurentPoly {
    if (row == n) return LaurentPoly(1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    LaurentPoly det;
    int parity = 0;
    for (Index j = 0; j < n; ++j) {
      if (!(mask & (uint64_t(1) << j))) continue;
      if (!at(row, j).is_zero()) {
        LaurentPoly sub = self(self, mask & ~(uint64_t(1) << j), row + 1);
        LaurentPoly term = at(row, j) * sub;
        det = (parity % 2 == 0) ? det + term : det - term;
      }
      ++parity;
    }
    memo.emplace(mask, det);
    return det;
  };
  uint64_t full = (n == 62) ? ~uint64_t(0) >> 2 : (uint64_t(1) << n) - 1;
  return rec(rec, full, 0);
}

}  // namespace

GroupPresentation parse_presentation(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }

  GroupPresentation p;
  std::unordered_map<std::string, int> gen_index;
  std::optional<std::string> meridian_name;
  bool saw_generators = false, saw_relators = false, saw_meridian = false,
       saw_duals = false, saw_volume = false;

  for (size_t li = 0; li < lines.size(); ++li) {
    std::string line = lines[li];
    if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    LineCursor cur{line, static_cast<int>(li) + 1};
    if (cur.done()) continue;

    size_t key_start = cur.pos;
    while (cur.pos < line.size() && is_name_char(line[cur.pos])) ++cur.pos;
    std::string key = line.substr(key_start, cur.pos - key_start);
    cur.skip_ws();
    if (key.empty() || cur.pos >= line.size() || line[cur.pos] != ':')
      cur.fail(key_start, "expected 'key:' header");
    ++cur.pos;

    if (key == "generators") {
      if (saw_generators) cur.fail(key_start, "duplicate generators line");
      saw_generators = true;
      while (!cur.done()) {
        size_t start = cur.pos;
        if (!is_name_start(line[cur.pos]))
          cur.fail(cur.pos, std::string("invalid generator name start '") +
                                line[cur.pos] + "'");
        while (cur.pos < line.size() && is_name_char(line[cur.pos])) ++cur.pos;
        std::string name = line.substr(start, cur.pos - start);
        if (gen_index.count(name)) cur.fail(start, "duplicate generator '" + name + "'");
        gen_index.emplace(name, static_cast<int>(p.generators.size()));
        p.generators.push_back(name);
      }
      if (p.generators.empty()) cur.fail(cur.pos, "no generators declared");
      continue;
    }
    if (!saw_generators)
      cur.fail(key_start, "generators must be declared before '" + key + "'");

    if (key == "relators") {
      if (saw_relators) cur.fail(key_start, "duplicate relators line");
      saw_relators = true;
      p.relators = parse_word_list(cur, gen_index);
    } else if (key == "meridian") {
      if (saw_meridian) cur.fail(key_start, "duplicate meridian line");
      saw_meridian = true;
      cur.skip_ws();
      size_t start = cur.pos;
      while (cur.pos < line.size() && is_name_char(line[cur.pos])) ++cur.pos;
      std::string name = line.substr(start, cur.pos - start);
      auto it = gen_index.find(name);
      if (it == gen_index.end()) cur.fail(start, "unknown generator '" + name + "'");
      meridian_name = name;
      if (!cur.done()) cur.fail(cur.pos, "trailing text after meridian name");
    } else if (key == "duals") {
      if (saw_duals) cur.fail(key_start, "duplicate duals line");
      saw_duals = true;
      p.duals = parse_word_list(cur, gen_index);
      if (p.duals.size() != p.generators.size())
        cur.fail(key_start, "expected one dual word per generator");
    } else if (key == "volume") {
      if (saw_volume) cur.fail(key_start, "duplicate volume line");
      saw_volume = true;
      cur.skip_ws();
      size_t start = cur.pos;
      try {
        size_t used = 0;
        double v = std::stod(line.substr(start), &used);
        cur.pos = start + used;
        if (v < 0) cur.fail(start, "volume must be nonnegative");
        p.volume = v;
      } catch (const std::invalid_argument&) {
        cur.fail(start, "expected a number");
      } catch (const std::out_of_range&) {
        cur.fail(start, "number out of range");
      }
      if (!cur.done()) cur.fail(cur.pos, "trailing text after volume");
    } else {
      cur.fail(key_start, "unknown key '" + key + "'");
    }
  }

  if (!saw_generators) throw ParseError(1, 1, "missing generators line");

  if (meridian_name) {
    int m = gen_index.at(*meridian_name);
    int g = p.rank();
    if (m != g - 1) {
      // Move the meridian to the last slot so column surgery stays trivial.
      std::vector<int> newidx(static_cast<size_t>(g));
      for (int j = 0; j < g; ++j)
        newidx[static_cast<size_t>(j)] = j < m ? j : (j == m ? g - 1 : j - 1);
      std::vector<std::string> gens2;
      std::vector<Word> duals2;
      for (int j = 0; j < g; ++j)
        if (j != m) gens2.push_back(p.generators[static_cast<size_t>(j)]);
      gens2.push_back(p.generators[static_cast<size_t>(m)]);
      if (!p.duals.empty()) {
        for (int j = 0; j < g; ++j)
          if (j != m) duals2.push_back(p.duals[static_cast<size_t>(j)]);
        duals2.push_back(p.duals[static_cast<size_t>(m)]);
      }
      p.generators = std::move(gens2);
      p.duals = std::move(duals2);
      for (Word& r : p.relators) remap_word(r, newidx);
      for (Word& d : p.duals) remap_word(d, newidx);
    }
    p.meridian = p.rank() - 1;
  }

  validate(p);
  return p;
}

std::string serialize(const GroupPresentation& p) {
  std::ostringstream os;
  os << "generators:";
  for (const auto& g : p.generators) os << ' ' << g;
  os << "\nrelators:";
  for (size_t i = 0; i < p.relators.size(); ++i)
    os << (i ? " ; " : " ") << to_string(p.relators[i], p.generators);
  os << '\n';
  if (p.meridian)
    os << "meridian: " << p.generators[static_cast<size_t>(*p.meridian)] << '\n';
  if (!p.duals.empty()) {
    os << "duals:";
    for (size_t i = 0; i < p.duals.size(); ++i)
      os << (i ? " ; " : " ") << to_string(p.duals[i], p.generators);
    os << '\n';
  }
  if (p.volume) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *p.volume);
    os << "volume: " << buf << '\n';
  }
  return os.str();
}

void validate(const GroupPresentation& p) {
  const int g = p.rank();
  if (g == 0) throw Error("presentation: no generators");
  for (const Word& r : p.relators)
    if (r.max_generator() >= g) throw Error("presentation: relator letter out of range");
  if (p.meridian && (*p.meridian < 0 || *p.meridian >= g))
    throw Error("presentation: meridian index out of range");
  if (!p.duals.empty()) {
    if (static_cast<int>(p.duals.size()) != g)
      throw Error("presentation: expected one dual word per generator");
    for (const Word& d : p.duals)
      if (d.max_generator() >= g) throw Error("presentation: dual letter out of range");
  }
  if (p.volume && *p.volume < 0) throw Error("presentation: negative volume");
}

PresentationShape shape(const GroupPresentation& p) {
  const int g = p.rank();
  const int n = static_cast<int>(p.relators.size());
  if (n == g - 1) return PresentationShape::KnotExterior;
  if (n == g) return PresentationShape::Closed;
  throw Error("presentation: shape mismatch between generator and relator counts");
}

GroupRingElement fox_derivative(const Word& w, int gen) {
  GroupRingElement d;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.gen == gen) {
      if (l.sign > 0) {
        d += GroupRingElement::of_word(prefix);
      } else {
        d -= GroupRingElement::of_word(prefix * Word::generator(l.gen, -1));
      }
    }
    prefix = prefix * Word::generator(l.gen, l.sign);
  }
  return d;
}

BoundaryMaps boundary_matrices(const GroupPresentation& p) {
  const PresentationShape sh = shape(p);
  const int g = p.rank();
  const int n = static_cast<int>(p.relators.size());
  BoundaryMaps b;
  b.d1 = GroupRingMatrix(g, 1);
  for (int j = 0; j < g; ++j)
    b.d1(j, 0) = GroupRingElement::one() -
                 GroupRingElement::of_word(Word::generator(j));
  b.d2 = GroupRingMatrix(n, g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < g; ++j)
      b.d2(i, j) = fox_derivative(p.relators[static_cast<size_t>(i)], j);
  if (sh == PresentationShape::Closed) {
    if (p.duals.empty()) throw Error("closed presentation requires duals");
    GroupRingMatrix d3(1, n);
    for (int i = 0; i < n; ++i)
      d3(0, i) = GroupRingElement::one() -
                 GroupRingElement::of_word(p.duals[static_cast<size_t>(i)]);
    b.d3 = std::move(d3);
  }
  return b;
}

ReducedJacobian reduced_jacobian(const GroupPresentation& p) {
  if (shape(p) != PresentationShape::KnotExterior)
    throw Error("reduced_jacobian: knot-exterior shape required");
  BoundaryMaps b = boundary_matrices(p);
  const Index n = b.d2.rows();
  ReducedJacobian rj;
  rj.J = b.d2.block(0, 0, n, n);
  rj.c = b.d2.block(0, n, n, 1);
  return rj;
}

std::vector<long> abelianization_degrees(const GroupPresentation& p) {
  const int g = p.rank();
  const int n = static_cast<int>(p.relators.size());
  MatZ a(n, g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < g; ++j)
      a(i, j) = p.relators[static_cast<size_t>(i)].exponent_sum(j);
  SmithTransforms st = smith_form_with_transforms(a);
  const bool free_rank_one = st.form.rank == g - 1;
  bool torsion_free = true;
  for (const Int& d : st.form.divisors)
    if (d != 1) torsion_free = false;
  if (!free_rank_one || !torsion_free)
    throw Error("abelianization is not infinite cyclic");
  std::vector<long> deg(static_cast<size_t>(g));
  for (int j = 0; j < g; ++j) {
    if (!st.V(j, g - 1).fits_slong_p())
      throw Error("abelianization degree out of machine range");
    deg[static_cast<size_t>(j)] = st.V(j, g - 1).get_si();
  }
  long pivot = 0;
  if (p.meridian) {
    pivot = deg[static_cast<size_t>(*p.meridian)];
  } else {
    for (long d : deg)
      if (d != 0) {
        pivot = d;
        break;
      }
  }
  if (pivot < 0)
    for (long& d : deg) d = -d;
  return deg;
}

LaurentPoly abelianized_alexander(const GroupPresentation& p) {
  ReducedJacobian rj = reduced_jacobian(p);
  std::vector<long> deg = abelianization_degrees(p);
  const Index n = rj.J.rows();
  std::vector<LaurentPoly> a(static_cast<size_t>(n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      LaurentPoly e;
      for (const auto& [w, c] : rj.J(i, j).terms()) {
        long d = 0;
        for (int k = 0; k < p.rank(); ++k)
          d += w.exponent_sum(k) * deg[static_cast<size_t>(k)];
        e = e + LaurentPoly::monomial(d, c);
      }
      a[static_cast<size_t>(i * n + j)] = std::move(e);
    }
  return laurent_det(a, n).normalized();
}

}  // namespace torsionlab
