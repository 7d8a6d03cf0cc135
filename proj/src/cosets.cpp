#include "torsionlab/cosets.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace torsionlab {

namespace {

std::vector<std::vector<int>> inverse_perms(const CosetTable& t) {
  std::vector<std::vector<int>> inv(t.perms.size(),
                                    std::vector<int>(static_cast<size_t>(t.index)));
  for (size_t g = 0; g < t.perms.size(); ++g)
    for (int s = 0; s < t.index; ++s)
      inv[g][static_cast<size_t>(t.perms[g][static_cast<size_t>(s)])] = s;
  return inv;
}

/// Backtracking enumeration of standard-form coset tables. Entries of
/// `fwd[g]`/`bwd[g]` are targets under g and g^-1, -1 while undefined.
class LowIndexSearch {
 public:
  LowIndexSearch(const GroupPresentation& p, int max_index, long budget)
      : gens_(p.rank()), max_(max_index), budget_(budget) {
    for (const Word& r : p.relators) relators_.push_back(&r);
    fwd_.assign(static_cast<size_t>(gens_),
                std::vector<int>(static_cast<size_t>(max_), -1));
    bwd_ = fwd_;
    n_ = 1;
  }

  std::vector<CosetTable> run() {
    search();
    return std::move(out_);
  }

 private:
  struct Entry {
    int gen, from, to;  // gen == -1 marks a coset allocation
  };

  void define(int g, int s, int t) {
    fwd_[static_cast<size_t>(g)][static_cast<size_t>(s)] = t;
    bwd_[static_cast<size_t>(g)][static_cast<size_t>(t)] = s;
    trail_.push_back({g, s, t});
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      Entry e = trail_.back();
      trail_.pop_back();
      if (e.gen < 0) {
        --n_;
      } else {
        fwd_[static_cast<size_t>(e.gen)][static_cast<size_t>(e.from)] = -1;
        bwd_[static_cast<size_t>(e.gen)][static_cast<size_t>(e.to)] = -1;
      }
    }
  }

  // Trace one relator at one coset; forces the last missing transition when
  // exactly one is left. Returns false on a closure mismatch.
  bool scan(const Word& r, int s, bool& deduced) {
    const auto& ls = r.letters();
    size_t i = 0, j = ls.size();
    int c = s, d = s;
    while (i < j) {
      const Letter& l = ls[i];
      int nxt = l.sign > 0 ? fwd_[static_cast<size_t>(l.gen)][static_cast<size_t>(c)]
                           : bwd_[static_cast<size_t>(l.gen)][static_cast<size_t>(c)];
      if (nxt < 0) break;
      c = nxt;
      ++i;
    }
    while (j > i) {
      const Letter& l = ls[j - 1];
      int prv = l.sign > 0 ? bwd_[static_cast<size_t>(l.gen)][static_cast<size_t>(d)]
                           : fwd_[static_cast<size_t>(l.gen)][static_cast<size_t>(d)];
      if (prv < 0) break;
      d = prv;
      --j;
    }
    if (i == j) return c == d;
    if (i + 1 == j) {
      const Letter& l = ls[i];
      if (l.sign > 0)
        define(l.gen, c, d);
      else
        define(l.gen, d, c);
      deduced = true;
    }
    return true;
  }

  bool deduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n_; ++s)
        for (const Word* r : relators_)
          if (!scan(*r, s, changed)) return false;
    }
    return true;
  }

  bool complete() const {
    for (int s = 0; s < n_; ++s)
      for (int g = 0; g < gens_; ++g)
        if (fwd_[static_cast<size_t>(g)][static_cast<size_t>(s)] < 0 ||
            bwd_[static_cast<size_t>(g)][static_cast<size_t>(s)] < 0)
          return false;
    return true;
  }

  void emit() {
    std::vector<std::vector<int>> perms(static_cast<size_t>(gens_));
    for (int g = 0; g < gens_; ++g)
      perms[static_cast<size_t>(g)] =
          std::vector<int>(fwd_[static_cast<size_t>(g)].begin(),
                           fwd_[static_cast<size_t>(g)].begin() + n_);
    out_.push_back(make_coset_table(n_, std::move(perms)));
  }

  void search() {
    int bs = -1, bg = -1, bdir = 0;
    for (int s = 0; s < n_ && bs < 0; ++s)
      for (int g = 0; g < gens_ && bs < 0; ++g) {
        if (fwd_[static_cast<size_t>(g)][static_cast<size_t>(s)] < 0) {
          bs = s, bg = g, bdir = +1;
        } else if (bwd_[static_cast<size_t>(g)][static_cast<size_t>(s)] < 0) {
          bs = s, bg = g, bdir = -1;
        }
      }
    if (bs < 0) {
      emit();
      return;
    }
    const auto& free_side = bdir > 0 ? bwd_[static_cast<size_t>(bg)]
                                     : fwd_[static_cast<size_t>(bg)];
    for (int t = 0; t <= n_; ++t) {
      if (t < n_ && free_side[static_cast<size_t>(t)] >= 0) continue;
      if (t == n_ && n_ == max_) break;
      if (--budget_ < 0) throw Error("low_index: node budget exceeded");
      size_t mark = trail_.size();
      if (t == n_) {
        trail_.push_back({-1, 0, 0});
        ++n_;
      }
      if (bdir > 0)
        define(bg, bs, t);
      else
        define(bg, t, bs);
      if (deduce()) search();
      undo_to(mark);
    }
  }

  int gens_, max_;
  long budget_;
  std::vector<const Word*> relators_;
  std::vector<std::vector<int>> fwd_, bwd_;
  int n_ = 1;
  std::vector<Entry> trail_;
  std::vector<CosetTable> out_;
};

std::vector<int> flatten(const CosetTable& t) {
  std::vector<int> v;
  v.reserve(static_cast<size_t>(t.index) * t.perms.size());
  for (int s = 0; s < t.index; ++s)
    for (const auto& perm : t.perms) v.push_back(perm[static_cast<size_t>(s)]);
  return v;
}

/// Relabel cosets so `base` becomes 0 and the rest are numbered by first
/// occurrence in scan order; standard-form tables are fixed points at base 0.
CosetTable rebase_standard(const CosetTable& t, int base) {
  const auto inv = inverse_perms(t);
  const int n = static_cast<int>(t.index);
  const int g = static_cast<int>(t.perms.size());
  std::vector<int> old_of = {base};
  std::vector<int> new_of(static_cast<size_t>(n), -1);
  new_of[static_cast<size_t>(base)] = 0;
  old_of.reserve(static_cast<size_t>(n));
  for (int ns = 0; ns < n; ++ns) {
    const int os = old_of[static_cast<size_t>(ns)];
    for (int k = 0; k < g; ++k) {
      for (int dir = 0; dir < 2; ++dir) {
        const int ot = dir == 0 ? t.perms[static_cast<size_t>(k)][static_cast<size_t>(os)]
                                : inv[static_cast<size_t>(k)][static_cast<size_t>(os)];
        if (new_of[static_cast<size_t>(ot)] < 0) {
          new_of[static_cast<size_t>(ot)] = static_cast<int>(old_of.size());
          old_of.push_back(ot);
        }
      }
    }
  }
  std::vector<std::vector<int>> perms(static_cast<size_t>(g),
                                      std::vector<int>(static_cast<size_t>(n)));
  for (int k = 0; k < g; ++k)
    for (int ns = 0; ns < n; ++ns)
      perms[static_cast<size_t>(k)][static_cast<size_t>(ns)] = new_of[static_cast<size_t>(
          t.perms[static_cast<size_t>(k)][static_cast<size_t>(old_of[static_cast<size_t>(ns)])])];
  CosetTable out;
  out.index = n;
  out.perms = std::move(perms);
  return out;
}

}  // namespace

CosetTable make_coset_table(Index index, std::vector<std::vector<int>> perms) {
  if (index < 1) throw Error("CosetTable: index must be positive");
  for (const auto& p : perms) {
    if (static_cast<Index>(p.size()) != index)
      throw Error("CosetTable: permutation length mismatch");
    std::vector<bool> seen(static_cast<size_t>(index), false);
    for (int v : p) {
      if (v < 0 || v >= index || seen[static_cast<size_t>(v)])
        throw Error("CosetTable: column is not a permutation");
      seen[static_cast<size_t>(v)] = true;
    }
  }
  CosetTable t;
  t.index = index;
  t.perms = std::move(perms);
  // Transitivity: every coset reachable from the basepoint.
  std::vector<bool> vis(static_cast<size_t>(index), false);
  std::queue<int> q;
  q.push(0);
  vis[0] = true;
  Index cnt = 1;
  const auto inv = inverse_perms(t);
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (size_t g = 0; g < t.perms.size(); ++g)
      for (int nxt : {t.perms[g][static_cast<size_t>(s)], inv[g][static_cast<size_t>(s)]})
        if (!vis[static_cast<size_t>(nxt)]) {
          vis[static_cast<size_t>(nxt)] = true;
          ++cnt;
          q.push(nxt);
        }
  }
  if (cnt != index) throw Error("CosetTable: action is not transitive");
  return t;
}

std::vector<int> word_action(const CosetTable& t, const Word& w) {
  const auto inv = inverse_perms(t);
  std::vector<int> out(static_cast<size_t>(t.index));
  for (int s = 0; s < t.index; ++s) {
    int c = s;
    for (const Letter& l : w.letters())
      c = l.sign > 0 ? t.perms[static_cast<size_t>(l.gen)][static_cast<size_t>(c)]
                     : inv[static_cast<size_t>(l.gen)][static_cast<size_t>(c)];
    out[static_cast<size_t>(s)] = c;
  }
  return out;
}

int apply_word(const CosetTable& t, int coset, const Word& w) {
  if (coset < 0 || coset >= t.index) throw Error("apply_word: coset out of range");
  const auto inv = inverse_perms(t);
  int c = coset;
  for (const Letter& l : w.letters())
    c = l.sign > 0 ? t.perms[static_cast<size_t>(l.gen)][static_cast<size_t>(c)]
                   : inv[static_cast<size_t>(l.gen)][static_cast<size_t>(c)];
  return c;
}

Rat normalized_trace(const CosetTable& t, const Word& w) {
  const auto act = word_action(t, w);
  long fix = 0;
  for (int s = 0; s < t.index; ++s)
    if (act[static_cast<size_t>(s)] == s) ++fix;
  Rat r(fix, t.index);
  r.canonicalize();
  return r;
}

CycleType cycle_type(const std::vector<int>& perm) {
  CycleType ct;
  ct.degree = static_cast<Index>(perm.size());
  std::vector<bool> vis(perm.size(), false);
  for (size_t s = 0; s < perm.size(); ++s) {
    if (vis[s]) continue;
    int len = 0;
    size_t c = s;
    while (!vis[c]) {
      vis[c] = true;
      c = static_cast<size_t>(perm[c]);
      ++len;
    }
    ++ct.counts[len];
  }
  return ct;
}

CycleType cycle_type(const CosetTable& t, const Word& w) {
  return cycle_type(word_action(t, w));
}

Index cycle_count(const std::vector<int>& perm) {
  Index n = 0;
  for (const auto& [len, cnt] : cycle_type(perm).counts) n += cnt;
  return n;
}

bool kills_relators(const CosetTable& t, const GroupPresentation& p) {
  for (const Word& r : p.relators) {
    const auto act = word_action(t, r);
    for (int s = 0; s < t.index; ++s)
      if (act[static_cast<size_t>(s)] != s) return false;
  }
  return true;
}

std::vector<CosetTable> low_index_tables(const GroupPresentation& p, int max_index,
                                         const LowIndexOptions& opts) {
  if (max_index < 1) throw Error("low_index: max_index must be positive");
  LowIndexSearch search(p, max_index, opts.node_budget);
  std::vector<CosetTable> tables = search.run();
  std::vector<CosetTable> kept;
  for (CosetTable& t : tables) {
    if (!opts.expand_conjugates) {
      // Keep one subgroup per conjugacy class: the table minimal among all
      // basepoint changes.
      const std::vector<int> self = flatten(t);
      bool minimal = true;
      for (int b = 1; b < t.index && minimal; ++b)
        if (flatten(rebase_standard(t, b)) < self) minimal = false;
      if (!minimal) continue;
    }
    kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end(), [](const CosetTable& a, const CosetTable& b) {
    if (a.index != b.index) return a.index < b.index;
    return flatten(a) < flatten(b);
  });
  return kept;
}

CosetTable cyclic_cover_table(const GroupPresentation& p, int n) {
  if (n < 1) throw Error("cyclic_cover_table: n must be positive");
  const std::vector<long> deg = abelianization_degrees(p);
  std::vector<std::vector<int>> perms;
  perms.reserve(deg.size());
  for (long d : deg) {
    const int shift = static_cast<int>(((d % n) + n) % n);
    std::vector<int> perm(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) perm[static_cast<size_t>(s)] = (s + shift) % n;
    perms.push_back(std::move(perm));
  }
  return make_coset_table(n, std::move(perms));
}

std::string to_text(const CosetTable& t, const std::vector<std::string>& names) {
  if (names.size() != t.perms.size())
    throw Error("coset table serialization: generator count mismatch");
  std::ostringstream os;
  os << "index " << t.index << '\n';
  for (size_t g = 0; g < names.size(); ++g) {
    os << names[g] << ':';
    for (int s = 0; s < t.index; ++s) os << ' ' << t.perms[g][static_cast<size_t>(s)];
    os << '\n';
  }
  return os.str();
}

CosetTable table_from_text(const std::string& text,
                           const std::vector<std::string>& names) {
  std::istringstream is(text);
  std::string tok;
  if (!(is >> tok) || tok != "index")
    throw Error("coset table: expected 'index N' header");
  Index n = 0;
  if (!(is >> n) || n < 1) throw Error("coset table: bad index");
  std::vector<std::vector<int>> perms(names.size());
  std::vector<bool> seen(names.size(), false);
  for (size_t row = 0; row < names.size(); ++row) {
    std::string name;
    if (!(is >> name)) throw Error("coset table: missing generator row");
    if (name.empty() || name.back() != ':')
      throw Error("coset table: expected 'name:' row");
    name.pop_back();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error("coset table: unknown generator '" + name + "'");
    size_t g = static_cast<size_t>(it - names.begin());
    if (seen[g]) throw Error("coset table: duplicate row for '" + name + "'");
    seen[g] = true;
    perms[g].resize(static_cast<size_t>(n));
    for (Index s = 0; s < n; ++s)
      if (!(is >> perms[g][static_cast<size_t>(s)]))
        throw Error("coset table: truncated row for '" + name + "'");
  }
  if (is >> tok) throw Error("coset table: trailing data");
  return make_coset_table(n, std::move(perms));
}

TraceReport trace_convergence_report(const std::vector<Word>& words,
                                     const std::vector<CosetTable>& tables) {
  TraceReport rep;
  rep.words = words;
  for (const CosetTable& t : tables) rep.indices.push_back(t.index);
  for (const Word& w : words) {
    std::vector<Rat> row;
    row.reserve(tables.size());
    for (const CosetTable& t : tables) row.push_back(normalized_trace(t, w));
    rep.values.push_back(std::move(row));
    rep.target.emplace_back(w.empty() ? 1 : 0);
  }
  return rep;
}

}  // namespace torsionlab
