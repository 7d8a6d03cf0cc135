#pragma once

#include "torsionlab/presentation.hpp"

#include <map>
#include <string>
#include <vector>

namespace torsionlab {

/// Transitive right action of the generators on cosets {0..index-1},
/// basepoint 0. One permutation per generator.
struct CosetTable {
  Index index = 1;
  std::vector<std::vector<int>> perms;

  friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

/// Validating factory: checks permutations and transitivity.
CosetTable make_coset_table(Index index, std::vector<std::vector<int>> perms);

/// Permutation induced by a word (letters act right to left composition-wise:
/// result[s] = s.w).
std::vector<int> word_action(const CosetTable& t, const Word& w);

int apply_word(const CosetTable& t, int coset, const Word& w);

/// Fraction of fixed cosets, the finite-quotient trace diagnostic.
Rat normalized_trace(const CosetTable& t, const Word& w);

/// Multiset of cycle lengths of a permutation.
struct CycleType {
  std::map<int, Index> counts;  // length -> how many cycles
  Index degree = 0;
};
CycleType cycle_type(const std::vector<int>& perm);
CycleType cycle_type(const CosetTable& t, const Word& w);

Index cycle_count(const std::vector<int>& perm);

bool kills_relators(const CosetTable& t, const GroupPresentation& p);

struct LowIndexOptions {
  long node_budget = 50'000'000;
  bool expand_conjugates = false;  // emit every subgroup, not one per class
};

/// All coset tables of subgroups of index <= max_index, in standard form,
/// one per conjugacy class unless expand_conjugates is set. Output is sorted
/// by (index, table entries), so the result for max_index k is a prefix of
/// the result for k+1.
std::vector<CosetTable> low_index_tables(const GroupPresentation& p, int max_index,
                                         const LowIndexOptions& opts = {});

/// Table of the degree-n cyclic cover: each generator shifts Z/n by its
/// abelianization degree.
CosetTable cyclic_cover_table(const GroupPresentation& p, int n);

std::string to_text(const CosetTable& t, const std::vector<std::string>& names);
CosetTable table_from_text(const std::string& text,
                           const std::vector<std::string>& names);

/// Normalized traces of a list of words across a list of finite quotients,
/// next to the regular-representation target value (1 for the empty word,
/// 0 otherwise).
struct TraceReport {
  std::vector<Word> words;
  std::vector<Index> indices;
  std::vector<std::vector<Rat>> values;  // values[word][table]
  std::vector<Rat> target;
};
TraceReport trace_convergence_report(const std::vector<Word>& words,
                                     const std::vector<CosetTable>& tables);

}  // namespace torsionlab
