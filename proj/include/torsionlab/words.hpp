#pragma once

#include "torsionlab/numeric.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace torsionlab {

/// One letter of a word in a free group: generator index plus sign.
struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word. The constructor and all operations reduce, so
/// adjacent inverse pairs never survive.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(int gen, int sign = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  size_t size() const { return letters_.size(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word pow(int e) const;

  /// Net exponent of generator `gen`.
  long exponent_sum(int gen) const;
  int max_generator() const;  // -1 when empty

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Element of the integral group ring of a free group: finite formal sum
/// of words with integer coefficients.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  static GroupRingElement zero() { return {}; }
  static GroupRingElement one();
  static GroupRingElement of_word(const Word& w, Int coeff = 1);

  const std::map<Word, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupRingElement operator+(const GroupRingElement& rhs) const;
  GroupRingElement operator-(const GroupRingElement& rhs) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& rhs) const;
  GroupRingElement& operator+=(const GroupRingElement& rhs);
  GroupRingElement& operator-=(const GroupRingElement& rhs);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

  /// Sum of coefficients (image under the augmentation map g -> 1).
  Int augmentation() const;
  /// Sum of absolute values of coefficients.
  Int l1_norm() const;

 private:
  void add_term(const Word& w, const Int& c);
  std::map<Word, Int> terms_;
};

/// Dense matrix over the group ring. Plain storage; the induced integer
/// matrices live in Eigen, this type only has to hold Fox derivatives.
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  GroupRingElement& operator()(Index i, Index j);
  const GroupRingElement& operator()(Index i, Index j) const;

  GroupRingMatrix block(Index i0, Index j0, Index r, Index c) const;

 private:
  Index rows_ = 0, cols_ = 0;
  std::vector<GroupRingElement> entries_;
};

std::string to_string(const Word& w, const std::vector<std::string>& names);
std::string to_string(const GroupRingElement& e, const std::vector<std::string>& names);

}  // namespace torsionlab
