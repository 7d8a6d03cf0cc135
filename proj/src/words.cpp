#include "torsionlab/words.hpp"

#include <algorithm>
#include <sstream>

namespace torsionlab {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.sign != 1 && l.sign != -1) throw Error("Word: letter sign must be +-1");
    if (l.gen < 0) throw Error("Word: negative generator index");
    push_reduced(letters_, l);
  }
}

Word Word::generator(int gen, int sign) { return Word({Letter{gen, sign}}); }

Word Word::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& l : rev) l.sign = -l.sign;
  Word w;
  w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
  return w;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  for (const Letter& l : rhs.letters_) push_reduced(out, l);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  Word acc;
  for (int i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

long Word::exponent_sum(int gen) const {
  long s = 0;
  for (const Letter& l : letters_)
    if (l.gen == gen) s += l.sign;
  return s;
}

int Word::max_generator() const {
  int m = -1;
  for (const Letter& l : letters_) m = std::max(m, l.gen);
  return m;
}

GroupRingElement GroupRingElement::one() { return of_word(Word{}); }

GroupRingElement GroupRingElement::of_word(const Word& w, Int coeff) {
  GroupRingElement e;
  if (coeff != 0) e.terms_.emplace(w, std::move(coeff));
  return e;
}

void GroupRingElement::add_term(const Word& w, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& rhs) const {
  GroupRingElement out = *this;
  out += rhs;
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& rhs) const {
  GroupRingElement out = *this;
  out -= rhs;
  return out;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& rhs) const {
  GroupRingElement out;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : rhs.terms_) out.add_term(w1 * w2, c1 * c2);
  return out;
}

Int GroupRingElement::augmentation() const {
  Int s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

Int GroupRingElement::l1_norm() const {
  Int s = 0;
  for (const auto& [w, c] : terms_) s += abs(c);
  return s;
}

GroupRingMatrix::GroupRingMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows * cols)) {
  if (rows < 0 || cols < 0) throw Error("GroupRingMatrix: negative dimension");
}

GroupRingElement& GroupRingMatrix::operator()(Index i, Index j) {
  return entries_[static_cast<size_t>(i * cols_ + j)];
}

const GroupRingElement& GroupRingMatrix::operator()(Index i, Index j) const {
  return entries_[static_cast<size_t>(i * cols_ + j)];
}

GroupRingMatrix GroupRingMatrix::block(Index i0, Index j0, Index r, Index c) const {
  if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
    throw Error("GroupRingMatrix::block: out of range");
  GroupRingMatrix out(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
  return out;
}

std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  const auto& ls = w.letters();
  for (size_t i = 0; i < ls.size();) {
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long e = static_cast<long>(j - i) * ls[i].sign;
    if (i > 0) os << ' ';
    os << names.at(static_cast<size_t>(ls[i].gen));
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

std::string to_string(const GroupRingElement& e, const std::vector<std::string>& names) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    Int a = abs(c);
    if (first) {
      if (c < 0) os << "- ";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || w.empty()) os << a.get_str() << (w.empty() ? "" : "*");
    if (!w.empty()) os << to_string(w, names);
    first = false;
  }
  return os.str();
}

}  // namespace torsionlab
