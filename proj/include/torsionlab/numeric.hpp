#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 60,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace torsionlab {

using Int = mpz_class;
using Rat = mpq_class;
using MatZ = Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<mpz_class, Eigen::Dynamic, 1>;
using MatD = Eigen::MatrixXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Natural log of a positive integer, valid far beyond double range.
inline double log_int(const Int& x) {
  if (x <= 0) throw Error("log_int: argument must be positive");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

inline double log_rat(const Rat& x) {
  if (x <= 0) throw Error("log_rat: argument must be positive");
  return log_int(x.get_num()) - log_int(x.get_den());
}

/// Exact integer square root; throws unless x is a perfect square.
inline Int exact_sqrt(const Int& x) {
  if (x < 0) throw Error("exact_sqrt: negative argument");
  Int r = sqrt(x);
  if (r * r != x) throw Error("exact_sqrt: not a perfect square");
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Division rounded to nearest (ties toward zero); keeps remainders small
/// during integer eliminations.
inline Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

inline MatD to_double(const MatZ& m) {
  MatD out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

}  // namespace torsionlab
