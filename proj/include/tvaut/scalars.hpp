#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact scalar layer: GMP rationals/integers as Eigen scalar types.
// No floating point anywhere in this project.

namespace Eigen {

template <> struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <> struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 120,
    MulCost = 80
  };
};

} // namespace Eigen

namespace tvaut {

using Int = mpz_class;
using Rat = mpq_class;

using QVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using ZVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using ZMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

// Error category drives the CLI exit code: 1 input, 2 unsupported, 3 internal.
enum class ErrorCategory { Input, Unsupported, Internal };

class TvError : public std::runtime_error {
public:
  TvError(ErrorCategory cat, std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), cat_(cat), code_(std::move(code)) {}
  ErrorCategory category() const { return cat_; }
  const std::string& code() const { return code_; }

private:
  ErrorCategory cat_;
  std::string code_;
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& msg) {
  throw TvError(ErrorCategory::Input, code, msg);
}
[[noreturn]] inline void fail_unsupported(const std::string& code, const std::string& msg) {
  throw TvError(ErrorCategory::Unsupported, code, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw TvError(ErrorCategory::Internal, "Internal", msg);
}

// Failed internal assertions must surface, never pass silently.
#define TVAUT_CHECK(cond, msg)                                                 \
  do {                                                                         \
    if (!(cond)) ::tvaut::fail_internal(msg);                                  \
  } while (0)

int lex_cmp(const QVec& a, const QVec& b);
int lex_cmp(const ZVec& a, const ZVec& b);
bool vec_eq(const QVec& a, const QVec& b);
bool vec_eq(const ZVec& a, const ZVec& b);

bool is_integral(const Rat& x);
bool is_integral(const QVec& v);
ZVec to_integral(const QVec& v); // precondition: is_integral(v)
QVec to_rational(const ZVec& v);

// Scalar string grammar: "p" or "p/q" with integer p, q and q != 0.
Rat parse_rational(const std::string& s);
Int parse_integer(const std::string& s);
std::string format_rational(const Rat& x);
std::string format_integer(const Int& x);

} // namespace tvaut
