#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "padicsa/lang.hpp"
#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"

namespace padicsa {

/// An exact point p^v * u of Q_p with u a positive integer prime to p, or 0.
struct SamplePoint {
  bool zero = true;
  long v = 0;
  std::uint64_t u = 0;

  PadicNumber to_padic(long p) const;
  mpq_class to_rational(long p) const;
  bool operator==(const SamplePoint&) const = default;
};

/// Valuation and leading unit digits of a value; unit taken mod p^D.
struct AtomValue {
  bool zero = true;
  long v = 0;
  std::uint64_t u = 0;
};

/// Exact evaluation of a univariate rational polynomial at sample points,
/// in 128-bit integer arithmetic with a GMP fallback on overflow.
class PolyKernel {
 public:
  PolyKernel(const UPoly& f, long p, int digits);
  AtomValue eval(const SamplePoint& t) const;
  int digits() const { return digits_; }

 private:
  long p_;
  int digits_;
  std::uint64_t pD_;
  bool zero_poly_ = false;
  std::vector<mpz_class> coeffs_;
  std::vector<__int128> coeffs128_;
  bool fits128_ = false;
  long scale_v_ = 0;
  std::uint64_t scale_u_ = 0;  // unit of the content, mod p^D
  int degree_ = 0;

  AtomValue finish(long vX, std::uint64_t unitX, long S) const;
};

/// Compiled univariate formula or normal form, evaluated on sample points
/// through PolyKernel and coset tables. Results agree with `decide`.
class FastEvaluator {
 public:
  FastEvaluator(const Formula& f, const PadicConfig& cfg);
  FastEvaluator(const NormalForm& nf, const PadicConfig& cfg);

  bool eval(const SamplePoint& t);
  /// Unit digits the compiled conditions inspect.
  int digits() const { return digits_; }

 private:
  struct Cond {
    CondKind kind;
    int f = -1, g = -1;
    long N = 1;
    int r = 0;
    bool star = false;
    long M = 1;
    std::shared_ptr<const CosetTable> table;
    std::uint64_t pM = 1;
  };
  struct Node {
    Formula::Op op;
    int cond = -1;
    std::vector<int> kids;
  };

  PadicConfig cfg_;
  int digits_ = 1;
  std::vector<MPoly> polys_;
  std::vector<PolyKernel> kernels_;
  std::vector<Cond> conds_;
  std::vector<Node> nodes_;
  int root_ = -1;
  bool is_nf_ = false;
  std::vector<std::vector<int>> nf_;

  std::vector<AtomValue> vals_;
  std::vector<char> have_;
  const SamplePoint* cur_ = nullptr;

  int poly_index(const MPoly& m);
  int add_cond(const BasicCondition& c);
  int add_node(const Formula& f);
  void compile_kernels();
  const AtomValue& atom(int i);
  bool cond(int i);
  bool node(int i);
};

}  // namespace padicsa
