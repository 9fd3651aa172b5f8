#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "padicsa/eval.hpp"
#include "padicsa/lang.hpp"
#include "padicsa/padic.hpp"

namespace padicsa {

/// The finite universe {0} u {p^v u : -B <= v <= B, 1 <= u < p^k, p does
/// not divide u}, ordered with 0 first, then by v, then by u. Points are
/// produced on demand; nothing is materialised.
class TruncatedSample {
 public:
  static constexpr std::uint64_t kDefaultCap = 20'000'000;

  TruncatedSample(const PadicConfig& cfg, long window, int digits, std::uint64_t cap = kDefaultCap);

  const PadicConfig& config() const { return cfg_; }
  long prime() const { return cfg_.p; }
  long window() const { return B_; }
  int digits() const { return k_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t units_per_valuation() const { return units_; }

  SamplePoint at(std::uint64_t i) const;

  template <typename F>
  void for_each(F&& fn) const {
    SamplePoint z;
    fn(z);
    for (long v = -B_; v <= B_; ++v) {
      SamplePoint s;
      s.zero = false;
      s.v = v;
      for (std::uint64_t u = 1; u < pk_; ++u) {
        if (u % static_cast<std::uint64_t>(cfg_.p) == 0) continue;
        s.u = u;
        fn(s);
      }
    }
  }

 private:
  PadicConfig cfg_;
  long B_;
  int k_;
  std::uint64_t pk_;
  std::uint64_t units_;
  std::uint64_t size_;
};

enum class Verdict { NO = 0, YES = 1, ERROR = 2 };

const char* verdict_name(Verdict v);

struct Mismatch {
  SamplePoint point;
  Verdict a;
  Verdict b;
};

using Membership = std::function<bool(const SamplePoint&)>;

/// Runs a membership test, mapping library errors to Verdict::ERROR.
Verdict verdict_of(const Membership& m, const SamplePoint& s);

/// Direct semantics of a formula at a point of the sample.
bool decide(const Formula& f, const SamplePoint& t, const PadicConfig& cfg);

/// Points where the two descriptions disagree.
std::vector<Mismatch> equiv(const Membership& a, const Membership& b, const TruncatedSample& s,
                            std::size_t max_report = SIZE_MAX);
std::vector<Mismatch> equiv(const Formula& a, const NormalForm& b, const TruncatedSample& s);
std::vector<Mismatch> equiv(const Formula& a, const Formula& b, const TruncatedSample& s);

/// Same comparison over sample^arity for formulas in several variables,
/// using the reference semantics; returns the disagreeing tuples.
std::vector<std::vector<SamplePoint>> equiv_tuples(const Formula& a, const Formula& b, const TruncatedSample& s,
                                                   std::size_t arity, std::uint64_t cap = 2'000'000);

/// Seeded generator with output fixed across platforms (the raw
/// mt19937_64 stream, reduced by modulo rather than std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  /// In [0, n).
  std::uint64_t below(std::uint64_t n) { return g_() % n; }
  /// In [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 g_;
};

}  // namespace padicsa
