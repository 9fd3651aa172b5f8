#include "padicsa/oracle.hpp"

namespace padicsa {

TruncatedSample::TruncatedSample(const PadicConfig& cfg, long window, int digits, std::uint64_t cap)
    : cfg_(cfg), B_(window), k_(digits) {
  if (window < 0) throw DomainError("valuation window must be >= 0");
  if (digits < 1) throw DomainError("sample digits must be >= 1");
  if (digits > cfg.work_prec) throw DomainError("sample digits exceed the working precision");
  mpz_class pk = pow_p(cfg.p, digits);
  if (pk >= (mpz_class(1) << 62)) throw SizeCap("p^k does not fit a machine word");
  pk_ = pk.get_ui();
  units_ = pk_ - pk_ / static_cast<std::uint64_t>(cfg.p);
  mpz_class total = mpz_class(2 * window + 1) * units_ + 1;
  if (total > cap) throw SizeCap("sample of " + total.get_str() + " points exceeds the cap");
  size_ = total.get_ui();
}

SamplePoint TruncatedSample::at(std::uint64_t i) const {
  if (i >= size_) throw DomainError("sample index out of range");
  SamplePoint s;
  if (i == 0) return s;
  std::uint64_t j = i - 1;
  std::uint64_t r = j % units_;
  std::uint64_t pm1 = static_cast<std::uint64_t>(cfg_.p) - 1;
  s.zero = false;
  s.v = -B_ + static_cast<long>(j / units_);
  s.u = r + r / pm1 + 1;
  return s;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NO: return "false";
    case Verdict::YES: return "true";
    case Verdict::ERROR: return "error";
  }
  return "?";
}

Verdict verdict_of(const Membership& m, const SamplePoint& s) {
  try {
    return m(s) ? Verdict::YES : Verdict::NO;
  } catch (const Error&) {
    return Verdict::ERROR;
  }
}

bool decide(const Formula& f, const SamplePoint& t, const PadicConfig& cfg) {
  return decide(f, std::vector<PadicNumber>{t.to_padic(cfg.p)}, cfg);
}

std::vector<Mismatch> equiv(const Membership& a, const Membership& b, const TruncatedSample& s,
                            std::size_t max_report) {
  std::vector<Mismatch> out;
  s.for_each([&](const SamplePoint& pt) {
    if (out.size() >= max_report) return;
    Verdict va = verdict_of(a, pt), vb = verdict_of(b, pt);
    if (va != vb) out.push_back({pt, va, vb});
  });
  return out;
}

std::vector<Mismatch> equiv(const Formula& a, const NormalForm& b, const TruncatedSample& s) {
  FastEvaluator ea(a, s.config()), eb(b, s.config());
  return equiv([&](const SamplePoint& t) { return ea.eval(t); }, [&](const SamplePoint& t) { return eb.eval(t); },
               s);
}

std::vector<Mismatch> equiv(const Formula& a, const Formula& b, const TruncatedSample& s) {
  FastEvaluator ea(a, s.config()), eb(b, s.config());
  return equiv([&](const SamplePoint& t) { return ea.eval(t); }, [&](const SamplePoint& t) { return eb.eval(t); },
               s);
}

std::vector<std::vector<SamplePoint>> equiv_tuples(const Formula& a, const Formula& b, const TruncatedSample& s,
                                                   std::size_t arity, std::uint64_t cap) {
  mpz_class total = 1;
  for (std::size_t i = 0; i < arity; ++i) total *= s.size();
  if (total > cap) throw SizeCap("tuple sample exceeds the cap");
  std::vector<std::vector<SamplePoint>> out;
  std::vector<std::uint64_t> idx(arity, 0);
  const PadicConfig& cfg = s.config();
  for (;;) {
    std::vector<PadicNumber> pt;
    std::vector<SamplePoint> raw;
    for (auto i : idx) {
      raw.push_back(s.at(i));
      pt.push_back(raw.back().to_padic(cfg.p));
    }
    auto verdict = [&](const Formula& f) {
      try {
        return decide(f, pt, cfg) ? Verdict::YES : Verdict::NO;
      } catch (const Error&) {
        return Verdict::ERROR;
      }
    };
    if (verdict(a) != verdict(b)) out.push_back(raw);
    std::size_t k = 0;
    while (k < arity && ++idx[k] == s.size()) idx[k++] = 0;
    if (k == arity) break;
  }
  return out;
}

}  // namespace padicsa
