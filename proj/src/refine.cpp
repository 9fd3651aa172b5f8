#include "padicsa/refine.hpp"

#include <set>

#include "padicsa/error.hpp"

namespace padicsa {

namespace {

struct Ball {
  PadicNumber center;
  int center_root;
  long lower;  // kNegInf at the top level
};

class Refiner {
 public:
  Refiner(const SplitSystem& sys, int n, Refinement& out) : sys_(sys), n_(n), out_(out) {}

  void run(const Ball& b) {
    const std::size_t R = sys_.roots.size();
    std::vector<PadicNumber> diff(R);  // c - c_j
    std::vector<long> delta(R, kPosInf);
    for (std::size_t j = 0; j < R; ++j) {
      if (static_cast<int>(j) == b.center_root) continue;
      diff[j] = b.center - sys_.roots[j];
      delta[j] = diff[j].valuation();
    }

    emit_point(b, diff);

    std::set<long> bad;
    for (std::size_t j = 0; j < R; ++j) {
      if (delta[j] == kPosInf) continue;
      long hi = delta[j] + n_ - 1;
      if (b.lower != kNegInf && hi < b.lower) continue;
      long lo = delta[j] - n_ + 1;
      if (b.lower != kNegInf) lo = std::max(lo, b.lower);
      for (long w = lo; w <= hi; ++w) bad.insert(w);
    }

    long cur = b.lower;
    for (long w : bad) {
      if (cur == kNegInf || cur <= w - 1) emit_annulus(b, diff, delta, cur, w - 1);
      cur = w + 1;
    }
    emit_annulus(b, diff, delta, cur, kPosInf);

    for (long w : bad) {
      for (long d = 1; d < sys_.p; ++d) {
        int inside = -1;
        for (std::size_t j = 0; j < R && inside < 0; ++j) {
          if (delta[j] != w) continue;
          PadicNumber off = -diff[j];  // c_j - c
          if (off.digit_at(w) == d) inside = static_cast<int>(j);
        }
        Ball sub;
        sub.center_root = inside;
        sub.lower = w + 1;
        if (inside >= 0) {
          sub.center = sys_.roots[inside];
        } else {
          PadicNumber c = b.center + PadicNumber::from_rational(sys_.p, mpq_class(d)) *
                                         PadicNumber::uniformizer_power(sys_.p, w);
          sub.center = c.is_exact() ? c : PadicNumber::from_rational(sys_.p, c.truncation_below(w + 1));
        }
        run(sub);
      }
    }
  }

 private:
  PadicNumber one() const { return PadicNumber::from_rational(sys_.p, mpq_class(1)); }

  void emit_point(const Ball& b, const std::vector<PadicNumber>& diff) {
    RefinePiece piece;
    piece.point = true;
    piece.center = b.center;
    piece.center_root = b.center_root;
    for (std::size_t i = 0; i < sys_.polys.size(); ++i) {
      const auto& f = sys_.polys[i];
      if (f.zero) {
        piece.alpha.push_back(0);
        piece.h.push_back(PadicNumber::zero(sys_.p));
        continue;
      }
      int a = 0;
      PadicNumber h = PadicNumber::from_rational(sys_.p, f.lead);
      for (auto [j, m] : f.root_mult) {
        if (j == b.center_root)
          a += m;
        else
          h *= diff[j].pow(m);
      }
      piece.alpha.push_back(a);
      piece.h.push_back(h);
    }
    out_.pieces.push_back(std::move(piece));
  }

  void emit_annulus(const Ball& b, const std::vector<PadicNumber>& diff, const std::vector<long>& delta, long w1,
                    long w2) {
    RefinePiece piece;
    piece.center = b.center;
    piece.center_root = b.center_root;
    piece.w_lo = w1;
    piece.w_hi = w2;
    for (std::size_t i = 0; i < sys_.polys.size(); ++i) {
      const auto& f = sys_.polys[i];
      if (f.zero) {
        piece.alpha.push_back(0);
        piece.h.push_back(PadicNumber::zero(sys_.p));
        continue;
      }
      int a = 0;
      PadicNumber h = PadicNumber::from_rational(sys_.p, f.lead);
      for (auto [j, m] : f.root_mult) {
        if (j == b.center_root || (w2 != kPosInf && w2 <= delta[j] - n_))
          a += m;
        else
          h *= diff[j].pow(m);
      }
      piece.alpha.push_back(a);
      piece.h.push_back(h);
    }
    out_.pieces.push_back(std::move(piece));
  }

  const SplitSystem& sys_;
  int n_;
  Refinement& out_;
};

}  // namespace

Refinement refine(const std::vector<UPoly>& polys, int n, const PadicConfig& cfg) {
  if (n < 1) throw DomainError("refinement level must be at least 1");
  Refinement out;
  out.system = split_system(polys, cfg);
  out.level = n;
  Ball top;
  top.lower = kNegInf;
  if (out.system.roots.empty()) {
    top.center = PadicNumber::zero(cfg.p);
    top.center_root = -1;
  } else {
    top.center = out.system.roots[0];
    top.center_root = 0;
  }
  Refiner(out.system, n, out).run(top);
  return out;
}

}  // namespace padicsa
