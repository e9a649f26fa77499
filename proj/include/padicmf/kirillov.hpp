#pragma once

#include <map>
#include <string>
#include <vector>

#include "padicmf/profinite.hpp"

namespace padicmf {

/**
 * A function on Q_p^x given by finite data.
 *
 * Valuations v < v_min are zero.  For v in [v_min, v_cut] the function is an
 * explicit locally constant function of the unit part (a "shell").  For
 * v > v_cut it is the sum of the character tails, so the tails are the germ
 * of the function at 0.
 */
class KirillovFn {
 public:
  /// `shells` may also hold entries in (v_cut, v_cut + 3]; those must agree
  /// with the tails and are then dropped.  Anything else outside
  /// [v_min, v_cut] is rejected.  Requires v_cut >= v_min - 1.
  KirillovFn(long p, int k, int v_min, int v_cut, std::map<int, LocConstFn> shells, std::vector<CharTail> tails);

  static KirillovFn zero(long p, int k);
  /// 1_{Z_p} times the tail's chi_{a,b}: the germ alone, supported on Z_p.
  static KirillovFn char_line(const CharTail& tail);

  long prime() const { return p_; }
  int precision() const { return k_; }
  int v_min() const { return v_min_; }
  int v_cut() const { return v_cut_; }
  const std::vector<CharTail>& tails() const { return tails_; }

  /// Explicit shell, materialized tail, or zero, whichever applies at v.
  LocConstFn shell_at(int v) const;
  PadicApprox operator()(int v, const mpz_class& unit) const;
  PadicApprox operator()(const QpPoint& x) const { return (*this)(x.v, x.unit.residue()); }

  /// Same function with the tails materialized into shells up to `v_cut`.
  KirillovFn with_cut(int v_cut) const;
  /// Same function with explicit zero shells down to `v_min`.
  KirillovFn with_floor(int v_min) const;

  /// Every shell vanishes and the normalized tail list is empty.
  bool is_zero() const;

  KirillovFn scaled(const PadicApprox& c) const;
  friend KirillovFn operator+(const KirillovFn& g, const KirillovFn& h);
  friend KirillovFn operator-(const KirillovFn& g, const KirillovFn& h);
  /// Same shells after alignment and the same normalized germ.
  friend bool same_function(const KirillovFn& g, const KirillovFn& h);

 private:
  long p_;
  int k_;
  int v_min_;
  int v_cut_;
  std::vector<LocConstFn> shells_;  // index v - v_min
  std::vector<CharTail> tails_;
};

/// Merge tails of the same (chi, a, b) shape and drop zero coefficients.
std::vector<CharTail> normalize_tails(const std::vector<CharTail>& tails);

/// The tail as an explicit shell at valuation v.
LocConstFn materialize_tails(const std::vector<CharTail>& tails, long p, int k, int v);

/// Pointwise product with a locally constant function on Q_p (f on Z_p,
/// its recorded constant off Z_p).
KirillovFn fn_mul_action(const LocConstFn& f, const KirillovFn& g);

/// The germ at 0: the coinvariant class of g.
std::vector<CharTail> fiber_at_zero(const KirillovFn& g);

/// (U_p g)(x) = 1_{Z_p}(x) g(px).
KirillovFn kir_up(const KirillovFn& g);
/// (a . g)(x) = g(a x).
KirillovFn kir_scale(const QpPoint& a, const KirillovFn& g);

/// CSV dump: shell rows (v,u,value) then a tail block.
std::string kirillov_csv(const KirillovFn& g);

}  // namespace padicmf
