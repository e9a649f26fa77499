#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padicmf/linalg.hpp"
#include "padicmf/newform.hpp"
#include "padicmf/qexp.hpp"

namespace padicmf {

/**
 * A finite list of q-expansions over Z/p^k whose coefficient rows are
 * certified independent at construction (unit Howell pivots only).
 */
class HeckeLattice {
 public:
  HeckeLattice(long p, std::vector<QExpansion> basis);

  long prime() const { return p_; }
  int precision() const { return k_; }
  long truncation() const { return N_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<QExpansion>& basis() const { return basis_; }

  /// Rows = basis vectors, columns = indices 1..window.
  PkMatrix coefficient_matrix(long window) const;
  /// sum_i x_i b_i.
  QExpansion combination(const std::vector<mpz_class>& x) const;

 private:
  long p_;
  int k_;
  long N_;
  std::vector<QExpansion> basis_;
};

/// Raised when U_p does not preserve the lattice on the usable window.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column i holds the coordinates of U_p b_i.
PkMatrix up_matrix(const HeckeLattice& lattice);

struct ProjectorResult {
  PkMatrix e;
  int steps;  // t with e = M^(t!)
};
/// e = lim M^(t!), iterated E_{t+1} = E_t^(t+1) until E_t is idempotent.
ProjectorResult ordinary_projector(const PkMatrix& m);

struct KernelReport {
  size_t dim = 0;
  size_t rank_e = 0;
  int n0 = 0;
  PkMatrix kernel_e;     // rows: generators of ker(e), Howell form
  PkMatrix kernel_pow;   // rows: generators of ker(M^n0), Howell form
  bool modules_equal = false;
  bool window_check = false;
  std::string window_detail;
  std::string verdict;   // "equal" or "differ"
};

/// Compares ker(e) with the vectors killed by U_p^n0, n0 = dim * k, both as
/// coordinate modules and on the q-expansion window.
KernelReport kernel_check(const HeckeLattice& lattice, const PkMatrix& m, const PkMatrix& e);

struct UnitEigenTail {
  PadicApprox alpha;
  int multiplicity;
  int jordan;  // least j with (eM - alpha)^j = 0 on the generalized eigenspace
  std::vector<CharTail> tails;
};

/// Unit generalized eigenvalues of e M with their chi_{a,0} tail families.
std::vector<UnitEigenTail> coinvariant_tails(const PkMatrix& m, const PkMatrix& e);

enum class RootChoice { Unit, NonUnit, Either };

struct Stabilization {
  QExpansion form;
  PadicApprox root;
  PadicApprox other;
  bool ordinary;
  std::vector<std::string> flags;
};

/// f(q) - other * f(q^p), a U_p eigenform with eigenvalue `root`; verified on
/// the window N/p and against root * other = chi(p) p^(w-1).
Stabilization stabilize(const NewformData& f, long p, int k, RootChoice choice);

nlohmann::ordered_json ordinary_report(const HeckeLattice& lattice);

}  // namespace padicmf
