#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicmf/profinite.hpp"

namespace padicmf {

enum class RepKind { PrincipalSeries, Special, Supercuspidal, OneDimensional };
enum class Splitness { Split, NonSplit, Unknown };

std::string to_string(RepKind kind);
std::string to_string(Splitness s);
Splitness parse_splitness(const std::string& s);

/**
 * One Jacquet character in combined form: its value at p is the Frobenius
 * eigenvalue itself.  When that eigenvalue is not in Z_p (or not known to
 * enough precision) only its valuation is recorded.
 */
struct LocalChar {
  std::optional<SmoothChar> chi;
  double valuation = 0;
  bool unramified = false;
};

struct LocalParams {
  long p = 2;
  int k = 1;
  RepKind kind = RepKind::PrincipalSeries;
  std::vector<LocalChar> chars;
  std::optional<int> weight;
  /// alpha * beta / p^(w-1), when known independently of the characters.
  std::optional<PadicApprox> det_unit;
};

/// Checks the valuation sum v(alpha) + v(beta) = w - 1 when a weight is given.
LocalParams principal_series(LocalChar a, LocalChar b, long p, int k, std::optional<int> weight = std::nullopt);
LocalParams principal_series(const SmoothChar& a, const SmoothChar& b, std::optional<int> weight = std::nullopt);
/// Checks 2 v(alpha) + 1 = w - 1 when a weight is given.
LocalParams special(const SmoothChar& chi, std::optional<int> weight = std::nullopt);
LocalParams supercuspidal(long p, int k, std::optional<int> weight = std::nullopt);
LocalParams one_dimensional(const SmoothChar& chi);

struct Classification {
  RepKind kind;
  bool irreducible;
  std::string witness;
};
/// B(chi1, chi2) is reducible iff the unit parts agree and alpha/beta = p^(+-1).
Classification classify(const LocalParams& params);

struct JacquetEntry {
  SmoothChar chi;
  bool extension;
};
std::vector<JacquetEntry> jacquet(const LocalParams& params);
/// 2, 1, 0 by kind; throws for one-dimensional kinds.
size_t jacquet_dim(const LocalParams& params);

/// The 1_{Z_p} chi_{a,0} lines added to compactly supported functions.
std::vector<CharTail> kirillov_lines(const LocalParams& params);
/// Lines whose character has a unit value at p; at most one.
std::vector<CharTail> completion_basis(const LocalParams& params);

/// z -> omega_p(z) z^(-w): `smooth` carries the unit table chi1 chi2 and the
/// value omega_p(p) p^(-w) = alpha beta / p^(w-1); units also see u^exponent.
struct CentralChar {
  SmoothChar smooth;
  int algebraic_exponent;
};
CentralChar central_char(const LocalParams& params, int weight);
PadicApprox central_char_eval(const CentralChar& omega, const QpPoint& z);

struct PredictedSpace {
  std::vector<CharTail> lower;
  std::vector<CharTail> upper;
  std::vector<std::string> warnings;
};
/// Bounds for W: compactly supported functions plus the listed tails.
PredictedSpace predict_W(const LocalParams& params, Splitness splitness, int m_window);

nlohmann::ordered_json tail_json(const CharTail& t, const LocalParams& params);
nlohmann::ordered_json local_report(const LocalParams& params, Splitness splitness, int m_window);

}  // namespace padicmf
