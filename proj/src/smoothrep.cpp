#include "padicmf/smoothrep.hpp"

#include <cmath>

namespace padicmf {

namespace {

bool same_valuation(double a, double b) { return std::abs(a - b) < 1e-9; }

LocalChar from_char(const SmoothChar& chi) {
  return LocalChar{chi, static_cast<double>(chi.at_p().valuation()), chi.is_unramified()};
}

// Unit part of a value at p, when its valuation is below the precision.
std::optional<PadicApprox> unit_part(const SmoothChar& chi) {
  const PadicApprox& v = chi.at_p();
  if (v.is_zero()) return std::nullopt;
  return v.divide_by_p_power(v.valuation());
}

void check_weight(const LocalParams& params) {
  if (!params.weight) return;
  const int w = *params.weight;
  if (w < 2) throw std::invalid_argument("LocalParams: weight must be >= 2");
  auto bound = [&](const LocalChar& c) {
    // A value that vanishes mod p^k only bounds its valuation from below.
    const bool exact = !c.chi || !c.chi->at_p().is_zero();
    return std::pair<double, bool>{c.valuation, exact};
  };
  if (params.kind == RepKind::PrincipalSeries) {
    auto [v1, e1] = bound(params.chars[0]);
    auto [v2, e2] = bound(params.chars[1]);
    const double sum = v1 + v2;
    const bool ok = (e1 && e2) ? same_valuation(sum, w - 1) : sum <= w - 1 + 1e-9;
    if (!ok)
      throw std::invalid_argument("LocalParams: valuations " + std::to_string(v1) + " + " + std::to_string(v2) +
                                  " do not sum to weight - 1 = " + std::to_string(w - 1));
  } else if (params.kind == RepKind::Special) {
    const double v = params.chars[0].valuation;
    if (!same_valuation(2 * v + 1, w - 1))
      throw std::invalid_argument("LocalParams: special parameter needs 2 v(alpha) + 1 = weight - 1");
  }
}

std::optional<SmoothChar> unit_product(const LocalParams& params) {
  std::optional<SmoothChar> acc;
  for (const auto& c : params.chars) {
    SmoothChar part = c.chi ? *c.chi : SmoothChar::unramified(params.p, params.k, PadicApprox::one(params.p, params.k));
    if (!c.chi && !c.unramified) return std::nullopt;
    part = part.with_value_at_p(PadicApprox::one(params.p, params.k));
    acc = acc ? *acc * part : part;
  }
  return acc;
}

}  // namespace

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::PrincipalSeries: return "principal_series";
    case RepKind::Special: return "special";
    case RepKind::Supercuspidal: return "supercuspidal";
    case RepKind::OneDimensional: return "one_dimensional";
  }
  return "unknown";
}

std::string to_string(Splitness s) {
  switch (s) {
    case Splitness::Split: return "split";
    case Splitness::NonSplit: return "nonsplit";
    case Splitness::Unknown: return "unknown";
  }
  return "unknown";
}

Splitness parse_splitness(const std::string& s) {
  if (s == "split") return Splitness::Split;
  if (s == "nonsplit") return Splitness::NonSplit;
  if (s == "unknown") return Splitness::Unknown;
  throw std::invalid_argument("splitness must be split, nonsplit or unknown (got '" + s + "')");
}

LocalParams principal_series(LocalChar a, LocalChar b, long p, int k, std::optional<int> weight) {
  LocalParams out;
  out.p = p;
  out.k = k;
  out.kind = RepKind::PrincipalSeries;
  out.weight = weight;
  if (a.chi && b.chi) {
    auto ua = unit_part(*a.chi), ub = unit_part(*b.chi);
    if (ua && ub) out.det_unit = *ua * *ub;
  }
  out.chars = {std::move(a), std::move(b)};
  check_weight(out);
  return out;
}

LocalParams principal_series(const SmoothChar& a, const SmoothChar& b, std::optional<int> weight) {
  if (a.prime() != b.prime()) throw std::invalid_argument("principal_series: mixed primes");
  return principal_series(from_char(a), from_char(b), a.prime(), std::min(a.precision(), b.precision()), weight);
}

LocalParams special(const SmoothChar& chi, std::optional<int> weight) {
  LocalParams out;
  out.p = chi.prime();
  out.k = chi.precision();
  out.kind = RepKind::Special;
  out.weight = weight;
  out.chars = {from_char(chi)};
  if (auto u = unit_part(chi)) out.det_unit = *u * *u;
  check_weight(out);
  return out;
}

LocalParams supercuspidal(long p, int k, std::optional<int> weight) {
  LocalParams out;
  out.p = p;
  out.k = k;
  out.kind = RepKind::Supercuspidal;
  out.weight = weight;
  if (weight && *weight < 2) throw std::invalid_argument("LocalParams: weight must be >= 2");
  return out;
}

LocalParams one_dimensional(const SmoothChar& chi) {
  LocalParams out;
  out.p = chi.prime();
  out.k = chi.precision();
  out.kind = RepKind::OneDimensional;
  out.chars = {from_char(chi)};
  return out;
}

Classification classify(const LocalParams& params) {
  switch (params.kind) {
    case RepKind::Special: return {params.kind, true, "special: Steinberg twist"};
    case RepKind::Supercuspidal: return {params.kind, true, "supercuspidal: no Jacquet characters"};
    case RepKind::OneDimensional: return {params.kind, true, "one-dimensional: character of the determinant"};
    case RepKind::PrincipalSeries: break;
  }
  const LocalChar& a = params.chars.at(0);
  const LocalChar& b = params.chars.at(1);
  if (!same_valuation(std::abs(a.valuation - b.valuation), 1.0))
    return {params.kind, true, "valuations of alpha and beta do not differ by 1"};
  if (!a.chi || !b.chi) return {params.kind, true, "characters known only by valuation; assumed irreducible"};
  if (!a.chi->same_unit_part(*b.chi)) return {params.kind, true, "unit parts of the characters differ"};
  const PadicApprox& alpha = a.chi->at_p();
  const PadicApprox& beta = b.chi->at_p();
  if (a.valuation > b.valuation && alpha.congruent(beta * params.p))
    return {params.kind, false, "alpha = p * beta with equal unit parts"};
  if (b.valuation > a.valuation && beta.congruent(alpha * params.p))
    return {params.kind, false, "beta = p * alpha with equal unit parts"};
  return {params.kind, true, "alpha / beta is a unit multiple of p^(+-1) other than p^(+-1)"};
}

std::vector<JacquetEntry> jacquet(const LocalParams& params) {
  const Classification cls = classify(params);
  switch (params.kind) {
    case RepKind::OneDimensional:
      throw std::domain_error("jacquet: one-dimensional representation has no Kirillov model");
    case RepKind::Supercuspidal: return {};
    case RepKind::Special:
      if (!params.chars.at(0).chi) throw std::invalid_argument("jacquet: character unknown");
      return {{*params.chars[0].chi, false}};
    case RepKind::PrincipalSeries: break;
  }
  if (!cls.irreducible) throw std::domain_error("jacquet: reducible principal series (" + cls.witness + ")");
  const auto& a = params.chars[0].chi;
  const auto& b = params.chars[1].chi;
  if (!a || !b) throw std::invalid_argument("jacquet: characters known only by valuation");
  const bool equal = *a == *b;
  return {{*a, equal}, {*b, equal}};
}

size_t jacquet_dim(const LocalParams& params) {
  switch (params.kind) {
    case RepKind::PrincipalSeries: {
      if (!classify(params).irreducible) throw std::domain_error("jacquet_dim: reducible principal series");
      return 2;
    }
    case RepKind::Special: return 1;
    case RepKind::Supercuspidal: return 0;
    case RepKind::OneDimensional:
      throw std::domain_error("jacquet_dim: one-dimensional representation has no Kirillov model");
  }
  return 0;
}

std::vector<CharTail> kirillov_lines(const LocalParams& params) {
  const auto entries = jacquet(params);
  const PadicApprox one = PadicApprox::one(params.p, params.k);
  std::vector<CharTail> out;
  if (entries.size() == 2 && entries[0].extension) {
    out.push_back({entries[0].chi, 0, 0, one});
    out.push_back({entries[0].chi, 1, 0, one});
    return out;
  }
  for (const auto& e : entries) out.push_back({e.chi, 0, 0, one});
  return out;
}

std::vector<CharTail> completion_basis(const LocalParams& params) {
  if (params.kind == RepKind::Supercuspidal) return {};
  for (const auto& c : params.chars)
    if (!c.chi && same_valuation(c.valuation, 0))
      throw std::invalid_argument("completion_basis: unit character known only by valuation");
  std::vector<CharTail> out;
  const bool all_known = std::all_of(params.chars.begin(), params.chars.end(), [](const LocalChar& c) { return c.chi.has_value(); });
  if (all_known) {
    for (const auto& t : kirillov_lines(params))
      if (t.chi.at_p().is_unit()) out.push_back(t);
  }
  if (out.size() > 1) throw std::logic_error("completion_basis: more than one unit-valuation line (valuation invariant violated)");
  return out;
}

CentralChar central_char(const LocalParams& params, int weight) {
  if (params.kind == RepKind::Supercuspidal)
    throw std::invalid_argument("central_char: supercuspidal parameters carry no character data");
  if (weight < 2) throw std::invalid_argument("central_char: weight must be >= 2");
  auto units = unit_product(params);
  if (!units) throw std::invalid_argument("central_char: unit parts of the characters are unknown");
  if (!params.det_unit)
    throw PrecisionError("central_char: alpha beta / p^(w-1) is not determined at this precision");
  return {units->with_value_at_p(*params.det_unit), -weight};
}

PadicApprox central_char_eval(const CentralChar& omega, const QpPoint& z) {
  PadicApprox value = char_eval(omega.smooth, z);
  return value * z.unit.ipow_signed(omega.algebraic_exponent);
}

PredictedSpace predict_W(const LocalParams& params, Splitness splitness, int m_window) {
  if (m_window < 0) throw std::invalid_argument("predict_W: M window must be >= 0");
  PredictedSpace out;
  if (params.kind == RepKind::Supercuspidal) {
    if (splitness == Splitness::Split) out.warnings.push_back("split requested for supercuspidal parameters");
    return out;
  }
  out.lower = completion_basis(params);
  const bool ordinary = !out.lower.empty();
  std::vector<SmoothChar> upper_chars;
  for (const auto& t : out.lower) upper_chars.push_back(t.chi);
  auto add_other_chars = [&](bool to_lower) {
    for (const auto& c : params.chars) {
      if (!c.chi) continue;
      const bool present = std::any_of(upper_chars.begin(), upper_chars.end(), [&](const SmoothChar& x) { return x == *c.chi; });
      if (present) continue;
      upper_chars.push_back(*c.chi);
      if (to_lower) out.lower.push_back({*c.chi, 0, 0, PadicApprox::one(params.p, params.k)});
    }
  };
  if (splitness == Splitness::Split) {
    if (!ordinary) out.warnings.push_back("split requested for non-ordinary parameters; a split local representation is ordinary");
    if (params.kind == RepKind::PrincipalSeries) add_other_chars(true);
  } else if (splitness == Splitness::Unknown && ordinary) {
    add_other_chars(false);
  }
  for (const auto& chi : upper_chars)
    for (int a = 0; a <= m_window; ++a)
      for (int b = 0; b <= m_window; ++b) out.upper.push_back({chi, a, b, PadicApprox::one(params.p, params.k)});
  return out;
}

nlohmann::ordered_json tail_json(const CharTail& t, const LocalParams& params) {
  double valuation = t.chi.at_p().valuation();
  for (const auto& c : params.chars)
    if (c.chi && *c.chi == t.chi) valuation = c.valuation;
  nlohmann::ordered_json out;
  out["conductor"] = t.chi.conductor();
  out["unit_values"] = t.chi.table_string();
  out["value_at_p"] = t.chi.at_p().str();
  out["valuation"] = valuation;
  out["a"] = t.a;
  out["b"] = t.b;
  return out;
}

nlohmann::ordered_json local_report(const LocalParams& params, Splitness splitness, int m_window) {
  using nlohmann::ordered_json;
  const Classification cls = classify(params);
  ordered_json out;
  out["kind"] = to_string(params.kind);
  out["irreducible"] = cls.irreducible;
  out["witness"] = cls.witness;
  const bool known = std::all_of(params.chars.begin(), params.chars.end(), [](const LocalChar& c) { return c.chi.has_value(); });
  out["jacquet_dim"] = jacquet_dim(params);
  auto list = [&](const std::vector<CharTail>& tails) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : tails) arr.push_back(tail_json(t, params));
    return arr;
  };
  ordered_json valuations = ordered_json::array();
  for (const auto& c : params.chars) valuations.push_back(c.valuation);
  out["valuations"] = valuations;
  out["tails"] = known ? list(kirillov_lines(params)) : ordered_json::array();
  out["completion"] = list(completion_basis(params));
  const PredictedSpace w = predict_W(params, splitness, m_window);
  out["splitness"] = to_string(splitness);
  out["predicted_lower"] = list(w.lower);
  out["predicted_upper"] = list(w.upper);
  out["warnings"] = w.warnings;
  if (params.weight && params.kind != RepKind::Supercuspidal) {
    try {
      const CentralChar omega = central_char(params, *params.weight);
      out["central_char"] = {{"unit_values", omega.smooth.table_string()},
                             {"value_at_p", omega.smooth.at_p().str()},
                             {"algebraic_exponent", omega.algebraic_exponent}};
    } catch (const std::exception& e) {
      out["central_char"] = {{"error", e.what()}};
    }
  } else {
    out["central_char"] = nullptr;
  }
  return out;
}

}  // namespace padicmf
