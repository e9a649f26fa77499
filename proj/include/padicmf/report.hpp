#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicmf/newform.hpp"
#include "padicmf/smoothrep.hpp"

namespace padicmf {

struct CheckResult {
  std::string identity;
  std::string anchor;
  nlohmann::ordered_json params;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json extra;
  bool pass() const;
};

struct SuiteConfig {
  long p = 3;
  int k = 4;
  long N = 200;
  std::uint64_t seed = 20240601;
  int random_count = 50;
  /// Defaults to Delta computed to the needed length.
  std::optional<NewformData> form;
};

SuiteResult fourier_suite(const SuiteConfig& cfg);
SuiteResult kirillov_suite(const SuiteConfig& cfg);
SuiteResult ordinary_suite(const SuiteConfig& cfg);
SuiteResult doublecoset_suite(const SuiteConfig& cfg);
SuiteResult local_suite(const SuiteConfig& cfg);

nlohmann::ordered_json suite_json(const SuiteResult& r);

/// Local parameters at p read off a newform: unramified principal series
/// from x^2 - a_p x + chi(p) p^(w-1) when p does not divide the level,
/// otherwise the given local kind.
LocalParams newform_local_params(const NewformData& f, long p, int k, std::optional<RepKind> local_kind,
                                 std::vector<std::string>& notes);

nlohmann::ordered_json predict_report(const NewformData& f, long p, int k, Splitness splitness, int m_window,
                                      std::optional<RepKind> local_kind = std::nullopt);

}  // namespace padicmf
