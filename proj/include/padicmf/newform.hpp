#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicmf/qexp.hpp"

namespace padicmf {

/// Schema or consistency failure while reading a newform file.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Hecke data of a newform: level, weight, a scalar nebentypus table and
 * exact coefficients a_0 = 0, a_1, ..., a_N.
 */
struct NewformData {
  long level = 1;
  int weight = 2;
  long neb_modulus = 1;
  std::map<long, mpz_class> neb_values;  // unit residue mod neb_modulus -> value
  std::vector<mpz_class> coeffs;
  bool eigenform = true;
  bool cm_verified = false;
  std::string name;
  std::vector<std::string> warnings;

  long truncation() const { return static_cast<long>(coeffs.size()) - 1; }
  /// Nebentypus at n; 0 when gcd(n, modulus) > 1.
  mpz_class nebentypus(long n) const;
  QExpansion expansion(long p, int k) const;
};

/// Validates the schema, a_1 = 1 for eigenforms and coprime multiplicativity.
/// Multiplicativity failures are warnings unless `strict`.
NewformData parse_newform(const nlohmann::ordered_json& doc, bool strict = false);
NewformData load_newform(const std::filesystem::path& path, bool strict = false);
nlohmann::ordered_json newform_to_json(const NewformData& f);

/// Built-in level-1 weight-12 record for Delta up to q^N.
NewformData delta_newform(long N);

}  // namespace padicmf
