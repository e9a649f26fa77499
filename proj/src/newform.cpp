#include "padicmf/newform.hpp"

#include <fstream>
#include <numeric>

namespace padicmf {

namespace {

using nlohmann::ordered_json;

const ordered_json& field(const ordered_json& doc, const char* name) {
  if (!doc.contains(name)) throw IngestError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

long as_long(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer()) throw IngestError("field '" + where + "' must be an integer");
  return v.get<long>();
}

mpz_class as_integer(const ordered_json& v, const std::string& where) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (!v.is_string()) throw IngestError("field '" + where + "' must be an integer or a decimal string");
  mpz_class out;
  if (out.set_str(v.get<std::string>(), 10) != 0)
    throw IngestError("field '" + where + "' is not a decimal integer: '" + v.get<std::string>() + "'");
  return out;
}

void check_multiplicativity(NewformData& f, bool strict) {
  const long N = std::min<long>(f.truncation(), 2000);
  long failures = 0;
  std::string first;
  for (long m = 2; m * m <= N; ++m) {
    for (long n = m + 1; m * n <= N; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (f.coeffs[static_cast<size_t>(m * n)] != f.coeffs[static_cast<size_t>(m)] * f.coeffs[static_cast<size_t>(n)]) {
        if (failures++ == 0) first = "a_" + std::to_string(m * n) + " != a_" + std::to_string(m) + " a_" + std::to_string(n);
      }
    }
  }
  if (failures == 0) return;
  const std::string msg = "multiplicativity fails at " + std::to_string(failures) + " coprime pairs (first: " + first + ")";
  if (strict) throw IngestError(msg);
  f.warnings.push_back(msg);
}

}  // namespace

mpz_class NewformData::nebentypus(long n) const {
  if (std::gcd(n, neb_modulus) != 1) return 0;
  const long r = ((n % neb_modulus) + neb_modulus) % neb_modulus;
  auto it = neb_values.find(r);
  if (it == neb_values.end()) throw IngestError("nebentypus has no value at " + std::to_string(r));
  return it->second;
}

QExpansion NewformData::expansion(long p, int k) const { return QExpansion(p, k, coeffs); }

NewformData parse_newform(const ordered_json& doc, bool strict) {
  if (!doc.is_object()) throw IngestError("newform document must be an object");
  NewformData f;
  f.level = as_long(field(doc, "level"), "level");
  if (f.level < 1) throw IngestError("field 'level' must be positive");
  f.weight = static_cast<int>(as_long(field(doc, "weight"), "weight"));
  if (f.weight < 2) throw IngestError("field 'weight' must be >= 2");
  if (doc.contains("name")) f.name = doc.at("name").get<std::string>();
  if (doc.contains("eigenform")) f.eigenform = doc.at("eigenform").get<bool>();
  if (doc.contains("cm_verified")) f.cm_verified = doc.at("cm_verified").get<bool>();

  if (doc.contains("nebentypus")) {
    const auto& neb = doc.at("nebentypus");
    f.neb_modulus = as_long(field(neb, "modulus"), "nebentypus.modulus");
    if (f.neb_modulus < 1) throw IngestError("field 'nebentypus.modulus' must be positive");
    const auto& values = field(neb, "values");
    if (!values.is_array()) throw IngestError("field 'nebentypus.values' must be an array of [unit, value] pairs");
    for (size_t i = 0; i < values.size(); ++i) {
      const std::string where = "nebentypus.values[" + std::to_string(i) + "]";
      if (!values[i].is_array() || values[i].size() != 2) throw IngestError("field '" + where + "' must be a pair");
      const long u = as_long(values[i][0], where + "[0]");
      if (std::gcd(u, f.neb_modulus) != 1) throw IngestError("field '" + where + "' is not a unit");
      f.neb_values[((u % f.neb_modulus) + f.neb_modulus) % f.neb_modulus] = as_integer(values[i][1], where + "[1]");
    }
    for (long u = 0; u < f.neb_modulus; ++u)
      if (std::gcd(u, f.neb_modulus) == 1 && !f.neb_values.contains(u))
        throw IngestError("nebentypus has no value at unit " + std::to_string(u));
  } else {
    f.neb_modulus = 1;
    f.neb_values[0] = 1;
    f.warnings.push_back("missing nebentypus; assuming trivial character");
  }

  const auto& coeffs = field(doc, "coeffs");
  if (!coeffs.is_array() || coeffs.empty()) throw IngestError("field 'coeffs' must be a non-empty array");
  f.coeffs.reserve(coeffs.size() + 1);
  f.coeffs.emplace_back(0);
  for (size_t i = 0; i < coeffs.size(); ++i) f.coeffs.push_back(as_integer(coeffs[i], "coeffs[" + std::to_string(i) + "]"));

  if (f.eigenform) {
    if (f.coeffs[1] != 1) throw IngestError("eigenform flag set but a_1 = " + f.coeffs[1].get_str() + " (expected 1)");
    check_multiplicativity(f, strict);
  }
  return f;
}

NewformData load_newform(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
  return parse_newform(doc, strict);
}

ordered_json newform_to_json(const NewformData& f) {
  ordered_json out;
  out["name"] = f.name;
  out["level"] = f.level;
  out["weight"] = f.weight;
  ordered_json values = ordered_json::array();
  for (const auto& [u, v] : f.neb_values) values.push_back({u, v.get_str()});
  out["nebentypus"] = {{"modulus", f.neb_modulus}, {"values", values}};
  out["truncation"] = f.truncation();
  out["eigenform"] = f.eigenform;
  out["cm_verified"] = f.cm_verified;
  out["warnings"] = f.warnings;
  return out;
}

NewformData delta_newform(long N) {
  NewformData f;
  f.name = "Delta";
  f.level = 1;
  f.weight = 12;
  f.neb_modulus = 1;
  f.neb_values[0] = 1;
  f.coeffs = delta_coefficients(N);
  return f;
}

}  // namespace padicmf
