#include "padicmf/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "padicmf/kirillov.hpp"
#include "padicmf/newform.hpp"
#include "padicmf/report.hpp"

namespace padicmf {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  long p = 3;
  int k = 4;
  long N = 200;
  std::string input;
  std::string output;
};

void validate(const JobConfig& cfg, bool need_window) {
  if (!is_prime(cfg.p)) throw ConfigError("p = " + std::to_string(cfg.p) + " is not prime");
  if (cfg.k < 1) throw ConfigError("k must be >= 1 (got " + std::to_string(cfg.k) + ")");
  if (need_window && cfg.N < cfg.p) throw ConfigError("N must be >= p so that U_p has a nonempty window");
}

void add_job_options(CLI::App* cmd, JobConfig& cfg) {
  cmd->add_option("-p", cfg.p, "prime p")->capture_default_str();
  cmd->add_option("-k", cfg.k, "p-adic precision k (work mod p^k)")->capture_default_str();
  cmd->add_option("-N", cfg.N, "q-expansion truncation")->capture_default_str();
  cmd->add_option("--input", cfg.input, "newform JSON file (default: Delta)");
  cmd->add_option("-o", cfg.output, "output path (default: stdout)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

ordered_json metadata(const std::string& command, const ordered_json& config) {
  return {{"tool", "padicmf"}, {"version", kVersion}, {"command", command}, {"config", config}};
}

NewformData load_form(const JobConfig& cfg, long need, bool strict) {
  if (cfg.input.empty()) return delta_newform(need);
  try {
    return load_newform(cfg.input, strict);
  } catch (const IngestError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic modular forms toolkit: q-expansions, ordinary projector, Kirillov models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  JobConfig cfg;
  bool strict = false;
  std::uint64_t seed = 20240601;
  int count = 50;
  std::string suite = "all";
  std::string splitness = "unknown";
  std::string local_kind;
  int m_window = 1;
  std::string object;
  bool zero = false;
  std::string alpha = "1";
  long teich = 0;
  int degree = 0;

  CLI::App* ingest = app.add_subcommand("ingest", "validate a newform file and print the record");
  ingest->add_option("--input", cfg.input, "newform JSON file")->required();
  ingest->add_flag("--strict", strict, "treat multiplicativity failures as errors");
  ingest->add_option("-o", cfg.output, "output path (default: stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run identity suites and write a JSON report");
  add_job_options(verify, cfg);
  verify->add_option("--suite", suite, "fourier | kirillov | ordinary | doublecoset | local | all")
      ->check(CLI::IsMember({"fourier", "kirillov", "ordinary", "doublecoset", "local", "all"}))
      ->capture_default_str();
  verify->add_option("--seed", seed, "seed for randomized inputs")->capture_default_str();
  verify->add_option("--count", count, "random inputs per identity")->capture_default_str();
  verify->add_flag("--strict", strict, "treat multiplicativity failures in the input as errors");

  CLI::App* predict = app.add_subcommand("predict", "predict the local space W at p for a newform");
  add_job_options(predict, cfg);
  predict->add_option("--splitness", splitness, "split | nonsplit | unknown")->capture_default_str();
  predict->add_option("--m-window", m_window, "largest a, b in the upper bound")->capture_default_str();
  predict->add_option("--local-kind", local_kind, "special | supercuspidal (needed when p divides the level)");
  predict->add_flag("--strict", strict, "treat multiplicativity failures in the input as errors");

  CLI::App* dump = app.add_subcommand("dump", "write a CSV dump");
  add_job_options(dump, cfg);
  dump->add_option("object", object, "qexp | kirillov")->required()->check(CLI::IsMember({"qexp", "kirillov"}));
  dump->add_flag("--zero", zero, "dump the zero object");
  dump->add_option("--alpha", alpha, "kirillov: chi(p) of the unramified-times-Teichmuller character")->capture_default_str();
  dump->add_option("--teich", teich, "kirillov: Teichmuller power of chi on units")->capture_default_str();
  dump->add_option("--degree", degree, "kirillov: valuation degree a of the tail")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*ingest) {
      NewformData f;
      try {
        f = load_newform(cfg.input, strict);
      } catch (const IngestError& e) {
        throw ConfigError(e.what());
      }
      ordered_json doc;
      doc["metadata"] = metadata("ingest", {{"input", cfg.input}, {"strict", strict}});
      doc["record"] = newform_to_json(f);
      for (const auto& w : f.warnings) err << "warning: " << w << "\n";
      emit(doc.dump(2) + "\n", cfg.output, out);
      return kExitOk;
    }

    if (*verify) {
      validate(cfg, true);
      if (count < 0) throw ConfigError("--count must be >= 0");
      SuiteConfig sc;
      sc.p = cfg.p;
      sc.k = cfg.k;
      sc.N = cfg.N;
      sc.seed = seed;
      sc.random_count = count;
      if (!cfg.input.empty()) sc.form = load_form(cfg, cfg.N, strict);
      ordered_json suites = ordered_json::array();
      bool pass = true;
      auto run = [&](const std::string& name, SuiteResult (*fn)(const SuiteConfig&)) {
        if (suite != "all" && suite != name) return;
        const SuiteResult r = fn(sc);
        pass = pass && r.pass();
        suites.push_back(suite_json(r));
      };
      run("fourier", fourier_suite);
      run("kirillov", kirillov_suite);
      run("ordinary", ordinary_suite);
      run("doublecoset", doublecoset_suite);
      run("local", local_suite);
      ordered_json doc;
      doc["metadata"] = metadata("verify", {{"suite", suite}, {"p", cfg.p}, {"k", cfg.k}, {"N", cfg.N}, {"seed", seed},
                                            {"count", count}, {"input", cfg.input.empty() ? "Delta" : cfg.input}});
      doc["pass"] = pass;
      doc["suites"] = suites;
      emit(doc.dump(2) + "\n", cfg.output, out);
      return pass ? kExitOk : kExitFailed;
    }

    if (*predict) {
      validate(cfg, true);
      Splitness s;
      try {
        s = parse_splitness(splitness);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      if (m_window < 0) throw ConfigError("--m-window must be >= 0");
      std::optional<RepKind> kind;
      if (local_kind == "special") kind = RepKind::Special;
      else if (local_kind == "supercuspidal") kind = RepKind::Supercuspidal;
      else if (!local_kind.empty()) throw ConfigError("--local-kind must be special or supercuspidal");
      const NewformData f = load_form(cfg, cfg.N, strict);
      ordered_json doc;
      doc["metadata"] = metadata("predict", {{"p", cfg.p}, {"k", cfg.k}, {"N", cfg.N}, {"splitness", splitness},
                                             {"m_window", m_window}, {"input", cfg.input.empty() ? "Delta" : cfg.input}});
      try {
        doc["report"] = predict_report(f, cfg.p, cfg.k, s, m_window, kind);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      for (const auto& w : doc["report"]["notes"]) err << "note: " << w.get<std::string>() << "\n";
      emit(doc.dump(2) + "\n", cfg.output, out);
      return kExitOk;
    }

    if (*dump) {
      validate(cfg, false);
      std::string text;
      if (object == "qexp") {
        if (zero) {
          text = qexp_csv(QExpansion::zero(cfg.p, cfg.k, 0));
        } else {
          const NewformData f = load_form(cfg, cfg.N, false);
          text = qexp_csv(f.expansion(cfg.p, cfg.k).truncated(std::min(cfg.N, f.truncation())));
        }
      } else {
        if (zero) {
          text = kirillov_csv(KirillovFn::zero(cfg.p, cfg.k));
        } else {
          mpz_class a;
          if (a.set_str(alpha, 10) != 0) throw ConfigError("--alpha must be an integer");
          if (degree < 0) throw ConfigError("--degree must be >= 0");
          const SmoothChar chi = SmoothChar::teichmuller_power(cfg.p, cfg.k, teich, PadicApprox(cfg.p, cfg.k, a));
          text = kirillov_csv(KirillovFn::char_line(CharTail{chi, degree, 0, PadicApprox::one(cfg.p, cfg.k)}));
        }
      }
      emit(text, cfg.output, out);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitConfig;
}

}  // namespace padicmf
