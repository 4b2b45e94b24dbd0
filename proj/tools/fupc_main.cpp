// Copyright 2026 The fupc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Talks to the library only through fupc.h.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "fupc/fupc.h"
#include "json.hpp"

namespace {

constexpr int kExitValidation = 1;

struct Range {
  int lo = 0;
  int hi = 0;
};

// "a..b" or a single integer.
std::optional<Range> ParseRange(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) return std::nullopt;
      return Range{v, v};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) return std::nullopt;
    const int hi = std::stoi(b, &used);
    if (used != b.size() || hi < lo) return std::nullopt;
    return Range{lo, hi};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string JsonScalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw std::runtime_error("config values must be strings, numbers or booleans");
}

// Turns matching config keys into option defaults, so explicit flags still
// win. Keys are long option names without dashes; nested objects are only
// allowed when named after a subcommand.
void ApplyConfig(CLI::App& app, const nlohmann::json& section) {
  for (const auto& [key, value] : section.items()) {
    if (value.is_object()) {
      CLI::App* sub = nullptr;
      try {
        sub = app.get_subcommand(key);
      } catch (const CLI::OptionNotFound&) {
      }
      if (sub == nullptr) throw std::runtime_error("unknown config section '" + key + "'");
      ApplyConfig(*sub, value);
      continue;
    }
    CLI::Option* opt = nullptr;
    try {
      opt = app.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
    }
    if (opt == nullptr) throw std::runtime_error("unknown config key '" + key + "'");
    opt->default_val(JsonScalar(value));
  }
}

// Scans argv for --config before the real parse.
std::optional<std::string> FindConfigPath(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return std::nullopt;
}

struct OptionsDeleter {
  void operator()(fupc_options* o) const { fupc_options_free(o); }
};
struct ResultDeleter {
  void operator()(fupc_result* r) const { fupc_result_free(r); }
};

int Report(fupc_status status) {
  std::cerr << "error: " << fupc_status_name(status) << ": " << fupc_last_error() << "\n";
  return fupc_status_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier restriction norms and exponent bounds for discrete Cantor sets"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 1;
  if (const char* env = std::getenv("FUP_THREADS")) {
    try {
      threads = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: FUP_THREADS must be an integer, got '" << env << "'\n";
      return kExitValidation;
    }
  }
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output;
  std::string config_path;
  std::uint64_t n_cap = 100000, enum_cap = 10000000, dense_cap = 512;
  bool no_timestamp = false;

  app.add_option("--threads", threads, "Worker threads (default FUP_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", output, "Write to this file instead of stdout");
  app.add_option("--config", config_path, "JSON config; flags override its values");
  app.add_option("--n-cap", n_cap, "Largest N = M^k");
  app.add_option("--enum-cap", enum_cap, "Largest exact enumeration");
  app.add_option("--dense-cap", dense_cap, "Largest alphabet for the dense k = 1 path");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the generated-at header line");

  // beta
  std::string beta_alphabet;
  int beta_kmax = 3;
  double beta_tol = 1e-12;
  std::string beta_method = "power";
  CLI::App* beta = app.add_subcommand("beta", "r_k and beta_k for one alphabet");
  beta->add_option("alphabet", beta_alphabet, "Alphabet as M:d0,d1,...")->required();
  beta->add_option("--kmax", beta_kmax, "Largest k")->check(CLI::PositiveNumber);
  beta->add_option("--tol", beta_tol, "Solver tolerance");
  beta->add_option("--method", beta_method, "power or lanczos")
      ->check(CLI::IsMember({"power", "lanczos"}));

  // sweep
  int sweep_m = 0, sweep_a = 0, sweep_kmax = 0;
  bool sweep_exact = false, sweep_figure1 = false;
  std::uint64_t sweep_mc = 0;
  double sweep_eps = 0.0;
  std::string sweep_all_m;
  CLI::App* sweep = app.add_subcommand("sweep", "beta_lower over an alphabet space");
  sweep->add_option("--m", sweep_m, "Base M");
  sweep->add_option("--a", sweep_a, "Alphabet size A");
  auto* exact = sweep->add_flag("--exact", sweep_exact, "Enumerate every alphabet (default)");
  auto* mc = sweep->add_option("--mc", sweep_mc, "Monte Carlo sample count");
  exact->excludes(mc);
  sweep->add_option("--kmax", sweep_kmax, "Largest k (0 = largest k <= 4 within the N cap)");
  sweep->add_option("--epsilon", sweep_eps, "Also report the success fraction at this epsilon");
  sweep->add_flag("--figure1", sweep_figure1, "Every 1 < A < M for M = 3..10");
  sweep->add_option("--all-m", sweep_all_m, "Like --figure1 over an M range, e.g. 3..10");

  // concentration
  int conc_m = 0, conc_a = 0, conc_points = 50;
  std::int64_t conc_freq = 1;
  bool conc_exact = false;
  std::uint64_t conc_mc = 0;
  double conc_tmax = 0.0;
  CLI::App* conc = app.add_subcommand("concentration", "Tail report for an exponential sum");
  conc->add_option("--m", conc_m, "Base M")->required();
  conc->add_option("--a", conc_a, "Alphabet size A")->required();
  conc->add_option("--freq", conc_freq, "Frequency m, not divisible by M");
  auto* conc_ex = conc->add_flag("--exact", conc_exact, "Enumerate every alphabet (default)");
  auto* conc_mcopt = conc->add_option("--mc", conc_mc, "Monte Carlo sample count");
  conc_ex->excludes(conc_mcopt);
  conc->add_option("--tmax", conc_tmax, "Grid end (default 2A)");
  conc->add_option("--points", conc_points, "Grid size");

  // goodset
  int good_m = 0, good_a = 0;
  double good_level = 0.0;
  bool good_exact = false;
  std::uint64_t good_mc = 0;
  CLI::App* good = app.add_subcommand("goodset", "Measure of the square-root cancellation set");
  good->add_option("--m", good_m, "Base M")->required();
  good->add_option("--a", good_a, "Alphabet size A")->required();
  good->add_option("--L", good_level, "Level L")->required();
  auto* good_ex = good->add_flag("--exact", good_exact, "Enumerate every alphabet (default)");
  auto* good_mcopt = good->add_option("--mc", good_mc, "Monte Carlo sample count");
  good_ex->excludes(good_mcopt);

  // oqm
  std::string oqm_alphabet, oqm_k = "2..4";
  double oqm_eps = 0.01;
  CLI::App* oqm = app.add_subcommand("oqm", "Spectral radius of the open quantum map");
  oqm->add_option("alphabet", oqm_alphabet, "Alphabet as M:d0,d1,...")->required();
  oqm->add_option("--k", oqm_k, "Order or range, e.g. 2..4");
  oqm->add_option("--epsilon", oqm_eps, "Epsilon in the red-line candidate");

  // verify
  bool verify_quick = false;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_flag("--quick", verify_quick, "Smaller ranges");

  try {
    if (const auto path = FindConfigPath(argc, argv)) {
      std::ifstream in(*path);
      if (!in) throw std::runtime_error("cannot read config file '" + *path + "'");
      const nlohmann::json config = nlohmann::json::parse(in);
      if (!config.is_object()) throw std::runtime_error("config must be a JSON object");
      nlohmann::json top = config;
      top.erase("config");
      ApplyConfig(app, top);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  if (threads < 1) {
    std::cerr << "error: threads must be at least 1\n";
    return kExitValidation;
  }

  std::unique_ptr<fupc_options, OptionsDeleter> opts(fupc_options_new());
  fupc_status status = FUPC_OK;
  for (fupc_status s : {fupc_options_set_threads(opts.get(), threads),
                        fupc_options_set_seed(opts.get(), seed),
                        fupc_options_set_format(opts.get(), format.c_str()),
                        fupc_options_set_timestamp(opts.get(), no_timestamp ? 0 : 1),
                        fupc_options_set_n_cap(opts.get(), n_cap),
                        fupc_options_set_enumeration_cap(opts.get(), enum_cap),
                        fupc_options_set_dense_cap(opts.get(), dense_cap)}) {
    if (s != FUPC_OK && status == FUPC_OK) status = s;
  }
  if (status != FUPC_OK) return Report(status);

  fupc_result* raw = nullptr;
  if (*beta) {
    status = fupc_run_beta(opts.get(), beta_alphabet.c_str(), beta_kmax, beta_tol,
                           beta_method.c_str(), &raw);
  } else if (*sweep) {
    std::optional<Range> range;
    if (sweep_figure1) range = Range{3, 10};
    if (!sweep_all_m.empty()) {
      range = ParseRange(sweep_all_m);
      if (!range) {
        std::cerr << "error: --all-m expects a range like 3..10, got '" << sweep_all_m << "'\n";
        return kExitValidation;
      }
    }
    if (range) {
      status = fupc_run_figure1(opts.get(), range->lo, range->hi, sweep_kmax, &raw);
    } else {
      if (sweep_m == 0 || sweep_a == 0) {
        std::cerr << "error: sweep needs --m and --a, or --figure1 / --all-m\n";
        return kExitValidation;
      }
      status = fupc_run_sweep(opts.get(), sweep_m, sweep_a, sweep_mc, sweep_kmax, sweep_eps, &raw);
    }
  } else if (*conc) {
    status = fupc_run_concentration(opts.get(), conc_m, conc_a, conc_freq, conc_mc, conc_tmax,
                                    conc_points, &raw);
  } else if (*good) {
    status = fupc_run_goodset(opts.get(), good_m, good_a, good_level, good_mc, &raw);
  } else if (*oqm) {
    const auto range = ParseRange(oqm_k);
    if (!range) {
      std::cerr << "error: --k expects an order or a range like 2..4, got '" << oqm_k << "'\n";
      return kExitValidation;
    }
    status = fupc_run_oqm(opts.get(), oqm_alphabet.c_str(), range->lo, range->hi, oqm_eps, &raw);
  } else if (*verify) {
    status = fupc_run_verify(opts.get(), verify_quick ? 1 : 0, &raw);
  }
  if (status != FUPC_OK) return Report(status);
  std::unique_ptr<fupc_result, ResultDeleter> result(raw);

  const std::string_view text(fupc_result_text(result.get()), fupc_result_size(result.get()));
  if (output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return kExitValidation;
    }
  }
  const std::size_t failed = fupc_result_failed_checks(result.get());
  if (failed > 0) {
    std::cerr << "error: " << failed << " asserted propert" << (failed == 1 ? "y" : "ies")
              << " failed\n";
    return fupc_status_exit_code(FUPC_ERR_INVARIANT_FAILURE);
  }
  return 0;
}
