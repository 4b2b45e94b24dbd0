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


#include "fupc/fupc.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "fupc/error.hpp"
#include "fupc/experiments.hpp"
#include "fupc/oqm.hpp"
#include "fupc/report.hpp"
#include "fupc/spectral.hpp"
#include "fupc/verify.hpp"

struct fupc_options {
  int threads = 1;
  std::uint64_t seed = 1;
  fupc::Format format = fupc::Format::kCsv;
  bool timestamp = true;
  std::uint64_t n_cap = fupc::kExperimentNCap;
  std::uint64_t enumeration_cap = fupc::kDefaultEnumerationCap;
  std::uint64_t dense_cap = fupc::kDefaultDenseCap;
  nlohmann::json echo = nlohmann::json::object();
};

struct fupc_result {
  std::string text;
  std::size_t rows = 0;
  std::size_t failed_checks = 0;
};

namespace {

thread_local std::string last_error;

using fupc::ErrorCode;

fupc_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return FUPC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParseError: return FUPC_ERR_PARSE;
    case ErrorCode::kBaseTooSmall: return FUPC_ERR_BASE_TOO_SMALL;
    case ErrorCode::kDigitOutOfRange: return FUPC_ERR_DIGIT_OUT_OF_RANGE;
    case ErrorCode::kDuplicateDigit: return FUPC_ERR_DUPLICATE_DIGIT;
    case ErrorCode::kEmptyAlphabet: return FUPC_ERR_EMPTY_ALPHABET;
    case ErrorCode::kOrderTooLarge: return FUPC_ERR_ORDER_TOO_LARGE;
    case ErrorCode::kOrderTooSmall: return FUPC_ERR_ORDER_TOO_SMALL;
    case ErrorCode::kIndexOutOfRange: return FUPC_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::kLengthMismatch: return FUPC_ERR_LENGTH_MISMATCH;
    case ErrorCode::kDenseCapExceeded: return FUPC_ERR_DENSE_CAP_EXCEEDED;
    case ErrorCode::kTrivialAlphabet: return FUPC_ERR_TRIVIAL_ALPHABET;
    case ErrorCode::kEnumerationTooLarge: return FUPC_ERR_ENUMERATION_TOO_LARGE;
    case ErrorCode::kBaseMismatch: return FUPC_ERR_BASE_MISMATCH;
    case ErrorCode::kShapeMismatch: return FUPC_ERR_SHAPE_MISMATCH;
    case ErrorCode::kNonpositiveLipschitz: return FUPC_ERR_NONPOSITIVE_LIPSCHITZ;
    case ErrorCode::kNonpositiveInput: return FUPC_ERR_NONPOSITIVE_INPUT;
    case ErrorCode::kCertificateViolation: return FUPC_ERR_CERTIFICATE_VIOLATION;
    case ErrorCode::kInvariantFailure: return FUPC_ERR_INVARIANT_FAILURE;
  }
  return FUPC_ERR_INTERNAL;
}

fupc_status Fail(fupc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
fupc_status Guard(Body&& body) {
  try {
    return body();
  } catch (const fupc::Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FUPC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FUPC_ERR_INTERNAL, e.what());
  }
}

#define FUPC_REQUIRE(ptr)                                             \
  do {                                                                \
    if ((ptr) == nullptr) return Fail(FUPC_ERR_NULL_ARGUMENT, #ptr " is null"); \
  } while (0)

fupc::EvalMode ModeFor(const fupc_options& o, std::uint64_t mc_samples) {
  fupc::EvalMode mode = mc_samples == 0
                            ? fupc::EvalMode::Exact(o.threads)
                            : fupc::EvalMode::MonteCarlo(mc_samples, o.seed, o.threads);
  mode.seed = o.seed;
  mode.enumeration_cap = o.enumeration_cap;
  return mode;
}

// The config echo: command parameters, seed, format and caps. The thread
// count is left out so output bytes do not depend on it.
nlohmann::json BaseConfig(const fupc_options& o, nlohmann::json params) {
  params["seed"] = o.seed;
  params["format"] = o.format == fupc::Format::kCsv ? "csv" : "json";
  params["n_cap"] = o.n_cap;
  params["enumeration_cap"] = o.enumeration_cap;
  params["dense_cap"] = o.dense_cap;
  for (const auto& [key, value] : o.echo.items()) params[key] = value;
  return params;
}

fupc_status Finish(const fupc_options& o, fupc::Document doc, std::size_t failed,
                   fupc_result** out) {
  if (o.timestamp) doc.timestamp = fupc::UtcTimestamp();
  auto result = std::make_unique<fupc_result>();
  result->text = fupc::Render(doc, o.format);
  result->rows = doc.tables.empty() ? 0 : doc.tables.front().rows.size();
  result->failed_checks = failed;
  *out = result.release();
  return FUPC_OK;
}

fupc_status SetCap(fupc_options* options, std::uint64_t cap, std::uint64_t fupc_options::*field) {
  FUPC_REQUIRE(options);
  if (cap == 0) return Fail(FUPC_ERR_INVALID_ARGUMENT, "caps must be positive");
  options->*field = cap;
  return FUPC_OK;
}

}  // namespace

extern "C" {

const char* fupc_status_name(fupc_status status) {
  switch (status) {
    case FUPC_OK: return "ok";
    case FUPC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FUPC_ERR_PARSE: return "parse_error";
    case FUPC_ERR_BASE_TOO_SMALL: return "base_too_small";
    case FUPC_ERR_DIGIT_OUT_OF_RANGE: return "digit_out_of_range";
    case FUPC_ERR_DUPLICATE_DIGIT: return "duplicate_digit";
    case FUPC_ERR_EMPTY_ALPHABET: return "empty_alphabet";
    case FUPC_ERR_ORDER_TOO_LARGE: return "order_too_large";
    case FUPC_ERR_ORDER_TOO_SMALL: return "order_too_small";
    case FUPC_ERR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case FUPC_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case FUPC_ERR_DENSE_CAP_EXCEEDED: return "dense_cap_exceeded";
    case FUPC_ERR_TRIVIAL_ALPHABET: return "trivial_alphabet";
    case FUPC_ERR_ENUMERATION_TOO_LARGE: return "enumeration_too_large";
    case FUPC_ERR_BASE_MISMATCH: return "base_mismatch";
    case FUPC_ERR_SHAPE_MISMATCH: return "shape_mismatch";
    case FUPC_ERR_NONPOSITIVE_LIPSCHITZ: return "nonpositive_lipschitz";
    case FUPC_ERR_NONPOSITIVE_INPUT: return "nonpositive_input";
    case FUPC_ERR_CERTIFICATE_VIOLATION: return "certificate_violation";
    case FUPC_ERR_INVARIANT_FAILURE: return "invariant_failure";
    case FUPC_ERR_NULL_ARGUMENT: return "null_argument";
    case FUPC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int fupc_status_exit_code(fupc_status status) {
  switch (status) {
    case FUPC_OK:
      return 0;
    case FUPC_ERR_ORDER_TOO_LARGE:
    case FUPC_ERR_DENSE_CAP_EXCEEDED:
    case FUPC_ERR_ENUMERATION_TOO_LARGE:
      return 2;
    case FUPC_ERR_CERTIFICATE_VIOLATION:
    case FUPC_ERR_INVARIANT_FAILURE:
      return 3;
    default:
      return 1;
  }
}

const char* fupc_last_error(void) { return last_error.c_str(); }

const char* fupc_version(void) { return "1.0.0"; }

fupc_options* fupc_options_new(void) { return new (std::nothrow) fupc_options(); }

void fupc_options_free(fupc_options* options) { delete options; }

fupc_status fupc_options_set_threads(fupc_options* options, int threads) {
  FUPC_REQUIRE(options);
  if (threads < 1) return Fail(FUPC_ERR_INVALID_ARGUMENT, "threads must be at least 1");
  options->threads = threads;
  return FUPC_OK;
}

fupc_status fupc_options_set_seed(fupc_options* options, uint64_t seed) {
  FUPC_REQUIRE(options);
  options->seed = seed;
  return FUPC_OK;
}

fupc_status fupc_options_set_format(fupc_options* options, const char* format) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(format);
  return Guard([&] {
    options->format = fupc::ParseFormat(format);
    return FUPC_OK;
  });
}

fupc_status fupc_options_set_timestamp(fupc_options* options, int enabled) {
  FUPC_REQUIRE(options);
  options->timestamp = enabled != 0;
  return FUPC_OK;
}

fupc_status fupc_options_set_n_cap(fupc_options* options, uint64_t cap) {
  return SetCap(options, cap, &fupc_options::n_cap);
}

fupc_status fupc_options_set_enumeration_cap(fupc_options* options, uint64_t cap) {
  return SetCap(options, cap, &fupc_options::enumeration_cap);
}

fupc_status fupc_options_set_dense_cap(fupc_options* options, uint64_t cap) {
  return SetCap(options, cap, &fupc_options::dense_cap);
}

fupc_status fupc_options_add_echo(fupc_options* options, const char* key, const char* value) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(key);
  FUPC_REQUIRE(value);
  options->echo[key] = value;
  return FUPC_OK;
}

const char* fupc_result_text(const fupc_result* result) {
  return result == nullptr ? "" : result->text.c_str();
}

size_t fupc_result_size(const fupc_result* result) {
  return result == nullptr ? 0 : result->text.size();
}

size_t fupc_result_rows(const fupc_result* result) {
  return result == nullptr ? 0 : result->rows;
}

size_t fupc_result_failed_checks(const fupc_result* result) {
  return result == nullptr ? 0 : result->failed_checks;
}

void fupc_result_free(fupc_result* result) { delete result; }

fupc_status fupc_run_beta(const fupc_options* options, const char* alphabet, int k_max,
                          double tol, const char* method, fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(alphabet);
  FUPC_REQUIRE(out);
  return Guard([&] {
    const fupc::Alphabet a = fupc::Alphabet::Parse(alphabet);
    if (k_max < 1) return Fail(FUPC_ERR_ORDER_TOO_SMALL, "k_max must be at least 1");
    if (!(tol > 0.0)) return Fail(FUPC_ERR_INVALID_ARGUMENT, "tol must be positive");
    const std::string m = method == nullptr ? "power" : method;
    if (m != "power" && m != "lanczos") {
      return Fail(FUPC_ERR_PARSE, "method must be power or lanczos, got '" + m + "'");
    }
    fupc::PowerOptions power;
    power.n_cap = options->n_cap;
    std::vector<fupc::SpectralReport> reports;
    if (static_cast<std::uint64_t>(a.size()) <= options->dense_cap) {
      reports.push_back(fupc::R1Dense(a, options->dense_cap));
    }
    double beta_lower = -HUGE_VAL;
    bool converged = true;
    for (int k = 1; k <= k_max; ++k) {
      const std::uint64_t seed = fupc::DeriveSeed(options->seed, static_cast<std::uint64_t>(k));
      reports.push_back(m == "power" ? fupc::RkPower(a, k, tol, seed, power)
                                     : fupc::RkLanczos(a, k, tol, seed, power));
      beta_lower = std::max(beta_lower, reports.back().beta_k);
      converged = converged && reports.back().converged;
    }
    fupc::Document doc;
    doc.command = "beta";
    doc.config = BaseConfig(*options, {{"alphabet", a.ToString()},
                                       {"k_max", k_max},
                                       {"tol", tol},
                                       {"method", m}});
    doc.tables.push_back(fupc::SpectralTable(reports));
    fupc::Table summary{"summary", {"M", "alphabet", "delta", "k_max", "beta_lower", "converged"}, {}};
    summary.AddRow({static_cast<std::int64_t>(a.base()), a.ToString(), fupc::Dimension(a),
                    static_cast<std::int64_t>(k_max), beta_lower, converged});
    doc.tables.push_back(std::move(summary));
    return Finish(*options, std::move(doc), 0, out);
  });
}

fupc_status fupc_run_sweep(const fupc_options* options, int m, int a, uint64_t mc_samples,
                           int k_max, double epsilon, fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(out);
  return Guard([&] {
    const fupc::AlphabetSpace space(m, a);
    if (!(1 < a && a < m)) {
      return Fail(FUPC_ERR_TRIVIAL_ALPHABET, "sweep needs 1 < A < M");
    }
    const int k = k_max > 0 ? k_max : fupc::DefaultKMax(m, fupc::kExperimentKLimit, options->n_cap);
    const fupc::EvalMode mode = ModeFor(*options, mc_samples);
    fupc::BetaSampleOptions opts;
    opts.k_max = k;
    opts.n_cap = options->n_cap;
    const fupc::BetaSample sample = fupc::SampleBetaLower(space, mode, opts);
    const fupc::CurvePoint point = fupc::CurveFromSample(m, a, sample, mode, k);
    std::size_t failed = point.dominates_volume ? 0 : 1;

    fupc::Document doc;
    doc.command = "sweep";
    nlohmann::json params = {{"m", m},
                             {"a", a},
                             {"mode", fupc::EvalKindName(mode.kind)},
                             {"k_max", k}};
    if (mc_samples > 0) params["samples"] = mc_samples;
    if (epsilon > 0.0) params["epsilon"] = epsilon;
    doc.config = BaseConfig(*options, params);
    doc.tables.push_back(fupc::SampleTable(sample, mode));
    doc.tables.push_back(fupc::CurveTable({point}));
    if (epsilon > 0.0) {
      const fupc::FupcRecord rec = fupc::FupcFromSample(m, a, epsilon, sample, mode, k);
      if (!rec.floor_holds) ++failed;
      doc.tables.push_back(fupc::FupcTable({rec}));
    }
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_run_figure1(const fupc_options* options, int m_lo, int m_hi, int k_max,
                             fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(out);
  return Guard([&] {
    if (m_hi < m_lo) return Fail(FUPC_ERR_INVALID_ARGUMENT, "empty M range");
    const auto points =
        fupc::Figure1Dataset(m_lo, m_hi, k_max, options->seed, options->threads);
    std::size_t failed = 0;
    for (const auto& p : points) failed += p.dominates_volume ? 0 : 1;
    fupc::Document doc;
    doc.command = "sweep";
    doc.config = BaseConfig(*options, {{"figure1", true},
                                       {"m_lo", m_lo},
                                       {"m_hi", m_hi},
                                       {"k_max", k_max > 0 ? nlohmann::json(k_max) : nlohmann::json("auto")}});
    doc.tables.push_back(fupc::CurveTable(points));
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_run_concentration(const fupc_options* options, int m, int a, int64_t freq,
                                   uint64_t mc_samples, double t_max, int points,
                                   fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(out);
  return Guard([&] {
    if (points < 2) return Fail(FUPC_ERR_INVALID_ARGUMENT, "need at least 2 grid points");
    const double hi = t_max > 0.0 ? t_max : 2.0 * a;
    const fupc::EvalMode mode = ModeFor(*options, mc_samples);
    const fupc::TailReport r =
        fupc::ConcentrationExperiment(m, a, freq, fupc::LinearGrid(0.0, hi, points), mode);
    std::size_t failed = 0;
    if (mode.kind == fupc::EvalKind::kExact) {
      for (std::size_t i = 0; i < r.t_grid.size(); ++i) failed += r.empirical_tail[i] > r.bound[i];
    }
    fupc::Document doc;
    doc.command = "concentration";
    nlohmann::json params = {{"m", m}, {"a", a}, {"freq", freq}, {"t_max", hi},
                             {"points", points}, {"mode", fupc::EvalKindName(mode.kind)}};
    if (mc_samples > 0) params["samples"] = mc_samples;
    doc.config = BaseConfig(*options, params);
    doc.tables.push_back(fupc::TailTable(r));
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_run_goodset(const fupc_options* options, int m, int a, double level,
                             uint64_t mc_samples, fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(out);
  return Guard([&] {
    const fupc::EvalMode mode = ModeFor(*options, mc_samples);
    const fupc::GoodSetReport r = fupc::MeasureGoodSet(fupc::AlphabetSpace(m, a), level, mode);
    fupc::Document doc;
    doc.command = "goodset";
    nlohmann::json params = {{"m", m}, {"a", a}, {"L", level},
                             {"mode", fupc::EvalKindName(mode.kind)}};
    if (mc_samples > 0) params["samples"] = mc_samples;
    doc.config = BaseConfig(*options, params);
    doc.tables.push_back(fupc::GoodSetSummaryTable(r));
    doc.tables.push_back(fupc::GoodSetFrequencyTable(r));
    const std::size_t failed = mode.kind == fupc::EvalKind::kExact && !r.holds_64 ? 1 : 0;
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_run_oqm(const fupc_options* options, const char* alphabet, int k_lo,
                         int k_hi, double epsilon, fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(alphabet);
  FUPC_REQUIRE(out);
  return Guard([&] {
    const fupc::Alphabet a = fupc::Alphabet::Parse(alphabet);
    if (k_hi < k_lo) return Fail(FUPC_ERR_INVALID_ARGUMENT, "empty k range");
    std::vector<int> ks;
    for (int k = k_lo; k <= k_hi; ++k) ks.push_back(k);
    const auto rows =
        fupc::GapReport(a, ks, fupc::DefaultBetaCandidates(a, epsilon), options->threads);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += (r.norm > 1.0 + 1e-9) || (r.rho > r.norm + 1e-6);
    fupc::Document doc;
    doc.command = "oqm";
    doc.config = BaseConfig(*options, {{"alphabet", a.ToString()},
                                       {"k_lo", k_lo},
                                       {"k_hi", k_hi},
                                       {"epsilon", epsilon}});
    doc.tables.push_back(fupc::GapTable(rows));
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_run_verify(const fupc_options* options, int quick, fupc_result** out) {
  FUPC_REQUIRE(options);
  FUPC_REQUIRE(out);
  return Guard([&] {
    const auto results = fupc::RunInvariantSuite(
        {.quick = quick != 0, .threads = options->threads, .seed = options->seed});
    std::size_t failed = 0;
    for (const auto& r : results) failed += !r.passed;
    fupc::Document doc;
    doc.command = "verify";
    doc.config = BaseConfig(*options, {{"quick", quick != 0}});
    doc.tables.push_back(fupc::VerifyTable(results));
    return Finish(*options, std::move(doc), failed, out);
  });
}

fupc_status fupc_rk(const char* alphabet, int k, double tol, uint64_t seed, double* r_k,
                    double* beta_k) {
  FUPC_REQUIRE(alphabet);
  return Guard([&] {
    const fupc::SpectralReport r = fupc::RkPower(fupc::Alphabet::Parse(alphabet), k, tol, seed);
    if (r_k != nullptr) *r_k = r.r_k;
    if (beta_k != nullptr) *beta_k = r.beta_k;
    return FUPC_OK;
  });
}

fupc_status fupc_r1_dense(const char* alphabet, double* r_1) {
  FUPC_REQUIRE(alphabet);
  FUPC_REQUIRE(r_1);
  return Guard([&] {
    *r_1 = fupc::R1Dense(fupc::Alphabet::Parse(alphabet)).r_k;
    return FUPC_OK;
  });
}

}  // extern "C"
