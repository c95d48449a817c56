// Copyright 2026 The qpa Authors
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

// The `qpa` command line. run() is separate from main() so tests can drive
// it in-process.

#ifndef QPA_TOOLS_CLI_HPP_
#define QPA_TOOLS_CLI_HPP_

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpa/corpus.hpp"
#include "qpa/exponents.hpp"
#include "qpa/hash_family.hpp"
#include "qpa/quantities.hpp"
#include "qpa/report_json.hpp"
#include "qpa/verification.hpp"

namespace qpa::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kParse = 2,
  kInvalidState = 3,
  kMismatch = 4,
  kIo = 5,
};

struct RunConfig {
  std::string command;
  std::string preset;
  std::string state_path;
  int power = 1;
  std::string family;
  std::string suite;
  std::vector<double> s_values;
  std::vector<double> t_values;
  std::vector<double> r_values;
  std::optional<double> r_min;
  std::optional<double> r_max;
  int steps = 21;
  std::string output;
  std::string format = "text";
  std::string log_base = "nats";
};

/// Writes to a temporary sibling and renames it over the target.
inline void write_atomically(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp =
      target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << data;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename onto " + path + ": " + ec.message());
  }
}

inline void emit(const RunConfig& cfg, const std::string& data, std::ostream& out) {
  if (cfg.output.empty()) {
    out << data;
  } else {
    write_atomically(cfg.output, data);
  }
}

/// "name" or "name:param".
inline CQState preset_from_flag(const std::string& flag) {
  const auto colon = flag.find(':');
  if (colon == std::string::npos) return preset(flag);
  const std::string param = flag.substr(colon + 1);
  try {
    std::size_t used = 0;
    double value = std::stod(param, &used);
    if (used != param.size()) throw std::invalid_argument(param);
    return preset(flag.substr(0, colon), value);
  } catch (const std::logic_error&) {
    throw ParseError("bad preset parameter '" + param + "'");
  }
}

inline std::string state_label(const RunConfig& cfg) {
  std::string base = cfg.preset.empty() ? cfg.state_path : cfg.preset;
  return cfg.power > 1 ? base + "^" + std::to_string(cfg.power) : base;
}

inline CQState load_state(const RunConfig& cfg) {
  if (cfg.preset.empty() == cfg.state_path.empty()) {
    throw ParseError("give exactly one of --preset or --state");
  }
  CQState s = cfg.preset.empty() ? load_state_file(cfg.state_path) : preset_from_flag(cfg.preset);
  if (cfg.power < 1) throw ParseError("--power must be >= 1");
  return cfg.power == 1 ? s : tensor_power(s, cfg.power);
}

/// Keys that are not in units of log (distances and counts).
inline bool is_unitless(const std::string& key) {
  return key == "d1" || key == "d1_prime" || key == "v";
}

inline double present(double nats, const RunConfig& cfg) {
  return cfg.log_base == "bits" ? nats / std::numbers::ln2 : nats;
}

inline std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return format_number(x);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline int run_quantities(const RunConfig& cfg, std::ostream& out) {
  CQState s = load_state(cfg);
  std::vector<double> orders = cfg.s_values.empty() ? std::vector<double>{0.5, 1.0} : cfg.s_values;
  QuantityReport r = quantity_report(s, orders, cfg.t_values);
  if (cfg.format == "json") {
    Json j = to_json(r);
    j["state"] = state_label(cfg);
    emit(cfg, dump(j), out);
    return kOk;
  }
  if (cfg.format == "csv") {
    std::string text = "quantity,value,units\n";
    for (const auto& [k, v] : r.values) {
      text += k + "," + fmt(v) + "," + (is_unitless(k) ? "" : "nats") + "\n";
    }
    emit(cfg, text, out);
    return kOk;
  }
  std::ostringstream ss;
  ss << "state " << state_label(cfg) << "\n";
  for (const auto& [k, v] : r.values) {
    const bool plain = is_unitless(k);
    ss << k << " = " << fmt(plain ? v : present(v, cfg));
    if (!plain) ss << " " << cfg.log_base;
    ss << "\n";
  }
  emit(cfg, ss.str(), out);
  return kOk;
}

inline std::string bound_line(const BoundReport& r) {
  double min_rhs = r.lhs + r.slack;
  std::string line = std::string(r.all_passed() ? "PASS " : "FAIL ") + r.theorem + " state=" +
                     r.state_name + " family=" + r.family + " v=" + std::to_string(r.v) +
                     " M=" + std::to_string(r.M) + " lhs=" + fmt(r.lhs) +
                     " rhs=" + fmt(min_rhs) + " best_s=" + fmt(r.best_s) +
                     " slack=" + fmt(r.slack);
  for (const auto& c : r.side_checks) {
    if (!c.passed) line += " [failed: " + c.name + "]";
  }
  return line + "\n";
}

struct SuiteResult {
  std::vector<std::string> lines;
  Json reports = Json::array();
  bool passed = true;
};

inline void add_bound(SuiteResult& out, const BoundReport& r) {
  out.lines.push_back(bound_line(r));
  out.reports.push_back(to_json(r));
  out.passed = out.passed && r.all_passed();
}

inline void add_check(SuiteResult& out, const std::string& name, bool ok,
                      const std::string& detail, Json j) {
  out.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + name + " " + detail + "\n");
  j["check"] = name;
  j["passed"] = ok;
  out.reports.push_back(std::move(j));
  out.passed = out.passed && ok;
}

inline SuiteResult full_suite(const std::vector<double>& grid) {
  SuiteResult out;
  const auto corpus = state_corpus();
  for (const auto& entry : corpus) {
    for (const auto& f : corpus_families(entry.k)) {
      add_bound(out, verify_thm1(entry.state, f, grid, entry.name));
      add_bound(out, verify_thm2(entry.state, f, grid, entry.name));
      add_bound(out, verify_finite_size(entry.state, f, grid, entry.name));
    }
  }
  for (const auto& entry : corpus) {
    PinchingReport p = pinching_bound_check(entry.state);
    add_check(out, "pinching", p.passed,
              "state=" + entry.name + " v=" + std::to_string(p.v) + " slack=" + fmt(p.slack) +
                  " min_eig=" + fmt(p.min_eig_pinching),
              {{"state", entry.name},
               {"v", p.v},
               {"I", number_json(p.I)},
               {"I_pinched", number_json(p.I_pinched)},
               {"I_bar_pinched", number_json(p.I_bar_pinched)},
               {"slack", number_json(p.slack)},
               {"min_eig", number_json(p.min_eig_pinching)}});
    auto mi = mutual_info_variants(entry.state);
    auto td = trace_distances(entry.state);
    const double lhs = td.d1_prime * td.d1_prime;
    add_check(out, "pinsker", lhs <= 2.0 * mi.I_prime + kBoundTolerance,
              "state=" + entry.name + " d1'^2=" + fmt(lhs) + " 2I'=" + fmt(2.0 * mi.I_prime),
              {{"state", entry.name},
               {"lhs", number_json(lhs)},
               {"rhs", number_json(2.0 * mi.I_prime)}});
  }
  const std::vector<double> lemma_grid = default_s_grid();
  double worst_sub = std::numeric_limits<double>::infinity();
  double worst_log = worst_sub;
  bool lemmas_ok = true;
  constexpr int kLemmaSeeds = 200;
  std::vector<MatrixLemmaReport> lemma(kLemmaSeeds);
  parallel_for(kLemmaSeeds, [&](std::size_t i) {
    lemma[i] = matrix_lemma_checks(i, 2 + static_cast<Index>(i % 5), lemma_grid);
  });
  for (const auto& r : lemma) {
    worst_sub = std::min(worst_sub, r.min_eig_subadditive);
    worst_log = std::min(worst_log, r.min_eig_log);
    lemmas_ok = lemmas_ok && r.passed;
  }
  add_check(out, "matrix_lemmas", lemmas_ok,
            "seeds=" + std::to_string(kLemmaSeeds) + " min_eig_power=" + fmt(worst_sub) +
                " min_eig_log=" + fmt(worst_log),
            {{"seeds", kLemmaSeeds},
             {"min_eig_power", number_json(worst_sub)},
             {"min_eig_log", number_json(worst_log)}});
  return out;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> grid = cfg.s_values.empty() ? default_s_grid() : cfg.s_values;
  for (double s : grid) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("--s values must lie in (0, 1]");
  }
  SuiteResult result;
  if (!cfg.suite.empty()) {
    if (cfg.suite != "full") throw ParseError("unknown suite '" + cfg.suite + "' (known: full)");
    result = full_suite(grid);
  } else {
    if (cfg.family.empty()) throw ParseError("verify needs --family or --suite full");
    CQState s = load_state(cfg);
    HashFamily f = parse_family(cfg.family);
    const std::string name = state_label(cfg);
    add_bound(result, verify_thm1(s, f, grid, name));
    add_bound(result, verify_thm2(s, f, grid, name));
    add_bound(result, verify_finite_size(s, f, grid, name));
  }
  if (cfg.format == "json") {
    emit(cfg, dump({{"passed", result.passed}, {"reports", result.reports}}), out);
  } else {
    std::string text;
    for (const auto& l : result.lines) text += l;
    text += std::string(result.passed ? "ALL PASS" : "SOME FAILED") + " (" +
            std::to_string(result.lines.size()) + " checks)\n";
    emit(cfg, text, out);
  }
  return result.passed ? kOk : kVerificationFailed;
}

inline double default_r_max(const CQState& s) {
  return std::log(static_cast<double>(s.alphabet_size()));
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out) {
  CQState s = load_state(cfg);
  ExponentCurve c =
      exponent_curve(s, cfg.r_min.value_or(0.0), cfg.r_max.value_or(default_r_max(s)), cfg.steps);
  if (cfg.format == "json") {
    Json j = to_json(c);
    j["state"] = state_label(cfg);
    emit(cfg, dump(j), out);
  } else {
    emit(cfg, curve_csv(c), out);
  }
  return kOk;
}

inline int run_exponents(const RunConfig& cfg, std::ostream& out) {
  CQState s = load_state(cfg);
  if (cfg.r_values.empty()) throw ParseError("exponents needs --r");
  ExponentProfile profile(s);
  ExponentCurve c;
  for (double R : cfg.r_values) c.rows.push_back(exponent_row(profile, R));
  if (cfg.format == "json") {
    Json j = to_json(c);
    j["state"] = state_label(cfg);
    emit(cfg, dump(j), out);
  } else if (cfg.format == "csv") {
    emit(cfg, curve_csv(c), out);
  } else {
    std::ostringstream ss;
    ss << "state " << state_label(cfg) << "\n";
    for (const auto& r : c.rows) {
      ss << "R = " << fmt(present(r.R, cfg)) << " " << cfg.log_base << "\n"
         << "  e_H = " << fmt(present(r.e_H.value, cfg)) << " at s = " << fmt(r.e_H.argmax) << "\n"
         << "  e_H_q = " << fmt(present(r.e_H_q.value, cfg)) << " at s = " << fmt(r.e_H_q.argmax)
         << "\n"
         << "  e_phi_q = " << fmt(present(r.e_phi_q.value, cfg))
         << " at t = " << fmt(r.e_phi_q.argmax) << "\n"
         << "  e_d_lower = " << fmt(present(r.e_d_lower, cfg)) << "\n";
    }
    emit(cfg, ss.str(), out);
  }
  return kOk;
}

inline int run_rates(const RunConfig& cfg, std::ostream& out) {
  CQState s = load_state(cfg);
  if (cfg.r_values.empty()) throw ParseError("rates needs --r");
  std::vector<RatePoint> points;
  for (double R : cfg.r_values) points.push_back(rates(s, R));
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& p : points) arr.push_back(to_json(p));
    emit(cfg, dump({{"state", state_label(cfg)}, {"points", arr}, {"units", "nats"}}), out);
  } else if (cfg.format == "csv") {
    std::string text = "R,generation_rate,equivocation,min_leak_rate\n";
    for (const auto& p : points) {
      text += fmt(p.R) + "," + fmt(p.generation_rate) + "," + fmt(p.equivocation) + "," +
              fmt(p.min_leak_rate) + "\n";
    }
    emit(cfg, text, out);
  } else {
    std::ostringstream ss;
    for (const auto& p : points) {
      ss << "R = " << fmt(present(p.R, cfg)) << " " << cfg.log_base << ": G = "
         << fmt(present(p.generation_rate, cfg)) << ", equivocation = "
         << fmt(present(p.equivocation, cfg)) << ", min leak rate = "
         << fmt(present(p.min_leak_rate, cfg)) << "\n";
    }
    emit(cfg, ss.str(), out);
  }
  return kOk;
}

/// Closed-form expectations, checked against the library.
inline int run_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, double got, double want, double tol = 1e-10) {
    const bool ok = std::abs(got - want) <= tol;
    out << (ok ? "ok   " : "FAIL ") << name << ": got " << fmt(got) << ", want " << fmt(want)
        << "\n";
    if (!ok) ++failures;
  };
  auto check_true = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  const double ln2 = std::numbers::ln2;
  const CQState product = presets::product();
  const CQState copy = presets::copy();

  check("product H(A|E)", cond_entropy(product), ln2);
  check("product H_{1.5}(A|E)", renyi_cond(product, 0.5), ln2);
  check("product I'", mutual_info_variants(product).I_prime, 0.0);
  check("copy H(A|E)", cond_entropy(copy), 0.0);
  check("copy I'", mutual_info_variants(copy).I_prime, ln2);
  check("copy d1'", trace_distances(copy).d1_prime, 1.0);
  check("product H_min", min_entropy(product), ln2);

  check("thm1 rhs product M=2 s=1", thm1_rhs(product, 2, 1.0), 1.0);
  check("thm1 rhs copy M=2 s=1", thm1_rhs(copy, 2, 1.0), 2.0);
  check("finite-size copy M=2 s=1", finite_size_bound(copy, 2, 1.0), 2.0 * ln2);
  check("finite-size product M=2 s=1", finite_size_bound(product, 2, 1.0), ln2);
  {
    auto f = make_family(FamilyKind::modified_toeplitz, 2, 2, 1);
    check("E_X I' product", ensemble_avg_I_prime(tensor_power(product, 2), f), 0.0);
    check("E_X e^{s Ibar'} product", ensemble_avg_exp_sI_bar_prime(tensor_power(product, 2), f, 0.5),
          1.0);
  }

  check("toeplitz q=2 k=2 m=1 members",
        static_cast<double>(make_family(FamilyKind::toeplitz, 2, 2, 1).member_count()), 4.0, 0.0);
  check("modified q=2 k=2 m=1 members",
        static_cast<double>(make_family(FamilyKind::modified_toeplitz, 2, 2, 1).member_count()),
        2.0, 0.0);
  check("modified q=3 k=3 m=1 members",
        static_cast<double>(make_family(FamilyKind::modified_toeplitz, 3, 3, 1).member_count()),
        9.0, 0.0);
  {
    auto f = make_family(FamilyKind::modified_toeplitz, 2, 2, 1);
    check_true("modified X=1 table 0,1,1,0",
               f.member(1).function.table == std::vector<std::uint32_t>{0, 1, 1, 0});
    auto c = collision_stats(make_family(FamilyKind::toeplitz, 2, 2, 1));
    check_true("toeplitz q=2 k=2 m=1 collision 1/2",
               c.max_collision_prob == Rational::make(1, 2) && c.is_universal2);
    auto constant = make_explicit_family({ClassicalFunction{{0, 0, 0, 0}, 2}});
    check_true("constant function not universal2", !collision_stats(constant).is_universal2);
  }

  check("e_H product R=0.3", exponent_e_H(product, 0.3).value, ln2 - 0.3);
  check("e_H product argmax", exponent_e_H(product, 0.3).argmax, 1.0);
  check("e_H_q product R=0.3", exponent_e_H_q(product, 0.3).value, ln2 - 0.3);
  check("e_phi_q product R=0.3", exponent_e_phi_q(product, 0.3).value, (ln2 - 0.3) / 2.0);
  check("e_phi_q product argmax", exponent_e_phi_q(product, 0.3).argmax, 0.5);
  check("e_H copy R=0.3", exponent_e_H(copy, 0.3).value, 0.0);
  check("e_H above log|A|", exponent_e_H(presets::tilted_qubit(), ln2 + 1.0).value, 0.0);

  check("rates product R=1 equivocation", rates(product, 1.0).equivocation, ln2);
  check("rates product R=1 leak", rates(product, 1.0).min_leak_rate, 1.0 - ln2);
  check("rates product R=0.3 equivocation", rates(product, 0.3).equivocation, 0.3);
  check("rates copy R=0.5 equivocation", rates(copy, 0.5).equivocation, 0.0);
  check("rates copy R=0.5 leak", rates(copy, 0.5).min_leak_rate, 0.5);

  {
    auto r = matrix_lemma_checks(HermitianMatrix::diagonal({1.0, 4.0}), {0.5});
    check("matrix lemmas diag(1,4) power", r.min_eig_subadditive, 2.0 - std::sqrt(2.0));
    check_true("matrix lemmas diag(1,4) passed", r.passed);
    auto z = matrix_lemma_checks(HermitianMatrix::zero(2), {0.5});
    check("matrix lemmas X=0", z.min_eig_subadditive, 0.0);
  }

  out << (failures == 0 ? "selftest passed\n" : std::to_string(failures) + " selftest failures\n");
  return failures == 0 ? kOk : kVerificationFailed;
}

/// Parses argv and runs one command. Errors go to `err`; the return value is
/// the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qpa: privacy amplification bounds for classical-quantum states", "qpa"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset,
                    "preset name: copy, product, tilted-qubit, bb84[:theta], depolarized[:p]");
    sub->add_option("--state", cfg.state_path, "state JSON file");
    sub->add_option("--power", cfg.power, "use the n-fold tensor power of the state");
  };
  auto add_output = [&](CLI::App* sub, const std::string& default_format) {
    cfg.format = default_format;
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--log-base", cfg.log_base, "nats or bits (text output only)")
        ->check(CLI::IsMember({"nats", "bits"}));
  };

  auto* quantities = app.add_subcommand("quantities", "information quantities of a state");
  add_state(quantities);
  quantities->add_option("--s", cfg.s_values, "Renyi orders s (H_{1+s})")->delimiter(',');
  quantities->add_option("--t", cfg.t_values, "phi(t) arguments")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "check the hashing bounds");
  add_state(verify);
  verify->add_option("--family", cfg.family, "e.g. toeplitz:q=2,k=2,m=1");
  verify->add_option("--suite", cfg.suite, "full: whole built-in corpus");
  verify->add_option("--s", cfg.s_values, "s grid in (0, 1]")->delimiter(',');

  auto* exponents = app.add_subcommand("exponents", "decay exponents at given rates");
  add_state(exponents);
  exponents->add_option("--r", cfg.r_values, "key rates R (nats)")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "exponent curve over a rate range, as CSV");
  add_state(sweep);
  sweep->add_option("--r-min", cfg.r_min, "default 0");
  sweep->add_option("--r-max", cfg.r_max, "default log|A|");
  sweep->add_option("--steps", cfg.steps, "number of rows (default 21)");

  auto* rates_cmd = app.add_subcommand("rates", "equivocation and minimum leak rate");
  add_state(rates_cmd);
  rates_cmd->add_option("--r", cfg.r_values, "key rates R (nats)")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "closed-form checks");

  // Default formats differ per command; only sweep defaults to CSV.
  add_output(quantities, "text");
  add_output(verify, "text");
  add_output(exponents, "text");
  add_output(rates_cmd, "text");
  add_output(sweep, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qpa: " << e.what() << "\n";
    return kParse;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    int code = kOk;
    if (*quantities) {
      code = run_quantities(cfg, out);
    } else if (*verify) {
      code = run_verify(cfg, out);
    } else if (*exponents) {
      code = run_exponents(cfg, out);
    } else if (*sweep) {
      if (sweep->count("--format") == 0) cfg.format = "csv";
      code = run_sweep(cfg, out);
    } else if (*rates_cmd) {
      code = run_rates(cfg, out);
    } else if (*selftest) {
      code = run_selftest(out);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!cfg.output.empty()) err << "qpa: wrote " << cfg.output << " in " << fmt(secs) << " s\n";
    return code;
  } catch (const InvalidStateError& e) {
    err << "qpa: invalid state (" << e.invariant() << "): " << e.what() << "\n";
    return kInvalidState;
  } catch (const ParseError& e) {
    err << "qpa: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const MismatchError& e) {
    err << "qpa: mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const IoError& e) {
    err << "qpa: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    err << "qpa: " << e.what() << "\n";
    return kParse;
  } catch (const SizeError& e) {
    err << "qpa: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "qpa: error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace qpa::cli

#endif  // QPA_TOOLS_CLI_HPP_
