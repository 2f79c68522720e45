#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "prodset/constants.hpp"
#include "prodset/constructions.hpp"
#include "prodset/errors.hpp"
#include "prodset/factor_sieve.hpp"
#include "prodset/int_set_io.hpp"
#include "prodset/product_sets.hpp"
#include "prodset/tilted_sums.hpp"

namespace prodset::cli {

namespace {

// Accepts "1000", "2^10", "1e6".
std::uint64_t parse_count(const std::string& flag, const std::string& text) {
  const auto fail = [&] { return UsageError("--" + flag + ": expected a nonnegative integer, got '" + text + "'"); };
  if (text.empty()) throw fail();
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    const std::uint64_t base = parse_count(flag, text.substr(0, caret));
    const std::uint64_t exp = parse_count(flag, text.substr(caret + 1));
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (base != 0 && v > ~std::uint64_t{0} / base) throw UsageError("--" + flag + ": value overflows 64 bits");
      v *= base;
    }
    return v;
  }
  if (text.find_first_of("eE.") != std::string::npos) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(text, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != text.size() || d < 0 || d != std::floor(d) || d >= 1.8446744073709552e19) throw fail();
    return static_cast<std::uint64_t>(d);
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw fail();
  return v;
}

double parse_real(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--" + flag + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(d)) throw UsageError("--" + flag + ": expected a number, got '" + text + "'");
  return d;
}

template <class T>
T require(const std::optional<T>& value, const char* flag, const std::string& command) {
  if (!value) throw UsageError(command + ": missing required flag --" + std::string(flag));
  return *value;
}

FactorSieve sieve_for(std::uint64_t limit, const CommandOptions& options) {
  return FactorSieve::build(std::max<std::uint64_t>(limit, 2), options.exec.budget);
}

std::vector<std::uint64_t> load_set(const std::string& path, const char* flag) {
  try {
    return read_int_set(std::filesystem::path(path));
  } catch (const DomainError& e) {
    throw UsageError(std::string("--") + flag + ": " + e.what());
  }
}

void maybe_write_set(const CommandOptions& options, std::span<const std::uint64_t> values) {
  if (!options.out_set_path.empty()) write_int_set(std::filesystem::path(options.out_set_path), values);
}

ExperimentReport cmd_theta() {
  ExperimentReport r;
  r.measure("theta", theta());
  r.measure("two_theta", 2 * theta());
  r.compare("half_form", theta_half_form());
  r.compare("unit_form", theta_unit_form());
  r.compare("form_gap", std::fabs(theta_half_form() - theta_unit_form()));
  return r;
}

ExperimentReport cmd_params(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "params");
  r.n = n;
  const auto p = derive_params(n);
  r.measure("k", p.k);
  r.measure("r", p.r);
  r.measure("h", p.h);
  r.measure("x", p.x);
  r.measure("log_n", p.log_n);
  r.measure("log2_n", p.log2_n);
  r.measure("log3_n", p.log3_n);
  r.measure("omega_threshold", p.omega_threshold());
  r.measure("product_threshold", p.product_threshold());
  r.measure("tilt_defined", p.tilt ? 1 : 0);
  if (p.tilt) {
    r.measure("lambda1", p.tilt->lambda1);
    r.measure("lambda2", p.tilt->lambda2);
  }
  r.compare("mn_prediction", mn_prediction(n));
  return r;
}

ExperimentReport cmd_mtable(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "mtable");
  r.n = n;
  const auto m = multiplication_table_size(n, o.exec);
  r.measure("mn", m);
  if (n >= 16) {
    const double pred = mn_prediction(n);
    r.compare("mn_prediction", pred);
    r.compare("mn_over_prediction", static_cast<double>(m) / pred);
  }
  return r;
}

ExperimentReport cmd_prodset(const CommandOptions& o) {
  if (o.a_path.empty()) throw UsageError("prodset: missing required flag --a");
  ExperimentReport r;
  const auto a = load_set(o.a_path, "a");
  const auto b = o.b_path.empty() ? a : load_set(o.b_path, "b");
  const auto s = product_set(a, b, o.exec);
  r.measure("size_a", a.size());
  r.measure("size_b", b.size());
  r.measure("size_ab", s.size);
  r.measure("pair_count", s.pair_count);
  r.measure("max_tau", s.max_tau);
  return r;
}

ExtremalSetB make_b(const CommandOptions& o, std::uint64_t n, const FactorSieve& sieve) {
  if (o.k) return build_B_with_k(n, *o.k, sieve, o.slack, o.exec.workers);
  return build_B(n, sieve, o.slack, o.exec.workers);
}

ExperimentReport cmd_build_b(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "build-b");
  r.n = n;
  const auto sieve = sieve_for(n, o);
  const auto b = make_b(o, n, sieve);
  maybe_write_set(o, b.elements);
  r.param("k", b.k);
  r.param("slack", b.slack);
  r.measure("size_b", b.elements.size());
  r.compare("size_comparator", b.size_comparator);
  r.compare("size_over_comparator", static_cast<double>(b.elements.size()) / b.size_comparator);
  return r;
}

ExperimentReport cmd_build_b_pp(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "build-b-pp");
  r.n = n;
  const auto sieve = sieve_for(n, o);
  const int k = o.k ? *o.k : derive_params(n).k;
  const auto pp = build_B_prime_position_with_k(n, k, sieve, o.exec.workers);
  const auto b = build_B_with_k(n, k, sieve, 2.0, o.exec.workers);
  maybe_write_set(o, pp);
  r.param("k", k);
  r.measure("size_pp", pp.size());
  r.measure("size_b", b.elements.size());
  r.measure("subset", std::includes(b.elements.begin(), b.elements.end(), pp.begin(), pp.end()) ? 1 : 0);
  return r;
}

ExperimentReport cmd_energy(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "energy");
  r.n = n;
  std::vector<std::uint64_t> b;
  if (!o.set_path.empty()) {
    b = load_set(o.set_path, "set");
    if (!b.empty() && b.back() > n) throw UsageError("--set: elements exceed --n");
  } else {
    const auto sieve = sieve_for(n, o);
    const auto built = make_b(o, n, sieve);
    r.param("k", built.k);
    b = built.elements;
  }
  const auto profile = tau_profile(b, o.exec);
  const auto d = energy_diagnostics(profile, b.size(), n);
  r.measure("size_b", d.size);
  r.measure("energy", d.energy);
  r.measure("trivial_floor", d.trivial_floor);
  r.measure("distinct_products", profile.distinct_products());
  r.measure("max_tau", profile.max_tau());
  r.measure("energy_over_size_sq", static_cast<double>(d.energy) / d.size_squared);
  r.compare("log2_n_pow4", d.log2_n_pow4);
  r.compare("ratio", d.ratio);
  if (n >= kValidityFloor) {
    const std::uint64_t dyadic = o.dyadic_t.value_or(4);
    const auto l4 = lemma4_bound_evaluate(n, dyadic);
    r.param("T", dyadic);
    r.compare("energy_bound_summed", l4.summed_comparator);
    r.compare("energy_bound_dyadic_sum", l4.dyadic_sum);
    r.compare("energy_bound_at_T", l4.comparator);
    r.compare("energy_over_bound_summed", static_cast<double>(d.energy) / l4.summed_comparator);
  }
  return r;
}

ExperimentReport cmd_thin(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "thin");
  r.n = n;
  const double g = o.g.value_or(default_g(n));
  std::uint64_t seed = 0;
  if (o.seed) {
    seed = *o.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  r.seed = seed;
  const auto sieve = sieve_for(n, o);
  ThinningOptions options;
  options.compute_predictor = !o.no_predictor;
  options.exec = o.exec;
  const auto t = thinning_experiment(n, g, seed, sieve, options);
  maybe_write_set(o, t.a);
  r.param("g", g);
  r.param("rho", t.rho);
  r.measure("size_b", t.size_b);
  r.measure("size_a", t.size_a);
  r.measure("size_aa", t.size_aa);
  r.measure("ratio_pairs", t.ratio_pairs);
  r.measure("ratio_size", t.ratio_size);
  if (t.predictor) {
    r.compare("predictor", *t.predictor);
    r.compare("aa_over_predictor", static_cast<double>(t.size_aa) / *t.predictor);
  }
  r.compare("rho_sq_f", t.rho_sq_f);
  r.compare("rho_b_sq_over_n11", t.rho_b_sq_over_n11);
  r.compare("f_over_sqrt_b", t.f_over_sqrt_b);
  return r;
}

ExperimentReport cmd_build_a(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "build-a");
  r.n = n;
  const auto sieve = sieve_for(n, o);
  const auto a = build_A_thm2(n, sieve, o.exec.workers);
  maybe_write_set(o, a.elements);
  r.param("k", a.k);
  r.param("r", a.r);
  r.measure("size_a", a.elements.size());
  r.compare("size_comparator", a.size_comparator);
  r.compare("size_over_comparator", static_cast<double>(a.elements.size()) / a.size_comparator);
  return r;
}

ExperimentReport cmd_deficit(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "deficit");
  r.n = n;
  const auto sieve = sieve_for(n, o);
  std::optional<FactorSieve> product_sieve;
  const std::uint64_t top = n * n;
  if (top <= FactorSieve::kMaxLimit && o.exec.budget.fits(FactorSieve::required_bytes(top) + FactorSieve::required_bytes(n))) {
    product_sieve = sieve_for(top, o);
  }
  const auto c = coverage_deficit(n, sieve, product_sieve ? &*product_sieve : nullptr, o.exec);
  r.param("k", c.params.k);
  r.param("r", c.params.r);
  r.param("h", c.params.h);
  r.measure("size_a", c.size_a);
  r.measure("mn", c.mn);
  r.measure("size_aa", c.size_aa);
  r.measure("deficit", c.deficit);
  r.measure("coverage", c.coverage);
  if (c.d1) r.measure("d1", *c.d1);
  r.measure("d2", c.d2);
  const double pred = mn_prediction(n);
  r.compare("mn_prediction", pred);
  r.compare("d1_closed_form", static_cast<double>(top) * std::pow(c.params.log_n, -2 * theta()) *
                                  std::pow(std::log(2.0), c.params.h));
  r.compare("tilt_defined", c.params.tilt ? 1 : 0);
  return r;
}

ExperimentReport cmd_tilted(const CommandOptions& o) {
  ExperimentReport r;
  const auto x = require(o.x, "x", "tilted");
  const auto t = require(o.t, "t", "tilted");
  const auto lambda = require(o.lambda, "lambda", "tilted");
  r.param("x", x);
  r.param("t", t);
  r.param("lambda", lambda);
  const auto sieve = sieve_for(x, o);
  const double sum = tilted_sum({x, t, lambda}, sieve, o.exec.workers);
  r.measure("sum", sum);
  if (t >= 3) {
    const double scale = static_cast<double>(x) * std::pow(std::log(static_cast<double>(t)), lambda - 1.0);
    r.compare("hr_scale", scale);
    r.compare("hr_ratio", sum / scale);
  }
  return r;
}

ExperimentReport cmd_hr_ratio(const CommandOptions& o) {
  ExperimentReport r;
  const auto x = require(o.x, "x", "hr-ratio");
  const auto lambda = require(o.lambda, "lambda", "hr-ratio");
  r.param("x", x);
  r.param("lambda", lambda);
  const auto sieve = sieve_for(x, o);
  if (o.general) {
    r.param("general", 1);
    r.measure("hr_general_ratio", hr_general_ratio(x, lambda, sieve, o.exec.workers));
    r.compare("prime_reciprocal_sum", prime_reciprocal_sum(x, sieve));
  } else {
    const auto t = require(o.t, "t", "hr-ratio");
    r.param("t", t);
    r.measure("hr_ratio", hr_ratio({x, t, lambda}, sieve, o.exec.workers));
  }
  return r;
}

ExperimentReport cmd_d1(const CommandOptions& o) {
  ExperimentReport r;
  const auto n = require(o.n, "n", "d1");
  r.n = n;
  const std::uint64_t top = n * n;
  if (top > FactorSieve::kMaxLimit) throw UsageError("--n: N^2 must be below 2^32 for d1");
  const auto sieve = sieve_for(top, o);
  const auto d = d1_exact_vs_bound(n, sieve, o.exec.workers);
  r.param("k", d.params.k);
  r.param("h", d.params.h);
  r.param("threshold", d.threshold);
  r.measure("d1", d.exact);
  r.measure("majorant", d.majorant);
  r.measure("d1_le_majorant", static_cast<double>(d.exact) <= d.majorant ? 1 : 0);
  r.compare("closed_form", d.closed_form);
  r.compare("mn_prediction", d.mn_prediction);
  r.compare("majorant_over_mn", d.majorant_over_mn);
  return r;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (const char c : s) {
    if (c == ',' || c == ';') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

bool is_integer_key(const std::string& key) {
  return key == "n" || key == "seed" || key == "t" || key == "x" || key == "T" || key == "k";
}

}  // namespace

void apply_option(CommandOptions& o, const std::string& key, const std::string& value) {
  if (key == "n") {
    o.n = parse_count(key, value);
  } else if (key == "seed") {
    o.seed = parse_count(key, value);
  } else if (key == "t") {
    o.t = parse_count(key, value);
  } else if (key == "x") {
    o.x = parse_count(key, value);
  } else if (key == "T") {
    o.dyadic_t = parse_count(key, value);
  } else if (key == "k") {
    o.k = static_cast<int>(parse_count(key, value));
  } else if (key == "g") {
    o.g = parse_real(key, value);
  } else if (key == "lambda") {
    o.lambda = parse_real(key, value);
  } else if (key == "slack") {
    o.slack = parse_real(key, value);
  } else {
    throw UsageError("--grid: unknown key '" + key + "'");
  }
}

Grid parse_grid(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--grid: expected key=values, got '" + spec + "'");
  Grid grid;
  grid.key = spec.substr(0, eq);
  const std::string body = spec.substr(eq + 1);
  const auto dots = body.find("..");
  if (dots == std::string::npos) {
    grid.values = split_list(body);
    for (const auto& v : grid.values) {
      CommandOptions probe;
      apply_option(probe, grid.key, v);
    }
    return grid;
  }

  std::string range = body;
  std::string step = "+1";
  const auto step_pos = body.find("step");
  if (step_pos != std::string::npos) {
    range = body.substr(0, step_pos);
    step = body.substr(step_pos + 4);
  }
  std::erase(range, ' ');
  std::erase(step, ' ');
  const auto d = range.find("..");
  const std::string first = range.substr(0, d);
  const std::string last = range.substr(d + 2);
  if (step.empty() || (step[0] != 'x' && step[0] != '+' && step[0] != '*')) {
    throw UsageError("--grid: step must be 'xK' (geometric) or '+K' (arithmetic), got '" + step + "'");
  }
  const bool geometric = step[0] == 'x' || step[0] == '*';

  if (is_integer_key(grid.key)) {
    const auto lo = parse_count("grid", first);
    const auto hi = parse_count("grid", last);
    const auto s = parse_count("grid", step.substr(1));
    if ((geometric && (s < 2 || lo == 0)) || (!geometric && s == 0)) throw UsageError("--grid: step makes no progress");
    for (std::uint64_t v = lo; v <= hi;) {
      grid.values.push_back(std::to_string(v));
      if (geometric) {
        if (v > hi / s) break;
        v *= s;
      } else {
        if (v > hi - s) break;
        v += s;
      }
    }
  } else {
    const double lo = parse_real("grid", first);
    const double hi = parse_real("grid", last);
    const double s = parse_real("grid", step.substr(1));
    if ((geometric && (s <= 1 || lo <= 0)) || (!geometric && s <= 0)) throw UsageError("--grid: step makes no progress");
    for (int i = 0;; ++i) {
      const double v = geometric ? lo * std::pow(s, i) : lo + s * i;
      if (v > hi * (1 + 1e-12)) break;
      grid.values.push_back(format_number(v));
    }
  }
  return grid;
}

ExperimentReport run_command(const std::string& name, const CommandOptions& o) {
  ExperimentReport r;
  if (name == "theta") {
    r = cmd_theta();
  } else if (name == "params") {
    r = cmd_params(o);
  } else if (name == "mtable") {
    r = cmd_mtable(o);
  } else if (name == "prodset") {
    r = cmd_prodset(o);
  } else if (name == "build-b") {
    r = cmd_build_b(o);
  } else if (name == "build-b-pp") {
    r = cmd_build_b_pp(o);
  } else if (name == "energy") {
    r = cmd_energy(o);
  } else if (name == "thin") {
    r = cmd_thin(o);
  } else if (name == "build-a") {
    r = cmd_build_a(o);
  } else if (name == "deficit") {
    r = cmd_deficit(o);
  } else if (name == "tilted") {
    r = cmd_tilted(o);
  } else if (name == "hr-ratio") {
    r = cmd_hr_ratio(o);
  } else if (name == "d1") {
    r = cmd_d1(o);
  } else {
    throw UsageError("unknown command '" + name + "'");
  }
  r.command = name;
  return r;
}

namespace {

struct RawFlags {
  std::string n, seed, g, lambda, t, x, dyadic_t, k, slack;
};

void add_flags(CLI::App& sub, RawFlags& raw, CommandOptions& o, const std::string& which) {
  const auto has = [&](char c) { return which.find(c) != std::string::npos; };
  if (has('n')) sub.add_option("--n", raw.n, "N (integer; 2^k and 1e6 forms accepted)");
  if (has('s')) sub.add_option("--seed", raw.seed, "64-bit seed; drawn from system entropy when omitted");
  if (has('g')) sub.add_option("--g", raw.g, "growth function value g(N); default log_3 N");
  if (has('l')) sub.add_option("--lambda", raw.lambda, "tilt parameter in (0, 1.9]");
  if (has('t')) sub.add_option("--t", raw.t, "prime cutoff t for Omega(n, t)");
  if (has('x')) sub.add_option("--x", raw.x, "summation limit x");
  if (has('T')) sub.add_option("--T", raw.dyadic_t, "dyadic parameter T >= 4 for the energy comparator");
  if (has('k')) sub.add_option("--k", raw.k, "override k = floor(log_2 N / log 4)");
  if (has('c')) sub.add_option("--slack", raw.slack, "additive constant in the omega(m, t) bound (default 2)");
  if (has('S')) sub.add_option("--set", o.set_path, "set file (newline-delimited, ascending)");
  if (has('A')) sub.add_option("--a", o.a_path, "first set file");
  if (has('B')) sub.add_option("--b", o.b_path, "second set file (defaults to --a)");
  if (has('o')) sub.add_option("--out-set", o.out_set_path, "write the constructed set to this file");
  if (has('G')) sub.add_flag("--general", o.general, "use f(n) = lambda^Omega(n) with the general comparator");
  if (has('P')) sub.add_flag("--no-predictor", o.no_predictor, "skip the tau-based |AA| predictor");
}

void apply_raw(CommandOptions& o, const RawFlags& raw) {
  const std::pair<const char*, const std::string*> fields[] = {
      {"n", &raw.n}, {"seed", &raw.seed}, {"g", &raw.g},         {"lambda", &raw.lambda}, {"t", &raw.t},
      {"x", &raw.x}, {"T", &raw.dyadic_t}, {"k", &raw.k}, {"slack", &raw.slack}};
  for (const auto& [key, value] : fields) {
    if (!value->empty()) apply_option(o, key, *value);
  }
}

const char* flags_of(const std::string& name) {
  if (name == "params" || name == "mtable" || name == "build-a" || name == "deficit" || name == "d1") return "n";
  if (name == "prodset") return "AB";
  if (name == "build-b") return "nkco";
  if (name == "build-b-pp") return "nko";
  if (name == "energy") return "nkcST";
  if (name == "thin") return "nsgoP";
  if (name == "tilted") return "xtl";
  if (name == "hr-ratio") return "xtlG";
  return "";
}

const char* help_of(const std::string& name) {
  if (name == "theta") return "theta by both closed forms. measured: theta, two_theta";
  if (name == "params") return "derived parameters for N. measured: k, r, h, x, log_n, log2_n, log3_n, omega_threshold, product_threshold, tilt_defined, lambda1, lambda2";
  if (name == "mtable") return "exact M_N. measured: mn; comparator: mn_prediction, mn_over_prediction";
  if (name == "prodset") return "exact |AB| of set files. measured: size_a, size_b, size_ab, pair_count, max_tau";
  if (name == "build-b") return "squarefree set B with omega = k and bounded omega(m, t). measured: size_b";
  if (name == "build-b-pp") return "prime-position variant of B. measured: size_pp, size_b, subset";
  if (name == "energy") return "multiplicative energy of B (or --set). measured: size_b, energy, trivial_floor, distinct_products, max_tau, energy_over_size_sq";
  if (name == "thin") return "random thinning of B. measured: size_b, size_a, size_aa, ratio_pairs, ratio_size";
  if (name == "build-a") return "Omega-bounded set A. measured: size_a";
  if (name == "deficit") return "coverage of [N][N] by AA. measured: size_a, mn, size_aa, deficit, coverage, d1 (when N^2 fits), d2";
  if (name == "tilted") return "sum of lambda^Omega(n, t) over n <= x. measured: sum";
  if (name == "hr-ratio") return "tilted sum over its majorant. measured: hr_ratio or hr_general_ratio";
  if (name == "d1") return "exact D_1 against its tilted majorant. measured: d1, majorant, d1_le_majorant";
  return "";
}

ExecutionConfig env_defaults() {
  ExecutionConfig exec;
  if (const char* env = std::getenv("PRODSET_MEM_BUDGET"); env != nullptr && *env != '\0') {
    exec.budget = parse_memory_budget(env);
  }
  return exec;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-set laboratory: multiplication tables, extremal sets, energies and tilted sums"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string mem_budget;
  std::string out_path;
  unsigned workers = 0;
  bool no_timing = false;
  app.add_option("--mem-budget", mem_budget, "memory budget, e.g. 4GiB (env PRODSET_MEM_BUDGET)");
  app.add_option("--workers", workers, "worker threads (0 = machine parallelism)");
  app.add_option("--out", out_path, "write CSV to this file instead of standard output");
  app.add_flag("--no-timing", no_timing, "leave wall_time_ms empty so repeated runs are byte-identical");

  CommandOptions options;
  RawFlags raw;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, help_of(name));
    add_flags(*sub, raw, options, flags_of(name));
    subs.emplace_back(name, sub);
  }
  std::string sweep_command;
  std::string grid_spec;
  auto* sweep = app.add_subcommand("sweep", "run one command over a grid of values, one row per point");
  sweep->add_option("--command", sweep_command, "command to sweep")->required();
  sweep->add_option("--grid", grid_spec, "grid, e.g. 'n=2^4..2^9 step x2' or 'g=5,20,80'")->required();
  add_flags(*sweep, raw, options, "nsgltxTkcSABGP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    options.exec = env_defaults();
    if (!mem_budget.empty()) options.exec.budget = parse_memory_budget(mem_budget);
    options.exec.workers = workers;
    apply_raw(options, raw);
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw UsageError("--out: cannot open " + out_path);
      sink = &file;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto timed = [&](const std::string& name, const CommandOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport r = run_command(name, o);
    if (!no_timing) {
      r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
  };

  try {
    if (sweep->parsed()) {
      if (std::find(command_names().begin(), command_names().end(), sweep_command) == command_names().end()) {
        throw UsageError("--command: unknown command '" + sweep_command + "'");
      }
      const Grid grid = parse_grid(grid_spec);
      *sink << csv_header() << '\n';
      for (const auto& value : grid.values) {
        CommandOptions point = options;
        ExperimentReport r;
        try {
          apply_option(point, grid.key, value);
          r = timed(sweep_command, point);
        } catch (const std::exception& e) {
          r = ExperimentReport{};
          r.command = sweep_command;
          if (point.n) r.n = point.n;
          r.param(grid.key, value);
          r.error = e.what();
        }
        *sink << to_csv_row(r) << '\n';
      }
      sink->flush();
      return kOk;
    }

    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      const ExperimentReport r = timed(name, options);
      *sink << csv_header() << '\n' << to_csv_row(r) << '\n';
      sink->flush();
      return kOk;
    }
    throw UsageError("no command given");
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace prodset::cli
