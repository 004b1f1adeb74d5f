#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hirota/differential_form.hpp"
#include "hirota/errors.hpp"
#include "hirota/hirota.hpp"
#include "hirota/interpolation.hpp"
#include "hirota/poly_io.hpp"
#include "hirota/properties.hpp"
#include "hirota/transforms.hpp"
#include "hirota/veronese.hpp"

namespace hirota::cli {

enum class Command { kGenerate, kVerify, kFlatness, kRestrict, kProperties, kOracle };
enum class Format { kText, kJson, kLatex };

struct RunConfig {
  Command command = Command::kGenerate;
  std::size_t n = 0, k = 0, l = 0;
  /// nullopt means symbolic nodes.
  std::optional<std::vector<Rational>> lambdas;
  bool sampled = false;
  std::size_t trials = 3;
  long bound = 1'000'000;
  std::uint64_t seed = 42;
  /// Restriction x_{fix_var + 1} = fix_value.
  std::optional<std::pair<std::size_t, Rational>> fix;
  /// verify: a user-supplied f = num / den instead of the constructed solution.
  std::optional<std::string> num, den;
  Format format = Format::kText;
  std::optional<std::string> out;

  WebSpec spec() const { return WebSpec(n, k, l, lambdas); }
};

/// Invalid flags or values; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::kGenerate:
      return "generate";
    case Command::kVerify:
      return "verify";
    case Command::kFlatness:
      return "flatness";
    case Command::kRestrict:
      return "restrict";
    case Command::kProperties:
      return "properties";
    case Command::kOracle:
      return "oracle";
  }
  return "unknown";
}

/// "symbolic" or comma-separated rationals.
inline std::optional<std::vector<Rational>> parse_lambdas(const std::string& text) {
  if (text == "symbolic") return std::nullopt;
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ConfigError("empty --lambdas list");
  return out;
}

/// "x<i>=<rational>" with 1-based i.
inline std::pair<std::size_t, Rational> parse_fix(const std::string& text) {
  auto eq = text.find('=');
  if (text.size() < 4 || text[0] != 'x' || eq == std::string::npos || eq < 2)
    throw ConfigError("--fix expects x<i>=<rational>, got '" + text + "'");
  std::size_t index = 0;
  for (std::size_t i = 1; i < eq; ++i) {
    if (text[i] < '0' || text[i] > '9') throw ConfigError("--fix index must be a positive integer");
    index = index * 10 + static_cast<std::size_t>(text[i] - '0');
    if (index > kMaxVars) throw ConfigError("--fix index out of range");
  }
  if (index == 0) throw ConfigError("--fix index is 1-based");
  return {index - 1, parse_rational(text.substr(eq + 1))};
}

struct HelpRequested {
  std::string text;
};

/// Parses argv; throws ConfigError on bad input and returns HelpRequested for --help.
inline std::variant<RunConfig, HelpRequested> parse_args(int argc, const char* const* argv) {
  CLI::App app{"Rational solutions of the dispersionless Hirota system"};
  app.name("hirota");
  std::string command, lambdas, mode = "symbolic", fix, format = "text";
  long n = 0, k = 0, l = 0, trials = 0, bound = 1'000'000;
  std::uint64_t seed = 42;
  std::string num, den, out;
  app.add_option("command", command, "generate | verify | flatness | restrict | properties | oracle")->required();
  auto* n_opt = app.add_option("--n", n, "dimension");
  auto* k_opt = app.add_option("--k", k, "numerator degree");
  auto* l_opt = app.add_option("--l", l, "denominator degree");
  auto* lambdas_opt = app.add_option("--lambdas", lambdas, "'symbolic' or comma-separated rationals (default 1,...,n)");
  app.add_option("--mode", mode, "symbolic | sampled");
  auto* trials_opt = app.add_option("--trials", trials, "sampled trials (default 3) or oracle instances (default 100)");
  app.add_option("--bound", bound, "sampling bound B >= 1000");
  app.add_option("--seed", seed, "random seed");
  auto* fix_opt = app.add_option("--fix", fix, "restriction x<i>=<rational>");
  app.add_option("--format", format, "text | json | latex");
  auto* num_opt = app.add_option("--num", num, "verify: numerator of a custom f");
  auto* den_opt = app.add_option("--den", den, "verify: denominator of a custom f");
  auto* out_opt = app.add_option("--out", out, "write the report to this file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  const std::vector<std::pair<std::string, Command>> commands{
      {"generate", Command::kGenerate}, {"verify", Command::kVerify},         {"flatness", Command::kFlatness},
      {"restrict", Command::kRestrict}, {"properties", Command::kProperties}, {"oracle", Command::kOracle}};
  bool known = false;
  for (const auto& [name, c] : commands) {
    if (name == command) {
      cfg.command = c;
      known = true;
    }
  }
  if (!known) throw ConfigError("unknown command '" + command + "'");

  const bool has_n = n_opt->count() > 0, has_k = k_opt->count() > 0, has_l = l_opt->count() > 0;
  if (has_n + has_k + has_l < 2) throw ConfigError("give at least two of --n, --k, --l");
  if ((has_n && n < 0) || (has_k && k < 0) || (has_l && l < 0)) throw ConfigError("negative dimension or degree");
  if (!has_n) n = k + l + 1;
  if (!has_k) k = n - 1 - l;
  if (!has_l) l = n - 1 - k;
  if (k < 0 || l < 0 || k + l + 1 != n) throw ConfigError("order [k/l] must satisfy k + l + 1 = n");
  if (n < 2) throw ConfigError("dimension n must be at least 2");
  cfg.n = static_cast<std::size_t>(n);
  cfg.k = static_cast<std::size_t>(k);
  cfg.l = static_cast<std::size_t>(l);

  if (lambdas_opt->count() > 0) {
    cfg.lambdas = parse_lambdas(lambdas);
  } else {
    std::vector<Rational> standard;
    for (long i = 1; i <= n; ++i) standard.emplace_back(i);
    cfg.lambdas = standard;
  }

  if (mode == "sampled") {
    cfg.sampled = true;
  } else if (mode != "symbolic") {
    throw ConfigError("--mode must be symbolic or sampled");
  }
  if (trials_opt->count() > 0) {
    if (trials < 1) throw ConfigError("--trials must be at least 1");
    cfg.trials = static_cast<std::size_t>(trials);
  } else {
    cfg.trials = cfg.command == Command::kOracle ? 100 : 3;
  }
  if (bound < 1000) throw ConfigError("--bound must be at least 1000");
  cfg.bound = bound;
  cfg.seed = seed;
  if (fix_opt->count() > 0) cfg.fix = parse_fix(fix);
  if (num_opt->count() > 0) cfg.num = num;
  if (den_opt->count() > 0) cfg.den = den;
  if (cfg.num.has_value() != cfg.den.has_value()) throw ConfigError("--num and --den go together");
  if (cfg.num && cfg.command != Command::kVerify) throw ConfigError("--num/--den only apply to verify");
  if (format == "text") {
    cfg.format = Format::kText;
  } else if (format == "json") {
    cfg.format = Format::kJson;
  } else if (format == "latex") {
    cfg.format = Format::kLatex;
  } else {
    throw ConfigError("--format must be text, json or latex");
  }
  if (out_opt->count() > 0) cfg.out = out;
  if (cfg.command == Command::kRestrict && !cfg.fix) throw ConfigError("restrict needs --fix x<i>=<rational>");
  return cfg;
}

/// Unreduced quotient as reported (no sign or content normalization).
struct Fraction {
  MultiPoly num;
  MultiPoly den;
};

struct ReportObject {
  std::string name;
  std::variant<MultiPoly, Fraction, DifferentialForm> value;
  VariableNames names;
  std::size_t n_coords = 0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  Command command = Command::kGenerate;
  std::string spec_text;
  nlohmann::ordered_json spec_json;
  std::vector<CheckResult> results;
  std::vector<ReportObject> objects;

  bool passed() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string triple_name(const Triple& t) {
  return "triple (" + std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "," + std::to_string(t[2] + 1) + ")";
}

inline void add_verdict(Report& report, const HirotaVerdict& v) {
  if (v.triples.empty()) {
    report.results.push_back({"residual", true, "no triples in dimension below 3; vacuously satisfied"});
    return;
  }
  for (const auto& t : v.triples) {
    std::string detail;
    if (v.sampled) {
      detail = t.vanishes ? "numerator vanished at " + std::to_string(v.trials) + " random points"
                          : "numerator nonzero at a sampled point";
      detail += "; degree bound " + std::to_string(v.degree_bound) + ", failure bound per trial " +
                to_string(v.failure_bound);
    } else {
      detail = t.vanishes ? "residual numerator is identically zero" : "residual numerator is nonzero";
    }
    report.results.push_back({triple_name(t.triple), t.vanishes, detail});
  }
}

inline std::string highest_name(char letter, std::size_t index) { return std::string(1, letter) + "_" + std::to_string(index); }

inline nlohmann::json object_json(const ReportObject& o) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiPoly>) {
          return to_json(v);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          return {{"num", to_json(v.num)}, {"den", to_json(v.den)}};
        } else {
          return to_json(v);
        }
      },
      o.value);
}

inline std::string object_text(const ReportObject& o) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiPoly>) {
          return to_string(v, o.names);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          return "(" + to_string(v.num, o.names) + ")/(" + to_string(v.den, o.names) + ")";
        } else {
          return to_string(v, o.names);
        }
      },
      o.value);
}

inline std::string latex_name(const std::string& name) {
  auto pos = name.find('_');
  if (pos == std::string::npos) return name;
  return name.substr(0, pos) + "_{" + name.substr(pos + 1) + "}";
}

inline std::string latex_fraction(const MultiPoly& num, const MultiPoly& den, std::size_t n_coords) {
  if (den.is_constant() && den.constant_value() == 1) return to_latex(num, n_coords);
  return "\\frac{" + to_latex(num, n_coords) + "}{" + to_latex(den, n_coords) + "}";
}

inline std::string object_latex(const ReportObject& o) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiPoly>) {
          return to_latex(v, o.n_coords);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          return latex_fraction(v.num, v.den, o.n_coords);
        } else {
          if (form_is_zero(v)) return "0";
          std::string out;
          bool first = true;
          for (const auto& [idx, c] : v.components()) {
            if (!first) out += " + ";
            first = false;
            out += "\\left(" + latex_fraction(c.num(), c.den(), o.n_coords) + "\\right)";
            for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? " \\wedge " : " ") + std::string("dx_{") + std::to_string(idx[i] + 1) + "}";
          }
          return out;
        }
      },
      o.value);
}

inline ReportObject make_object(std::string name, std::variant<MultiPoly, Fraction, DifferentialForm> value,
                                VariableNames names, std::size_t n_coords) {
  return {std::move(name), std::move(value), std::move(names), n_coords};
}

inline std::vector<MultiPoly> constant_nodes(std::span<const Rational> nodes, std::size_t ring) {
  std::vector<MultiPoly> out;
  for (const auto& v : nodes) out.push_back(MultiPoly::constant(ring, v));
  return out;
}

inline std::string sums_detail(const PropertyReport& p, const VariableNames& names) {
  return "numerator sum " + to_string(p.num_sum, names) + ", denominator sum " + to_string(p.den_sum, names);
}

}  // namespace detail

inline Report run(const RunConfig& cfg) {
  WebSpec spec = cfg.spec();
  Report report;
  report.command = cfg.command;
  report.spec_text = spec.describe();
  nlohmann::ordered_json lambdas_json = "symbolic";
  if (!spec.symbolic_nodes()) {
    lambdas_json = nlohmann::ordered_json::array();
    for (const auto& v : spec.numeric_nodes()) lambdas_json.push_back(to_string(v));
  }
  report.spec_json = {{"n", spec.n()}, {"k", spec.k()}, {"l", spec.l()}, {"lambdas", lambdas_json}};
  const VariableNames names = spec.names();
  const std::size_t n = spec.n();
  const std::string pk_name = detail::highest_name('P', spec.k()), ql_name = detail::highest_name('Q', spec.l());

  switch (cfg.command) {
    case Command::kGenerate: {
      HirotaSolution sol = build_solution(spec);
      report.objects.push_back(detail::make_object(pk_name, sol.pk, names, n));
      report.objects.push_back(detail::make_object(ql_name, sol.ql, names, n));
      report.objects.push_back(detail::make_object("f", Fraction{sol.pk, sol.ql}, names, n));
      break;
    }
    case Command::kVerify: {
      RationalFunction f = RationalFunction::constant(spec.ring_vars(), 0);
      Fraction shown{MultiPoly(spec.ring_vars()), MultiPoly(spec.ring_vars())};
      if (cfg.num) {
        MultiPoly num = parse_poly(*cfg.num, spec.ring_vars(), names);
        MultiPoly den = parse_poly(*cfg.den, spec.ring_vars(), names);
        if (den.is_zero()) throw ConfigError("--den is the zero polynomial");
        f = RationalFunction(num, den);
        shown = {num, den};
      } else {
        HirotaSolution sol = build_solution(spec);
        f = sol.f;
        shown = {sol.pk, sol.ql};
      }
      std::optional<SampledStrategy> sampled;
      if (cfg.sampled) sampled = SampledStrategy{cfg.trials, cfg.bound, cfg.seed};
      auto nodes = spec.node_polys();
      detail::add_verdict(report, verify_hirota(f, nodes, sampled));
      report.objects.push_back(detail::make_object("f", shown, names, n));
      break;
    }
    case Command::kFlatness: {
      FlatnessVerdict v = flatness_check(spec);
      const bool expect_flat = spec.k() == 0 || spec.l() == 0;
      std::string status = to_string(v.status);
      bool pass = v.status == (expect_flat ? FlatnessStatus::kFlatCertified : FlatnessStatus::kNonflatCertified);
      report.results.push_back({"flatness", pass,
                                status + "; alpha_1 integrable: " + detail::yes_no(v.alpha1_integrable) + ", alpha_" +
                                    std::to_string(v.cross_check_index) +
                                    " integrable: " + detail::yes_no(v.alpha_n2_integrable) +
                                    (expect_flat ? "; expected flat (k = 0 or l = 0)" : "; expected nonflat (k, l >= 1)")});
      if (v.witness_identity) {
        report.results.push_back({"witness identity", *v.witness_identity,
                                  *v.witness_identity ? "d alpha_1 ^ alpha_1 = 2 dq_1 ^ dp_0 ^ dp_1 (normalized q_0 = 1)"
                                                      : "d alpha_1 ^ alpha_1 differs from 2 dq_1 ^ dp_0 ^ dp_1"});
      }
      report.objects.push_back(detail::make_object("d alpha_1 ^ alpha_1", v.witness, names, n));
      if (v.cross_check_index != v.witness_index)
        report.objects.push_back(detail::make_object(
            "d alpha_" + std::to_string(v.cross_check_index) + " ^ alpha_" + std::to_string(v.cross_check_index),
            v.cross_check, names, n));
      break;
    }
    case Command::kRestrict: {
      if (spec.symbolic_nodes()) throw ConfigError("restrict needs numeric --lambdas");
      auto [var, value] = *cfg.fix;
      if (var >= n) throw ConfigError("--fix index exceeds n");
      HirotaSolution sol = build_solution(spec);
      RationalFunction restricted = restrict(sol, var, value);
      // Reported as the unreduced pair P_k, Q_l on the leaf.
      std::map<std::size_t, Rational> assignment{{var, value}};
      std::vector<std::optional<std::size_t>> mapping(n);
      for (std::size_t v = 0; v < n; ++v)
        if (v != var) mapping[v] = v < var ? v : v - 1;
      MultiPoly num = reindex(substitute(sol.pk, assignment), n - 1, mapping);
      MultiPoly den = reindex(substitute(sol.ql, assignment), n - 1, mapping);
      std::vector<Rational> nodes = restricted_nodes(spec, var);
      auto node_polys = detail::constant_nodes(nodes, n - 1);
      HirotaVerdict v = verify_hirota(restricted, node_polys);
      detail::add_verdict(report, v);
      VariableNames sub_names = coordinate_names(n - 1);
      PropertyReport p = check_properties(num, den, n - 1);
      report.results.push_back({"restricted properties (informational)", true,
                                "homogeneous: " + detail::yes_no(p.homogeneous) +
                                    ", degree gap one: " + detail::yes_no(p.degree_gap_one) +
                                    ", coefficient sums zero: " + detail::yes_no(p.sums_zero()) + " (" +
                                    detail::sums_detail(p, sub_names) + ")"});
      report.objects.push_back(detail::make_object("f", Fraction{num, den}, sub_names, n - 1));
      break;
    }
    case Command::kProperties: {
      HirotaSolution sol = build_solution(spec);
      PropertyReport p = check_properties(sol);
      SumExpectation expected = expected_sums(spec);
      std::string homog = "deg " + pk_name + " = " +
                          (p.num_homogeneity ? std::to_string(p.num_homogeneity->degree) : std::string("-")) + ", deg " +
                          ql_name + " = " +
                          (p.den_homogeneity ? std::to_string(p.den_homogeneity->degree) : std::string("-"));
      report.results.push_back({"property 1 (homogeneous in x)", p.homogeneous, homog});
      report.results.push_back({"property 2 (degree gap one)", p.degree_gap_one, homog});
      bool sums_ok = p.num_sum_zero == expected.num_zero && p.den_sum_zero == expected.den_zero;
      std::string note;
      if (!expected.num_zero) note += "; " + pk_name + " has no constant column (k = 0), its sum is nonzero";
      if (!expected.den_zero) note += "; " + ql_name + " has no -x column (l = 0), its sum is nonzero";
      report.results.push_back({"property 3 (coefficient sums zero)", sums_ok, detail::sums_detail(p, names) + note});
      report.objects.push_back(detail::make_object(pk_name, sol.pk, names, n));
      report.objects.push_back(detail::make_object(ql_name, sol.ql, names, n));
      break;
    }
    case Command::kOracle: {
      bool interp = interpolation_check(spec);
      report.results.push_back({"interpolation identities", interp,
                                interp ? "P(l_i) = x_i Q(l_i) at every node" : "P(l_i) != x_i Q(l_i) at some node"});
      OracleComparison cmp = compare_with_oracle(spec.k(), spec.l(), cfg.trials, cfg.seed);
      std::string detail = std::to_string(cmp.instances) + " random instances, " + std::to_string(cmp.mismatches) +
                           " mismatches";
      if (cmp.first_mismatch) {
        detail += "; first mismatch nodes";
        for (const auto& v : cmp.first_mismatch->nodes) detail += " " + to_string(v);
        detail += ", values";
        for (const auto& v : cmp.first_mismatch->values) detail += " " + to_string(v);
      }
      report.results.push_back({"determinant vs elimination", cmp.mismatches == 0, detail});
      CauchyInterpolant interpolant = cauchy_interpolant(spec);
      for (std::size_t j = 0; j < interpolant.p.size(); ++j)
        report.objects.push_back(detail::make_object(detail::highest_name('P', j), interpolant.p[j], names, n));
      for (std::size_t i = 0; i < interpolant.q.size(); ++i)
        report.objects.push_back(detail::make_object(detail::highest_name('Q', i), interpolant.q[i], names, n));
      break;
    }
  }
  return report;
}

inline std::string render(const Report& report, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::kJson: {
      nlohmann::ordered_json j;
      j["command"] = command_name(report.command);
      j["spec"] = report.spec_json;
      j["results"] = nlohmann::ordered_json::array();
      for (const auto& r : report.results)
        j["results"].push_back({{"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"detail", r.detail}});
      j["objects"] = nlohmann::ordered_json::object();
      for (const auto& o : report.objects) j["objects"][o.name] = detail::object_json(o);
      out << j.dump(2) << "\n";
      break;
    }
    case Format::kText: {
      out << "command: " << command_name(report.command) << "\n";
      out << "spec: " << report.spec_text << "\n";
      for (const auto& r : report.results)
        out << "[" << (r.pass ? "pass" : "fail") << "] " << r.name << ": " << r.detail << "\n";
      for (const auto& o : report.objects) out << o.name << " = " << detail::object_text(o) << "\n";
      out << "status: " << (report.passed() ? "pass" : "fail") << "\n";
      break;
    }
    case Format::kLatex: {
      out << "% command: " << command_name(report.command) << "\n";
      out << "% spec: " << report.spec_text << "\n";
      for (const auto& r : report.results)
        out << "% [" << (r.pass ? "pass" : "fail") << "] " << r.name << ": " << r.detail << "\n";
      for (const auto& o : report.objects) {
        std::string name = o.name == "f" ? "f(x)" : detail::latex_name(o.name);
        if (std::holds_alternative<DifferentialForm>(o.value)) name = "\\text{" + o.name + "}";
        out << "$$" << name << " = " << detail::object_latex(o) << "$$\n";
      }
      break;
    }
  }
  return out.str();
}

/// Full command-line behaviour: 0 all checks passed, 1 a check failed, 2 bad input.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    auto parsed = parse_args(argc, argv);
    if (auto* help = std::get_if<HelpRequested>(&parsed)) {
      out << help->text;
      return 0;
    }
    cfg = std::get<RunConfig>(parsed);
    Report report = run(cfg);
    std::string text = render(report, cfg.format);
    if (cfg.out) {
      std::ofstream file(*cfg.out);
      if (!file) {
        err << "error: cannot open " << *cfg.out << " for writing\n";
        return 2;
      }
      file << text;
    } else {
      out << text;
    }
    return report.passed() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hirota::cli
