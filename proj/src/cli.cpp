#include "fourfold/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fourfold/parser.hpp"
#include "fourfold/report_json.hpp"

namespace fourfold {

namespace {

struct Options {
  bool json = false;
  bool certificate = false;
  std::vector<std::string> exprs;
  std::string form_path;
  std::string classes_path;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  int max_iter = 4000;
  int starts = 16;
  bool no_oracle = false;
  bool check = false;
  std::string batch_path;
  int threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int exit_code_for(const std::exception& err) {
  if (dynamic_cast<const ConsistencyError*>(&err)) return kExitConsistency;
  return kExitInputError;
}

void print_error(const std::exception& err, const std::string& input, bool json, std::ostream& out,
                 std::ostream& errs) {
  if (json) {
    out << error_json(err).dump() << '\n';
    return;
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&err)) {
    errs << "error: " << pe->what() << '\n';
    if (!input.empty()) errs << "  " << input << "\n  " << std::string(std::min(pe->position(), input.size()), ' ')
                             << "^\n";
    return;
  }
  if (const auto* fe = dynamic_cast<const Error*>(&err)) {
    errs << "error (" << fe->kind() << "): " << fe->what() << '\n';
    return;
  }
  errs << "error: " << err.what() << '\n';
}

std::string alpha_text(const AlphaValue& a) {
  if (!a.has_value()) return std::string(to_string(a.status));
  return to_string(a.value) + " (" + std::string(to_string(a.status)) + ")";
}

void print_verdict(const ManifoldExpr& e, const Verdict& v, bool certificate, std::ostream& out) {
  out << "expr: " << format(e) << '\n';
  out << "conclusion: " << to_string(v.conclusion);
  if (!v.tag.empty()) out << " (" << v.tag << ")";
  out << '\n';
  out << "reason: " << v.reason << '\n';
  out << "alpha^2: " << alpha_text(v.alpha) << '\n';
  if (certificate) {
    out << "certificate:\n";
    for (const auto& line : v.certificate) out << "  " << line << '\n';
  }
}

void print_invariants(const ManifoldExpr& e, const InvariantRecord& r, std::ostream& out) {
  out << "expr: " << format(e) << '\n';
  out << "chi: " << r.chi << '\n';
  out << "tau: " << r.tau << '\n';
  out << "b+: " << r.b_plus << '\n';
  out << "b-: " << r.b_minus << '\n';
  out << "b1: " << (r.b1 ? std::to_string(*r.b1) : std::string("unknown")) << '\n';
  out << "spin: " << to_string(r.spin) << '\n';
  out << "simply_connected: " << to_string(r.simply_connected) << '\n';
  out << "psc: " << to_string(r.psc) << '\n';
  out << "scalar_flat: " << to_string(r.scalar_flat) << '\n';
  out << "2chi+3tau: " << r.two_chi_plus_three_tau() << '\n';
  out << "2chi-3tau: " << r.two_chi_minus_three_tau() << '\n';
  if (r.complex) {
    const ComplexData& c = *r.complex;
    out << "complex: c1^2=" << c.c1sq << " chi_h=" << c.chi_h << " minimal=" << (c.minimal ? "yes" : "no")
        << " ample_K=" << (c.ample_K ? "yes" : "no") << " blowups=" << c.blowup_count << " c1^2(minimal model)="
        << (c.c1sq_minimal_model ? std::to_string(*c.c1sq_minimal_model) : std::string("unknown")) << '\n';
  }
}

std::string homeo_line(const std::optional<HomeoType>& h) {
  if (!h) return "not simply connected or unsupported";
  std::string s = "(" + std::to_string(h->chi) + ", " + std::to_string(h->tau) + ", " + std::string(to_string(h->parity)) +
                  ")";
  s += h->canonical ? " " + *h->canonical : std::string(" no catalog representative");
  if (h->eleven_eighths_regime) s += " [below 11/8 line]";
  if (h->rokhlin_violation) s += " [Rokhlin violation]";
  if (h->donaldson_excluded) s += " [Donaldson excluded]";
  return s;
}

std::optional<HomeoType> try_homeo_type(const ManifoldExpr& e) {
  try {
    return freedman_class(invariants(e));
  } catch (const NotSimplyConnected&) {
    return std::nullopt;
  } catch (const UnsupportedExpression&) {
    return std::nullopt;
  }
}

int cmd_eval(const Options& o, std::ostream& out) {
  const ManifoldExpr e = parse(o.exprs.at(0));
  const Verdict v = verdict(e);
  if (o.json) {
    out << verdict_json(e, v, o.certificate).dump() << '\n';
  } else {
    print_verdict(e, v, o.certificate, out);
  }
  return kExitOk;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const ManifoldExpr e = parse(o.exprs.at(0));
  const InvariantRecord r = invariants(e);
  if (o.json) {
    out << invariants_json(e, r).dump() << '\n';
  } else {
    print_invariants(e, r, out);
  }
  return kExitOk;
}

int cmd_homeo(const Options& o, std::ostream& out) {
  const ManifoldExpr e1 = parse(o.exprs.at(0));
  const ManifoldExpr e2 = parse(o.exprs.at(1));
  const Tri result = homeomorphic(e1, e2);
  const auto h1 = try_homeo_type(e1);
  const auto h2 = try_homeo_type(e2);
  if (o.json) {
    out << homeo_json(e1, e2, result, h1, h2).dump() << '\n';
  } else {
    out << to_string(result) << '\n';
    out << "left:  " << format(e1) << " -> " << homeo_line(h1) << '\n';
    out << "right: " << format(e2) << " -> " << homeo_line(h2) << '\n';
  }
  return kExitOk;
}

int cmd_alpha(const Options& o, std::ostream& out) {
  if (!o.form_path.empty()) {
    if (o.classes_path.empty()) throw DomainError("--form requires --classes");
    const QuadraticFormSpace space = QuadraticFormSpace::from_text(read_file(o.form_path), read_file(o.classes_path));
    NumericOptions opts;
    opts.tolerance = o.tolerance;
    opts.seed = o.seed;
    opts.max_iter = o.max_iter;
    opts.starts = o.starts;
    const NumericAlphaResult r = alpha_squared_numeric(space, opts);
    std::optional<OracleResult> oracle;
    if (!o.no_oracle && space.dimension() <= kOracleMaxDimension) oracle = alpha_brute_oracle(space);
    if (o.json) {
      out << numeric_alpha_json(space, r, oracle).dump() << '\n';
      return kExitOk;
    }
    out << std::setprecision(12);
    out << "form: b+ = " << space.b_plus() << ", b- = " << space.b_minus() << ", " << space.classes().size()
        << " classes\n";
    out << "alpha^2 (numeric): " << r.value << '\n';
    out << "iterations: " << r.iterations << '\n';
    out << "converged: " << (r.converged ? "yes" : "no") << '\n';
    out << "near_boundary: " << (r.near_boundary ? "yes" : "no") << '\n';
    if (oracle) {
      out << "oracle: " << oracle->value << (oracle->attained ? "" : " (infimum not attained)") << '\n';
    }
    return kExitOk;
  }
  if (o.exprs.empty()) throw DomainError("alpha needs an expression or --form/--classes");
  const ManifoldExpr e = parse(o.exprs.at(0));
  const AlphaValue a = alpha_squared(e);
  if (o.json) {
    out << alpha_json(e, a).dump() << '\n';
    return kExitOk;
  }
  out << "expr: " << format(e) << '\n';
  out << "alpha^2: " << alpha_text(a) << '\n';
  for (const auto& line : a.trace) out << "  " << line << '\n';
  if (a.has_value()) {
    const MixedBoundConstants mixed = mixed_bound_constants(a);
    out << "int s^2 >= " << to_string(scalar_l2_lower_bound(a)) << " pi^2" << (mixed.lower_bound_only ? " (at least)" : "")
        << '\n';
    out << "(||s|| + sqrt(6)||W+||)^2 >= " << to_string(mixed.linear_sq_pi2) << " pi^2\n";
    out << "(1/4pi^2) int (s^2/24 + 2|W+|^2) >= " << to_string(mixed.quadratic) << '\n';
  }
  return kExitOk;
}

int cmd_models(const Options& o, std::ostream& out) {
  bool failed = false;
  Json all = Json::array();
  if (!o.json) {
    out << std::left << std::setw(14) << "model" << std::setw(8) << "GB+" << std::setw(8) << "GB-" << std::setw(10)
        << "kaehler" << std::setw(13) << "weitzenboeck" << "saturation\n";
  }
  for (const auto& m : builtin_models()) {
    const Json j = model_check_json(m);
    if (o.check) {
      for (const char* key : {"gauss_bonnet_plus", "gauss_bonnet_minus", "weitzenboeck"}) {
        if (!j[key].is_null() && j[key].get<std::string>() != "0") failed = true;
      }
      if (j["kaehler_spectrum"].is_boolean() && !j["kaehler_spectrum"].get<bool>()) failed = true;
      if (j["saturation"].is_boolean() && !j["saturation"].get<bool>()) failed = true;
    }
    if (o.json) {
      all.push_back(j);
      continue;
    }
    auto cell = [](const Json& v) -> std::string {
      if (v.is_null()) return "n/a";
      if (v.is_boolean()) return v.get<bool>() ? "pass" : "FAIL";
      return v.get<std::string>();
    };
    out << std::setw(14) << m.name << std::setw(8) << cell(j["gauss_bonnet_plus"]) << std::setw(8)
        << cell(j["gauss_bonnet_minus"]) << std::setw(10) << cell(j["kaehler_spectrum"]) << std::setw(13)
        << cell(j["weitzenboeck"]) << cell(j["saturation"]) << '\n';
  }
  if (o.json) {
    out << Json{{"schema_version", kSchemaVersion}, {"models", all}, {"ok", !failed}}.dump() << '\n';
  } else if (o.check) {
    out << (failed ? "model check FAILED\n" : "all model checks pass\n");
  }
  return failed ? kExitModelCheck : kExitOk;
}

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

int cmd_batch(const Options& o, std::ostream& out, std::ostream& errs) {
  std::vector<std::string> lines;
  {
    std::istringstream in(read_file(o.batch_path));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!skip_line(line)) lines.push_back(line);
    }
  }
  std::vector<std::string> outputs(lines.size());
  std::vector<std::string> errors(lines.size());
  std::vector<int> codes(lines.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) {
      std::ostringstream o_out;
      std::ostringstream o_err;
      try {
        const ManifoldExpr e = parse(lines[i]);
        const Verdict v = verdict(e);
        if (o.json) {
          o_out << verdict_json(e, v, o.certificate).dump() << '\n';
        } else {
          o_out << format(e) << ": " << to_string(v.conclusion);
          if (!v.tag.empty()) o_out << " (" << v.tag << ")";
          o_out << " - " << v.reason << '\n';
          if (o.certificate) {
            for (const auto& line : v.certificate) o_out << "  " << line << '\n';
          }
        }
      } catch (const std::exception& err) {
        codes[i] = exit_code_for(err);
        if (o.json) {
          Json j = error_json(err);
          j["input"] = lines[i];
          o_out << j.dump() << '\n';
        } else {
          o_out << lines[i] << ": error\n";
          print_error(err, lines[i], false, o_out, o_err);
        }
      }
      outputs[i] = o_out.str();
      errors[i] = o_err.str();
    }
  };
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(lines.size(), o.threads > 0 ? static_cast<std::size_t>(o.threads) : hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  int code = kExitOk;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << outputs[i];
    errs << errors[i];
    code = std::max(code, codes[i]);
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Einstein-metric obstructions and invariants for 4-manifold expressions", "fourfold"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_flag("--certificate", o.certificate, "Include the certificate lines");

  auto* eval = app.add_subcommand("eval", "Einstein-metric verdict for an expression")->fallthrough();
  eval->add_option("expr", o.exprs, "Manifold expression")->required()->expected(1);
  auto* inv = app.add_subcommand("invariants", "Print the invariant record")->fallthrough();
  inv->add_option("expr", o.exprs, "Manifold expression")->required()->expected(1);
  auto* homeo = app.add_subcommand("homeo", "Compare homeomorphism types")->fallthrough();
  homeo->add_option("exprs", o.exprs, "Two manifold expressions")->required()->expected(2);
  auto* alpha = app.add_subcommand("alpha", "alpha^2 from the catalog, or numerically from a form")->fallthrough();
  alpha->add_option("expr", o.exprs, "Manifold expression")->expected(0, 1);
  alpha->add_option("--form", o.form_path, "Gram matrix file");
  alpha->add_option("--classes", o.classes_path, "Class file, one class per line");
  alpha->add_option("--tolerance", o.tolerance, "Optimizer tolerance")->check(CLI::PositiveNumber);
  alpha->add_option("--seed", o.seed, "Multi-start seed");
  alpha->add_option("--max-iter", o.max_iter, "Iteration budget per start")->check(CLI::PositiveNumber);
  alpha->add_option("--starts", o.starts, "Number of starts")->check(CLI::PositiveNumber);
  alpha->add_flag("--no-oracle", o.no_oracle, "Skip the brute-force cross-check");
  auto* models = app.add_subcommand("models", "Curvature model catalog")->fallthrough();
  models->add_flag("--check", o.check, "Exit 3 if any identity fails");
  auto* batch = app.add_subcommand("batch", "Evaluate one expression per line")->fallthrough();
  batch->add_option("file", o.batch_path, "Input file")->required();
  batch->add_option("--threads", o.threads, "Worker threads (0 = hardware)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  const std::string input = o.exprs.empty() ? std::string() : o.exprs.front();
  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (inv->parsed()) return cmd_invariants(o, out);
    if (homeo->parsed()) return cmd_homeo(o, out);
    if (alpha->parsed()) return cmd_alpha(o, out);
    if (models->parsed()) return cmd_models(o, out);
    if (batch->parsed()) return cmd_batch(o, out, err);
  } catch (const std::exception& e) {
    print_error(e, input, o.json, out, err);
    return exit_code_for(e);
  }
  return kExitInputError;
}

}  // namespace fourfold
