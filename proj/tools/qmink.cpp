#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmink/suites.hpp"

namespace {

using namespace qmink;

struct Common {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> s;
  double tol = 1e-12;
  std::string convention = "plain";
  std::optional<std::string> algebra;
  bool timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", c.seed, "Seed for sampled checks");
  cmd->add_option("--samples", c.samples, "Sample count");
  cmd->add_option("--p", c.p, "Parameter p of the operator model");
  cmd->add_option("--q", c.q, "Parameter q of the operator model");
  cmd->add_option("--s", c.s, "Deformation parameter s");
  cmd->add_option("--tol", c.tol, "Numeric tolerance");
  cmd->add_option("--pq-convention", c.convention,
                  "plain: the pair is (p^2,q^2)-commuting; squared: p, q are "
                  "the labels p^2, q^2")
      ->check(CLI::IsMember({"plain", "squared"}));
  cmd->add_option("--algebra", c.algebra, "Restrict to one algebra");
  cmd->add_flag("--timing", c.timing, "Report wall time per suite");
}

suites::Options to_options(const Common& c) {
  if (c.p.has_value() != c.q.has_value()) {
    throw CLI::ValidationError("--p/--q", "both --p and --q are required");
  }
  for (auto v : {c.p, c.q}) {
    if (v && !(*v > 0 && std::isfinite(*v))) {
      throw CLI::ValidationError("--p/--q", "p and q must be positive");
    }
  }
  if (c.s && !std::isfinite(*c.s)) {
    throw CLI::ValidationError("--s", "s must be finite");
  }
  if (!(c.tol > 0)) {
    throw CLI::ValidationError("--tol", "tolerance must be positive");
  }
  if (c.samples && *c.samples == 0) {
    throw CLI::ValidationError("--samples", "at least one sample is required");
  }
  suites::Options o;
  o.seed = c.seed;
  o.samples = c.samples;
  if (c.p) {
    o.p = *c.p;
    o.q = *c.q;
  }
  o.s = c.s;
  o.tol = c.tol;
  o.convention = c.convention == "squared" ? PQConvention::squared
                                           : PQConvention::plain;
  o.algebra = c.algebra;
  o.timing = c.timing;
  return o;
}

int emit(const std::string& command, const std::vector<SuiteReport>& reports,
         const Common& c) {
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.pass();
  }
  if (c.format == "json") {
    std::cout << bundle_json(command, reports).dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << render_text(r);
    }
    if (reports.size() > 1) {
      std::cout << "overall: " << (ok ? "pass" : "fail") << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_normalize(const std::string& file, const std::string& expr,
                  const std::string& strategy, const Common& c) {
  suites::Workspace ws = suites::file_workspace(file);
  std::string name;
  if (c.algebra) {
    name = *c.algebra;
  } else if (!ws.algebras.empty()) {
    name = ws.algebras.front();
  } else {
    throw Error("'" + file + "' declares no algebra; use --algebra");
  }
  const Presentation& pres = ws.lib.algebra(name);
  NCPolynomial p;
  try {
    p = parse_expression(expr, pres);
  } catch (const ParseError& e) {
    std::cerr << "qmink: expression:" << e.what() << "\n";
    return 2;
  }
  NormalizeOptions no;
  if (strategy == "rightmost") {
    no.choice = RedexChoice::rightmost;
  } else if (strategy == "random") {
    no.choice = RedexChoice::random;
  }
  no.seed = c.seed;
  const std::string nf = pres.to_string(normalize(p, pres, no));
  if (c.format == "json") {
    SuiteReport r;
    r.suite = "normalize";
    r.inputs["source"] = ws.source;
    r.inputs["algebra"] = name;
    r.inputs["expression"] = expr;
    r.inputs["strategy"] = strategy;
    r.inputs["seed"] = c.seed;
    CheckItem item;
    item.name = "normal form";
    item.pass = true;
    item.rendered = nf;
    r.checks.push_back(item);
    std::cout << bundle_json("normalize", {r}).dump(2) << "\n";
  } else {
    std::cout << nf << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmink: checks for the quantum Lorentz group, its coaction on "
               "quantum Minkowski space and the operator model"};
  app.require_subcommand(1);

  Common norm_opts;
  std::string norm_file;
  std::string norm_expr;
  std::string strategy = "leftmost";
  auto* norm = app.add_subcommand("normalize", "Normal form of an expression");
  norm->add_option("file", norm_file, ".qalg file or builtin name")
      ->required();
  norm->add_option("expression", norm_expr, "Polynomial expression")
      ->required();
  norm->add_option("--strategy", strategy, "Redex choice")
      ->check(CLI::IsMember({"leftmost", "rightmost", "random"}));
  add_common(norm, norm_opts);

  Common check_opts;
  std::string which;
  std::optional<std::string> check_file;
  auto* check = app.add_subcommand("check", "Run one check suite");
  check->add_option("which", which, "Suite")
      ->required()
      ->check(CLI::IsMember(suites::suite_names()));
  check->add_option("file", check_file, ".qalg file (default: builtins)");
  add_common(check, check_opts);

  Common all_opts;
  auto* all = app.add_subcommand("report-all", "Run every suite");
  add_common(all, all_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*norm) {
      return cmd_normalize(norm_file, norm_expr, strategy, norm_opts);
    }
    if (*check) {
      suites::Options o = to_options(check_opts);
      suites::Workspace ws = check_file ? suites::file_workspace(*check_file)
                                        : suites::builtin_workspace();
      return emit("check " + which, {suites::run_suite(which, o, ws)},
                  check_opts);
    }
    suites::Options o = to_options(all_opts);
    suites::Workspace ws = suites::builtin_workspace();
    return emit("report-all", suites::run_all(o, ws), all_opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "qmink: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "qmink: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qmink: " << e.what() << "\n";
    return 1;
  }
}
