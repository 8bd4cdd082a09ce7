#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gammalg/commands.hpp"

using namespace gammalg;

int main(int argc, char** argv) {
  CLI::App app{"Computations in the groupoid algebras of one-sided subshifts"};
  app.require_subcommand(1);

  std::string spec_path, algebra = "OS", op, point, out;
  std::vector<std::string> exprs;
  std::optional<std::size_t> level;
  std::size_t samples = 8;
  RunConfig cfg;
  bool json = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("specfile", spec_path, "subshift spec (JSON)")->required();
    sub->add_option("--tolerance", cfg.tolerance, "equality tolerance");
    sub->add_option("--class-cap", cfg.class_cap, "cap on 2^|follower sets| in class enumeration");
    sub->add_option("--out", out, "write the JSON report here");
    sub->add_flag("--json", json, "print the JSON report");
  };
  auto* info = app.add_subcommand("info", "automaton summary and counts");
  common(info);
  auto* check = app.add_subcommand("check-simple", "simplicity decider");
  common(check);
  check->add_option("--algebra", algebra, "OS or AF")->check(CLI::IsMember({"OS", "AF"}));
  auto* alg = app.add_subcommand("algebra", "evaluate expressions and operations");
  common(alg);
  alg->add_option("--expr", exprs, "expression text or file (repeatable)")->required();
  alg->add_option("--op", op, "mul|adjoint|P|Q|phi_hat|gauge:z|eval:xT,xP,k,yT,yP|supnorm");
  auto* fib = app.add_subcommand("fiber", "matrix of an element on a finite fiber");
  common(fib);
  fib->add_option("--point", point, "base point T,P")->required();
  fib->add_option("--level", level, "fiber level");
  fib->add_option("--expr", exprs, "expression text or file")->expected(1);
  auto* norm = app.add_subcommand("norm", "norm bounds");
  common(norm);
  norm->add_option("--expr", exprs, "expression text or file")->required()->expected(1);
  norm->add_option("--level", level, "level");
  norm->add_option("--samples", samples, "pseudorandom sample points");
  norm->add_option("--point", point, "base point T,P for the regular representation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.apply_environment();
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!out.empty()) cfg.out = out;

  const std::string command = app.get_subcommands().front()->get_name();
  auto fail = [&](std::string_view kind, const std::string& message, int code) {
    std::cerr << "error: " << message << "\n";
    const std::string text = make_error_report(command, cfg, kind, message).dump(2) + "\n";
    try {
      if (cfg.out) write_atomic(*cfg.out, text);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
    }
    if (json) std::cout << text;
    return code;
  };

  try {
    CommandResult r;
    if (info->parsed()) {
      r = run_info(spec_path, cfg);
    } else if (check->parsed()) {
      r = run_check_simple(spec_path, algebra == "AF" ? AlgebraKind::AF : AlgebraKind::OS, cfg);
    } else if (alg->parsed()) {
      r = run_algebra(spec_path, exprs, op, cfg);
    } else if (fib->parsed()) {
      r = run_fiber(spec_path, point, level.value_or(1), exprs.empty() ? "one" : exprs.front(), cfg);
    } else {
      r = run_norm(spec_path, exprs.front(), level, samples, point.empty() ? std::nullopt : std::optional<std::string>(point), cfg);
    }
    const std::string text = r.report.dump(2) + "\n";
    if (cfg.out) write_atomic(*cfg.out, text);
    std::cout << (json ? text : r.summary);
    return r.exit_code;
  } catch (const Error& e) {
    return fail(error_name(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    return fail("Internal", e.what(), 5);
  }
}
