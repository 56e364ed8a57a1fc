#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdiscord/sweep.hpp"
#include "qdiscord/verification.hpp"

namespace qdiscord::cli {

enum ExitCode : int { success = 0, check_failure = 1, usage_error = 2 };

inline std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global quantum discord of GHZ and W states under Markovian noise"};
  app.require_subcommand(1);

  std::string state = "ghz", channel = "x", method = "closed", output;
  double from = 0.0, to = 2.0;
  int points = 21, figure = 0;
  bool with_tau3 = false, check_integrator = false;
  double step = 1e-4;

  auto* sweep = app.add_subcommand("sweep", "Tabulate discord / concurrence bound against kappa*t as CSV");
  sweep->add_option("--state", state, "Initial state: ghz | w")->check(CLI::IsMember({"ghz", "w"}));
  sweep->add_option("--channel", channel, "Noise channel: x | y | z | depol")
      ->check(CLI::IsMember({"x", "y", "z", "depol"}));
  sweep->add_option("--from", from, "First kappa*t");
  sweep->add_option("--to", to, "Last kappa*t");
  sweep->add_option("--points", points, "Number of grid points (>= 2)");
  sweep->add_option("--method", method, "closed | min | both")->check(CLI::IsMember({"closed", "min", "both"}));
  sweep->add_flag("--tau3", with_tau3, "Add the concurrence lower bound column");
  sweep->add_flag("--check-integrator", check_integrator, "Add RK4-vs-closed-form state deviation");
  sweep->add_option("--step", step, "RK4 step in kappa*t for --check-integrator");
  sweep->add_option("--figure", figure, "Emit all curves of figure 1-4 (overrides --state/--channel)")
      ->check(CLI::Range(1, 4));
  sweep->add_option("-o,--output", output, "Write CSV to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run the self-verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return success;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return success;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  if (*verify) {
    int failed = 0;
    run_verification([&](const Check& c) {
      out << (c.passed ? "[PASS] " : "[FAIL] ") << c.label << " = " << scientific(c.residual)
          << " (tol " << scientific(c.tolerance) << ")\n";
      out.flush();
      failed += c.passed ? 0 : 1;
    });
    out << (failed == 0 ? "all checks passed\n" : std::to_string(failed) + " check(s) failed\n");
    return failed == 0 ? success : check_failure;
  }

  SweepConfig config;
  SweepTable table;
  try {
    config.state = parse_state_kind(state);
    config.channel = parse_channel_kind(channel);
    config.kt_start = from;
    config.kt_end = to;
    config.points = points;
    config.method = parse_method(method);
    config.include_tau3 = with_tau3;
    config.integrator_check = check_integrator;
    config.integrator_step = step;
    if (figure != 0) {
      std::vector<std::string> skipped;
      table = run_figure(figure, config, &skipped);
      for (const auto& s : skipped) err << "note: skipped " << s << '\n';
    } else {
      table = run_sweep(config);
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  if (output.empty()) {
    write_csv(table, out);
  } else {
    std::ofstream file(output);
    if (!file) {
      err << "error: cannot open " << output << '\n';
      return usage_error;
    }
    write_csv(table, file);
  }
  return success;
}

}  // namespace qdiscord::cli
