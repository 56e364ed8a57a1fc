#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdiscord/channels.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entanglement.hpp"
#include "qdiscord/errors.hpp"
#include "qdiscord/parallel.hpp"

namespace qdiscord {

inline constexpr std::string_view version = "qdiscord 1.0.0";

enum class Method { closed_form, minimized, both };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed";
    case Method::minimized: return "min";
    case Method::both: return "both";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "closed") return Method::closed_form;
  if (s == "min") return Method::minimized;
  if (s == "both") return Method::both;
  throw ArgumentError("unknown method '" + std::string(s) + "' (expected closed, min or both)");
}

struct SweepConfig {
  StateKind state = StateKind::ghz;
  ChannelKind channel = ChannelKind::pauli_x;
  double kt_start = 0.0;
  double kt_end = 2.0;
  int points = 21;
  Method method = Method::closed_form;
  bool include_discord = true;
  bool include_tau3 = false;
  /// Adds the max-entry deviation of the RK4 state from the closed-form state.
  bool integrator_check = false;
  double integrator_step = 1e-4;
  MinimizerOptions minimizer{};

  void validate() const {
    if (!std::isfinite(kt_start) || !std::isfinite(kt_end) || kt_start < 0.0)
      throw ArgumentError("sweep range must be finite and start at kappa*t >= 0");
    if (!(kt_start < kt_end)) throw ArgumentError("sweep range needs --from < --to");
    if (points < 2 || points > 1'000'000) throw ArgumentError("sweep needs between 2 and 1e6 points");
    if (include_discord && method != Method::minimized && !closed_form_for(state, channel))
      throw UnsupportedError("no closed-form discord for the W state under the " +
                             std::string(to_string(channel)) +
                             " channel; use --method min for the numerically minimized value");
    if (include_tau3 && !tau3_for(state, channel))
      throw UnsupportedError("no closed-form concurrence bound for " + std::string(to_string(state)) +
                             " under the " + std::string(to_string(channel)) +
                             " channel; drop --tau3 (discord columns are still available)");
  }
};

struct SweepRow {
  double kt = 0.0;
  std::string quantity;
  double value = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepTable&, const SweepTable&) = default;

  /// Rows in (kt, quantity) order.
  void sort_rows() {
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
      return a.kt != b.kt ? a.kt < b.kt : a.quantity < b.quantity;
    });
  }
};

/// 12 significant digits, the precision written to CSV.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Rounds to the value that format_number prints, so a table survives a
/// CSV round trip unchanged.
inline double round_to_printed(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

inline std::vector<double> sweep_grid(const SweepConfig& c) {
  std::vector<double> kts(static_cast<std::size_t>(c.points));
  const double span = c.kt_end - c.kt_start;
  for (int i = 0; i < c.points; ++i) kts[static_cast<std::size_t>(i)] = c.kt_start + span * i / (c.points - 1);
  kts.back() = c.kt_end;
  return kts;
}

/// Evaluates every requested quantity on the kappa*t grid. Minimizations
/// run concurrently, one grid point per task; rows are assembled in kt order.
inline SweepTable run_sweep(const SweepConfig& c, std::string_view label_prefix = {}) {
  c.validate();
  const auto kts = sweep_grid(c);
  const std::size_t n = kts.size();
  const ChannelSpec channel(c.channel);

  SweepTable table;
  table.metadata = {{"state", std::string(to_string(c.state))},
                    {"channel", std::string(to_string(c.channel))},
                    {"method", std::string(to_string(c.method))},
                    {"version", std::string(version)}};

  const std::string pre(label_prefix);
  auto add = [&](double kt, const std::string& q, double v) {
    if (!std::isfinite(v)) throw Error("non-finite value for " + q);
    table.rows.push_back({round_to_printed(kt), pre + q, round_to_printed(v)});
  };

  std::vector<double> closed(n), minimized(n);
  const auto cf_kind = closed_form_for(c.state, c.channel);
  const bool want_closed = c.include_discord && c.method != Method::minimized;
  const bool want_min = c.include_discord && c.method != Method::closed_form;

  if (want_closed)
    for (std::size_t i = 0; i < n; ++i) closed[i] = closed_form_discord(*cf_kind, ScaledTime(kts[i]));
  if (want_min)
    parallel_for(n, [&](std::size_t i) {
      minimized[i] = minimize_gqd(evolve_analytic(c.state, channel, ScaledTime(kts[i])), c.minimizer).value;
    });

  std::vector<double> integrator_dev;
  if (c.integrator_check) {
    const auto numeric =
        evolve_numeric_series(initial_density(c.state).matrix(), channel, kts, {c.integrator_step});
    for (std::size_t i = 0; i < n; ++i)
      integrator_dev.push_back(max_abs_diff(numeric[i].matrix(),
                                            evolve_analytic(c.state, channel, ScaledTime(kts[i])).matrix()));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double kt = kts[i];
    if (want_closed) add(kt, "discord_closed", closed[i]);
    if (want_min) add(kt, "discord_min", minimized[i]);
    if (want_closed && want_min) add(kt, "discord_abs_diff", std::abs(closed[i] - minimized[i]));
    if (c.include_tau3) add(kt, "tau3", tau3(*tau3_for(c.state, c.channel), ScaledTime(kt)));
    if (c.integrator_check) add(kt, "integrator_max_dev", integrator_dev[i]);
  }
  table.sort_rows();
  return table;
}

/// A figure preset: one sweep per curve, plus notes about curves that have
/// no closed form and were skipped.
struct FigurePreset {
  std::vector<std::pair<std::string, SweepConfig>> curves;  // label prefix, config
  std::vector<std::string> skipped;
};

/// Figures 1 and 3: discord of GHZ and W under all four channels.
/// Figures 2 and 4: concurrence bounds of GHZ and W. `base` supplies the
/// range, point count and method.
inline FigurePreset figure_preset(int figure, const SweepConfig& base) {
  if (figure < 1 || figure > 4) throw ArgumentError("figure must be 1, 2, 3 or 4");
  const StateKind state = (figure <= 2) ? StateKind::ghz : StateKind::w;
  const bool discord = figure % 2 == 1;
  FigurePreset preset;
  for (ChannelKind ch : {ChannelKind::pauli_x, ChannelKind::pauli_y, ChannelKind::pauli_z,
                         ChannelKind::depolarising}) {
    SweepConfig c = base;
    c.state = state;
    c.channel = ch;
    c.include_discord = discord;
    c.include_tau3 = !discord;
    const std::string name = std::string(to_string(state)) + "/" + std::string(to_string(ch));
    if (discord) {
      if (!closed_form_for(state, ch)) {
        if (c.method == Method::closed_form) {
          preset.skipped.push_back(name + " discord: no closed form (use --method min)");
          continue;
        }
        c.method = Method::minimized;
      }
    } else {
      c.integrator_check = false;
      if (!tau3_for(state, ch)) {
        preset.skipped.push_back(name + " tau3: no closed-form concurrence bound");
        continue;
      }
    }
    preset.curves.emplace_back(std::string(to_string(ch)) + ".", c);
  }
  return preset;
}

inline SweepTable run_figure(int figure, const SweepConfig& base, std::vector<std::string>* skipped = nullptr) {
  const FigurePreset preset = figure_preset(figure, base);
  SweepTable table;
  table.metadata = {{"figure", std::to_string(figure)},
                    {"state", figure <= 2 ? "ghz" : "w"},
                    {"method", std::string(to_string(base.method))},
                    {"version", std::string(version)}};
  for (const auto& [prefix, config] : preset.curves) {
    SweepTable part = run_sweep(config, prefix);
    table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
  }
  table.sort_rows();
  if (skipped) *skipped = preset.skipped;
  return table;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_csv(const SweepTable& t, std::ostream& os) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
  os << "kt,quantity,value\n";
  for (const auto& r : t.rows) os << format_number(r.kt) << ',' << r.quantity << ',' << format_number(r.value) << '\n';
}

inline std::string to_csv(const SweepTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

inline SweepTable parse_csv(std::istream& is) {
  SweepTable t;
  std::string line;
  bool header = false;
  int lineno = 0;
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      throw ArgumentError("csv line " + std::to_string(lineno) + ": bad number '" + s + "'");
    return v;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header && line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw ArgumentError("csv line " + std::to_string(lineno) + ": bad metadata");
      t.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!header) {
      if (line != "kt,quantity,value") throw ArgumentError("csv: missing 'kt,quantity,value' header");
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ArgumentError("csv line " + std::to_string(lineno) + ": expected three fields");
    t.rows.push_back({number(line.substr(0, c1)), line.substr(c1 + 1, c2 - c1 - 1), number(line.substr(c2 + 1))});
  }
  if (!header) throw ArgumentError("csv: missing 'kt,quantity,value' header");
  return t;
}

inline SweepTable parse_csv(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

}  // namespace qdiscord
