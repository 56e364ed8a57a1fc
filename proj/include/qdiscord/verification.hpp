#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qdiscord/channels.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entanglement.hpp"
#include "qdiscord/sweep.hpp"

namespace qdiscord {

/// One line of the self-verification report.
struct Check {
  std::string label;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

inline Matrix<8> random_state_matrix(std::mt19937_64& rng, int rank = 8) {
  std::normal_distribution<double> g;
  Matrix<8> a;
  for (std::size_t i = 0; i < 8; ++i)
    for (int j = 0; j < rank; ++j) a(i, static_cast<std::size_t>(j)) = Complex(g(rng), g(rng));
  Matrix<8> rho = a * a.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

inline MeasurementBasis random_basis(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2 * std::numbers::pi);
  MeasurementBasis b;
  for (std::size_t j = 0; j < 3; ++j) {
    b.theta[j] = th(rng);
    b.phi[j] = ph(rng);
  }
  return b;
}

}  // namespace detail

/// Runs the invariant suite: closed-form/minimized agreement, reported
/// constants and asymptotes, integrator oracle, concurrence bounds and
/// random-state identities. `progress` is called after each check.
inline std::vector<Check> run_verification(const std::function<void(const Check&)>& progress = {}) {
  std::vector<Check> checks;
  auto record = [&](std::string label, double residual, double tol) {
    Check c{std::move(label), residual, tol, std::isfinite(residual) && residual <= tol};
    if (progress) progress(c);
    checks.push_back(std::move(c));
  };
  auto minimized = [](StateKind s, ChannelKind c, double kt) {
    return minimize_gqd(evolve_analytic(s, ChannelSpec(c), ScaledTime(kt))).value;
  };
  const std::vector<double> grid7{0, 0.05, 0.1, 0.25, 0.5, 1, 2};
  constexpr auto all_channels = std::array{ChannelKind::pauli_x, ChannelKind::pauli_y, ChannelKind::pauli_z,
                                           ChannelKind::depolarising};

  {
    double dev = 0.0, dev_z = 0.0;
    for (double kt : detail::linspace(0, 2, 41)) {
      const auto rho = evolve_analytic(StateKind::ghz, ChannelSpec(ChannelKind::pauli_x), ScaledTime(kt));
      dev = std::max(dev, std::abs(minimize_gqd(rho).value - 1.0));
      dev_z = std::max(dev_z, std::abs(gqd_objective(rho, MeasurementBasis::sigma_z()) - 1.0));
    }
    record("GHZ σx discord constant: max |D−1|", dev, 1e-5);
    record("GHZ σx discord constant in the σz basis: max |D_z−1|", dev_z, 1e-9);
  }

  const std::array<std::pair<StateKind, ChannelKind>, 6> closed_pairs{{
      {StateKind::ghz, ChannelKind::pauli_x},
      {StateKind::ghz, ChannelKind::pauli_y},
      {StateKind::ghz, ChannelKind::pauli_z},
      {StateKind::ghz, ChannelKind::depolarising},
      {StateKind::w, ChannelKind::pauli_z},
      {StateKind::w, ChannelKind::depolarising},
  }};
  for (const auto& [s, c] : closed_pairs) {
    const ClosedFormKind kind = *closed_form_for(s, c);
    double dz = 0.0;
    for (double kt : grid7) {
      const auto rho = evolve_analytic(s, ChannelSpec(c), ScaledTime(kt));
      dz = std::max(dz, std::abs(closed_form_discord(kind, ScaledTime(kt)) -
                                 gqd_objective(rho, MeasurementBasis::sigma_z())));
    }
    record("closed form " + std::string(to_string(kind)) + " vs σz-basis objective: max |Δ|", dz, 1e-9);
  }
  for (const auto& [s, c] : closed_pairs) {
    const ClosedFormKind kind = *closed_form_for(s, c);
    if (kind == ClosedFormKind::ghz_x) continue;
    double dm = 0.0;
    for (double kt : grid7)
      dm = std::max(dm, std::abs(closed_form_discord(kind, ScaledTime(kt)) - minimized(s, c, kt)));
    record("closed form " + std::string(to_string(kind)) + " vs minimized discord: max |Δ|", dm, 1e-5);
  }

  {
    double g = 0.0, w = 0.0;
    for (ChannelKind c : all_channels) {
      g = std::max(g, std::abs(minimized(StateKind::ghz, c, 0.0) - 1.0));
      w = std::max(w, std::abs(minimized(StateKind::w, c, 0.0) - 1.5));
    }
    record("GHZ initial discord: max |D(0)−1|", g, 1e-6);
    record("W initial discord: max |D(0)−1.5|", w, 1e-6);
  }

  {
    const double dx = minimized(StateKind::w, ChannelKind::pauli_x, 5.0);
    const double dy = minimized(StateKind::w, ChannelKind::pauli_y, 5.0);
    record("W asymptote: |D(kt=5) − 0.813|", std::abs(dx - 0.813), 1e-3);
    double coincide = std::abs(dx - dy);
    for (double kt : grid7)
      coincide = std::max(coincide, std::abs(minimized(StateKind::w, ChannelKind::pauli_x, kt) -
                                             minimized(StateKind::w, ChannelKind::pauli_y, kt)));
    record("W σx/σy discord coincidence: max |D_x − D_y|", coincide, 1e-6);
  }

  {
    const std::vector<double> times{0.1, 0.5, 1.0, 2.0};
    for (StateKind s : {StateKind::ghz, StateKind::w})
      for (ChannelKind c : all_channels) {
        const auto numeric = evolve_numeric_series(initial_density(s).matrix(), ChannelSpec(c), times);
        double dev = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
          dev = std::max(dev, max_abs_diff(numeric[i].matrix(),
                                           evolve_analytic(s, ChannelSpec(c), ScaledTime(times[i])).matrix()));
        record("RK4 vs closed-form state " + std::string(to_string(s)) + "/" + std::string(to_string(c)) +
                   ": max entry deviation",
               dev, 1e-7);
      }
  }

  {
    const double mixed_dev =
        std::max(max_abs_diff(evolve_analytic(StateKind::ghz, ChannelSpec(ChannelKind::depolarising), ScaledTime(10))
                                  .matrix(),
                              ThreeQubitState::maximally_mixed().matrix()),
                 max_abs_diff(evolve_analytic(StateKind::w, ChannelSpec(ChannelKind::depolarising), ScaledTime(10))
                                  .matrix(),
                              ThreeQubitState::maximally_mixed().matrix()));
    record("depolarising long-time limit: max |ρ(10) − I/8|", mixed_dev, 1e-6);
  }

  record("τ3 GHZ σz at κt=0.5: |τ3 − e^−3|", std::abs(tau3(Tau3Kind::ghz_z, ScaledTime(0.5)) - std::exp(-3.0)),
         1e-15);
  {
    const double kt_star = *sudden_death_time(Tau3Kind::ghz_y);
    double violation = 0.0;
    for (double kt : detail::linspace(0, 3, 301)) {
      const double t3 = tau3(Tau3Kind::ghz_y, ScaledTime(kt));
      if (kt >= kt_star && t3 != 0.0) violation = std::max(violation, t3);
      if (kt < kt_star && t3 <= 0.0) violation = std::max(violation, 1.0);
    }
    record("τ3 GHZ σy sudden death at κt*=" + format_number(kt_star) + ": sign violations", violation, 0.0);
    const double after = closed_form_discord(ClosedFormKind::ghz_y, ScaledTime(kt_star + 0.5));
    record("GHZ σy discord after sudden death: violations of D(κt*+0.5) > 0", after > 0.0 ? 0.0 : 1.0, 0.0);
  }

  {
    std::mt19937_64 rng(20240611);
    double idem = 0.0, klein = 0.0, identity = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const ThreeQubitState rho(detail::random_state_matrix(rng));
      const auto basis = detail::random_basis(rng);
      const auto once = pinch_global(rho, basis);
      idem = std::max(idem, max_abs_diff(pinch_global(once, basis).matrix(), once.matrix()));
      const double rel = relative_entropy(rho, once);
      identity = std::max(identity, std::abs(rel - (von_neumann_entropy(once) - von_neumann_entropy(rho))));
      const ThreeQubitState sigma(detail::random_state_matrix(rng));
      klein = std::max(klein, -relative_entropy(rho, sigma));
    }
    record("pinching idempotence over 1000 random states: max |Φ(Φ(ρ)) − Φ(ρ)|", idem, 1e-12);
    record("pinching identity: max |S(ρ‖Φρ) − (S(Φρ) − S(ρ))|", identity, 1e-9);
    record("Klein inequality over 1000 random pairs: max(−S(ρ‖σ))", std::max(0.0, klein), 0.0);
  }
  return checks;
}

}  // namespace qdiscord
