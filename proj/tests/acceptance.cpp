// Acceptance criteria. Each criterion prints exactly one [PASS]/[FAIL] line;
// indented lines below it are informational.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only (1..7)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qdiscord/channels.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entanglement.hpp"
#include "qdiscord/parallel.hpp"

using namespace qdiscord;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string summary;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<double> agreement_grid{0, 0.05, 0.1, 0.25, 0.5, 1, 2};
constexpr std::array all_channels{ChannelKind::pauli_x, ChannelKind::pauli_y, ChannelKind::pauli_z,
                                  ChannelKind::depolarising};

ThreeQubitState evolved(StateKind s, ChannelKind c, double kt) {
  return evolve_analytic(s, ChannelSpec(c), ScaledTime(kt));
}

std::vector<double> ghz_x_grid() {
  std::vector<double> kts(41);
  for (int i = 0; i < 41; ++i) kts[static_cast<std::size_t>(i)] = 2.0 * i / 40;
  return kts;
}

Outcome criterion1() {
  const auto start = Clock::now();
  double worst = 0.0, worst_kt = 0.0;
  for (double kt : ghz_x_grid()) {
    const double d = std::abs(minimize_gqd(evolved(StateKind::ghz, ChannelKind::pauli_x, kt)).value - 1.0);
    if (d > worst) {
      worst = d;
      worst_kt = kt;
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-5 && elapsed <= 60.0;
  return {ok, "GHZ/sigma_x invariance: max |D-1| over 41 points = " + sci(worst) + " at kt=" +
                  std::to_string(worst_kt) + " (tol 1e-05), runtime " + sci(elapsed) + " s (limit 60 s)"};
}

Outcome criterion2() {
  const std::array<std::pair<StateKind, ChannelKind>, 5> pairs{{{StateKind::ghz, ChannelKind::pauli_y},
                                                                {StateKind::ghz, ChannelKind::pauli_z},
                                                                {StateKind::ghz, ChannelKind::depolarising},
                                                                {StateKind::w, ChannelKind::pauli_z},
                                                                {StateKind::w, ChannelKind::depolarising}}};
  int passed = 0, total = 0;
  double worst = 0.0;
  for (const auto& [s, c] : pairs) {
    const ClosedFormKind kind = *closed_form_for(s, c);
    double kind_worst = 0.0, raw_worst = 0.0;
    int kind_passed = 0;
    for (double kt : agreement_grid) {
      const double m = minimize_gqd(evolved(s, c, kt)).value;
      const double d = std::abs(m - closed_form_discord(kind, ScaledTime(kt)));
      const double raw = std::abs(m - closed_form_discord(kind, ScaledTime(kt), ClosedFormVariant::uncorrected));
      kind_worst = std::max(kind_worst, d);
      raw_worst = std::max(raw_worst, raw);
      ++total;
      if (d <= 1e-5) {
        ++passed;
        ++kind_passed;
      }
    }
    worst = std::max(worst, kind_worst);
    std::printf("    %-9s %d/7 within tol, max |min - closed| = %s, uncorrected form max = %s\n",
                std::string(to_string(kind)).c_str(), kind_passed, sci(kind_worst).c_str(), sci(raw_worst).c_str());
  }
  return {passed == total, "closed-form agreement: " + std::to_string(passed) + "/" + std::to_string(total) +
                               " comparisons within 1e-05, max residual " + sci(worst)};
}

Outcome criterion3() {
  double worst_ghz = 0.0, worst_w = 0.0;
  for (ChannelKind c : all_channels) {
    worst_ghz = std::max(worst_ghz, std::abs(minimize_gqd(evolved(StateKind::ghz, c, 0.0)).value - 1.0));
    worst_w = std::max(worst_w, std::abs(minimize_gqd(evolved(StateKind::w, c, 0.0)).value - 1.5));
  }
  return {worst_ghz <= 1e-6 && worst_w <= 1e-6, "initial values: max |D(0)-1| (GHZ) = " + sci(worst_ghz) +
                                                    ", max |D(0)-1.5| (W) = " + sci(worst_w) + " (tol 1e-06)"};
}

Outcome criterion4() {
  const auto rx = minimize_gqd(evolved(StateKind::w, ChannelKind::pauli_x, 5.0));
  const auto ry = minimize_gqd(evolved(StateKind::w, ChannelKind::pauli_y, 5.0));
  const double asym = std::max(std::abs(rx.value - 0.813), std::abs(ry.value - 0.813));
  const double agree = std::abs(rx.value - ry.value);
  std::printf("    D_x(5) = %.12g, D_y(5) = %.12g, sigma_z-basis value = %.12g\n", rx.value, ry.value,
              gqd_objective(evolved(StateKind::w, ChannelKind::pauli_x, 5.0), MeasurementBasis::sigma_z()));
  return {asym <= 1e-3 && agree <= 1e-6, "W asymptote: max |D(kt=5) - 0.813| = " + sci(asym) +
                                             " (tol 1e-03), |D_x - D_y| = " + sci(agree) + " (tol 1e-06)"};
}

Outcome criterion5() {
  const auto start = Clock::now();
  const std::vector<double> times{0.1, 0.5, 1.0, 2.0};
  std::array<double, 8> dev{};
  parallel_for(8, [&](std::size_t i) {
    const StateKind s = i < 4 ? StateKind::ghz : StateKind::w;
    const ChannelKind c = all_channels[i % 4];
    const auto numeric = evolve_numeric_series(initial_density(s).matrix(), ChannelSpec(c), times, {1e-4});
    for (std::size_t k = 0; k < times.size(); ++k)
      dev[i] = std::max(dev[i], max_abs_diff(numeric[k].matrix(), evolved(s, c, times[k]).matrix()));
  });
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  for (double d : dev) worst = std::max(worst, d);
  return {worst <= 1e-7 && elapsed <= 120.0, "dynamics oracle: max |rk4 - analytic| over 8 pairs x 4 times = " +
                                                 sci(worst) + " (tol 1e-07), runtime " + sci(elapsed) +
                                                 " s (limit 120 s)"};
}

Outcome criterion6() {
  const double exact = std::exp(-3.0);
  const double tz = std::abs(tau3(Tau3Kind::ghz_z, ScaledTime(0.5)) - exact);
  const bool tz_ok = tz <= std::numeric_limits<double>::epsilon() * exact;
  const double kt_star = *sudden_death_time(Tau3Kind::ghz_y);
  int violations = 0;
  for (int i = 0; i <= 3000; ++i) {
    const double kt = 3.0 * i / 3000;
    const double v = tau3(Tau3Kind::ghz_y, ScaledTime(kt));
    if (kt >= kt_star ? v != 0.0 : !(v > 0.0)) ++violations;
  }
  const double after = closed_form_discord(ClosedFormKind::ghz_y, ScaledTime(kt_star + 0.5));
  std::printf("    kt* = %.12g, D_y(kt*+0.5) = %.12g\n", kt_star, after);
  return {tz_ok && violations == 0 && after > 0.0,
          "tau3: |tau3_z(0.5) - e^-3| = " + sci(tz) + ", sudden-death sign violations = " +
              std::to_string(violations) + ", D_y(kt*+0.5) = " + sci(after) + " > 0"};
}

Outcome criterion7() {
  std::vector<std::pair<std::string, Matrix<8>>> states;
  for (double kt : ghz_x_grid()) states.emplace_back("c1", evolved(StateKind::ghz, ChannelKind::pauli_x, kt).matrix());
  for (auto [s, c] : {std::pair{StateKind::ghz, ChannelKind::pauli_y}, std::pair{StateKind::ghz, ChannelKind::pauli_z},
                      std::pair{StateKind::ghz, ChannelKind::depolarising}, std::pair{StateKind::w, ChannelKind::pauli_z},
                      std::pair{StateKind::w, ChannelKind::depolarising}})
    for (double kt : agreement_grid) states.emplace_back("c2", evolved(s, c, kt).matrix());
  for (auto s : {StateKind::ghz, StateKind::w})
    for (auto c : all_channels) states.emplace_back("c3", evolved(s, c, 0.0).matrix());
  for (auto c : {ChannelKind::pauli_x, ChannelKind::pauli_y}) states.emplace_back("c4", evolved(StateKind::w, c, 5.0).matrix());
  const std::vector<double> times{0.1, 0.5, 1.0, 2.0};
  for (auto s : {StateKind::ghz, StateKind::w})
    for (auto c : all_channels) {
      for (const auto& m : evolve_numeric_series(initial_density(s).matrix(), ChannelSpec(c), times))
        states.emplace_back("c5", m.matrix());
      for (double kt : times) states.emplace_back("c5", evolved(s, c, kt).matrix());
    }

  StateDefects worst;
  int invalid = 0;
  for (const auto& [tag, m] : states) {
    const auto d = state_defects(m);
    worst.hermiticity = std::max(worst.hermiticity, d.hermiticity);
    worst.trace = std::max(worst.trace, d.trace);
    worst.min_eigenvalue = std::min(worst.min_eigenvalue, d.min_eigenvalue);
    if (!d.ok()) ++invalid;
  }
  std::printf("    %zu states: max hermiticity defect %s, max trace defect %s, min eigenvalue %s\n", states.size(),
              sci(worst.hermiticity).c_str(), sci(worst.trace).c_str(), sci(worst.min_eigenvalue).c_str());

  std::mt19937_64 rng(987654321);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2 * std::numbers::pi);
  auto random_state = [&] {
    Matrix<8> a;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix<8> r = a * a.adjoint();
    r *= 1.0 / r.trace().real();
    return ThreeQubitState(hermitian_part(r));
  };
  double idem = 0.0, klein = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto rho = random_state();
    MeasurementBasis b;
    for (std::size_t j = 0; j < 3; ++j) {
      b.theta[j] = th(rng);
      b.phi[j] = ph(rng);
    }
    const auto once = pinch_global(rho, b);
    if (!state_defects(once.matrix()).ok()) ++invalid;
    idem = std::max(idem, max_abs_diff(pinch_global(once, b).matrix(), once.matrix()));
    klein = std::max(klein, -relative_entropy(rho, random_state()));
    klein = std::max(klein, -relative_entropy(rho, once));
  }
  const bool ok = invalid == 0 && idem <= 1e-12 && klein <= 0.0;
  return {ok, "state validity: " + std::to_string(invalid) + " invalid states, pinching idempotence max " + sci(idem) +
                  " (tol 1e-12), Klein max(-S) = " + sci(std::max(0.0, klein)) + " (tol 0)"};
}

const std::array<std::function<Outcome()>, 7> criteria{criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }
  if (which.empty())
    for (int n = 1; n <= 7; ++n) which.push_back(n);

  int failures = 0;
  for (int n : which) {
    if (n < 1 || n > 7) {
      std::fprintf(stderr, "criterion must be 1..7\n");
      return 2;
    }
    Outcome o{false, ""};
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] C%d %s\n", o.passed ? "PASS" : "FAIL", n, o.summary.c_str());
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
