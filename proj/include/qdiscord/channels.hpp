#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdiscord/density.hpp"
#include "qdiscord/errors.hpp"
#include "qdiscord/matrix.hpp"

namespace qdiscord {

enum class StateKind { ghz, w };

enum class ChannelKind { pauli_x, pauli_y, pauli_z, depolarising };

inline std::string_view to_string(StateKind s) { return s == StateKind::ghz ? "ghz" : "w"; }

inline std::string_view to_string(ChannelKind c) {
  switch (c) {
    case ChannelKind::pauli_x: return "x";
    case ChannelKind::pauli_y: return "y";
    case ChannelKind::pauli_z: return "z";
    case ChannelKind::depolarising: return "depol";
  }
  return "?";
}

inline StateKind parse_state_kind(std::string_view s) {
  if (s == "ghz") return StateKind::ghz;
  if (s == "w") return StateKind::w;
  throw ArgumentError("unknown state '" + std::string(s) + "' (expected ghz or w)");
}

inline ChannelKind parse_channel_kind(std::string_view s) {
  if (s == "x") return ChannelKind::pauli_x;
  if (s == "y") return ChannelKind::pauli_y;
  if (s == "z") return ChannelKind::pauli_z;
  if (s == "depol") return ChannelKind::depolarising;
  throw ArgumentError("unknown channel '" + std::string(s) + "' (expected x, y, z or depol)");
}

/// Noise channel acting identically and independently on all three qubits.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::pauli_z;
  double kappa = 1.0;  ///< relaxation rate, inverse time units

  ChannelSpec() = default;
  ChannelSpec(ChannelKind k, double rate = 1.0) : kind(k), kappa(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
      throw ArgumentError("channel rate kappa must be positive and finite");
  }
};

/// Dimensionless time kappa*t.
class ScaledTime {
 public:
  explicit ScaledTime(double kt) : kt_(kt) {
    if (!std::isfinite(kt) || kt < 0.0)
      throw ArgumentError("scaled time kappa*t must be finite and non-negative");
  }
  double value() const { return kt_; }

 private:
  double kt_;
};

/// State vector in the |000>..|111> ordering, qubit 1 most significant.
inline std::array<Complex, 8> initial_vector(StateKind s) {
  std::array<Complex, 8> v{};
  if (s == StateKind::ghz) {
    v[0b000] = v[0b111] = 1.0 / std::sqrt(2.0);
  } else {
    v[0b100] = 0.5;
    v[0b010] = 0.5;
    v[0b001] = std::sqrt(2.0) / 2.0;
  }
  return v;
}

inline ThreeQubitState initial_density(StateKind s) {
  return ThreeQubitState::pure(initial_vector(s));
}

namespace detail {

inline Matrix<8> symmetric_from_upper(Matrix<8> m) {
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m;
}

inline Matrix<8> ghz_evolved(ChannelKind c, double kt) {
  Matrix<8> m;
  switch (c) {
    case ChannelKind::pauli_x: {
      const double ap = 1.0 + 3.0 * std::exp(-4.0 * kt);
      const double am = 1.0 - std::exp(-4.0 * kt);
      for (std::size_t i = 0; i < 8; ++i) {
        m(i, i) = am;
        m(i, 7 - i) = am;
      }
      m(0, 0) = m(7, 7) = m(0, 7) = m(7, 0) = ap;
      m *= 1.0 / 8.0;
      break;
    }
    case ChannelKind::pauli_y: {
      const double ap = 1.0 + 3.0 * std::exp(-4.0 * kt);
      const double am = 1.0 - std::exp(-4.0 * kt);
      const double b1 = 3.0 * std::exp(-2.0 * kt) + std::exp(-6.0 * kt);
      const double b2 = std::exp(-2.0 * kt) - std::exp(-6.0 * kt);
      for (std::size_t i = 0; i < 8; ++i) {
        m(i, i) = am;
        m(i, 7 - i) = -b2;
      }
      m(0, 0) = m(7, 7) = ap;
      m(0, 7) = m(7, 0) = b1;
      m *= 1.0 / 8.0;
      break;
    }
    case ChannelKind::pauli_z: {
      // Hermitian completion: both |000><111| and |111><000| carry the decay.
      m(0, 0) = m(7, 7) = 0.5;
      m(0, 7) = m(7, 0) = 0.5 * std::exp(-6.0 * kt);
      break;
    }
    case ChannelKind::depolarising: {
      const double ap = 1.0 + 3.0 * std::exp(-8.0 * kt);
      const double am = 1.0 - std::exp(-8.0 * kt);
      const double g = 4.0 * std::exp(-12.0 * kt);
      for (std::size_t i = 0; i < 8; ++i) m(i, i) = am;
      m(0, 0) = m(7, 7) = ap;
      m(0, 7) = m(7, 0) = g;
      m *= 1.0 / 8.0;
      break;
    }
  }
  return m;
}

inline Matrix<8> w_evolved(ChannelKind c, double kt) {
  const double r2 = std::sqrt(2.0);
  Matrix<8> m;
  switch (c) {
    case ChannelKind::pauli_x:
    case ChannelKind::pauli_y: {
      const double sg = c == ChannelKind::pauli_x ? 1.0 : -1.0;
      const double e2 = std::exp(-2.0 * kt), e4 = std::exp(-4.0 * kt), e6 = std::exp(-6.0 * kt);
      const double a1 = 1 + e2 + e4 + e6;
      const double a2 = 1 + e2 - e4 - e6;
      const double a3 = 1 - e2 - e4 + e6;
      const double a4 = 1 - e2 + e4 - e6;
      const double bp = 1 + e6, bm = 1 - e6;
      m(0, 0) = 2 * a2;
      m(0, 3) = sg * r2 * a2;
      m(0, 5) = sg * r2 * a2;
      m(0, 6) = sg * a2;
      m(1, 1) = 2 * a1;
      m(1, 2) = r2 * a1;
      m(1, 4) = r2 * a1;
      m(1, 7) = sg * a3;
      m(2, 2) = 2 * bp;
      m(2, 4) = a1;
      m(2, 7) = sg * r2 * a3;
      m(3, 3) = 2 * bm;
      m(3, 5) = a4;
      m(3, 6) = r2 * a4;
      m(4, 4) = 2 * bp;
      m(4, 7) = sg * r2 * a3;
      m(5, 5) = 2 * bm;
      m(5, 6) = r2 * a4;
      m(6, 6) = 2 * a4;
      m(7, 7) = 2 * a3;
      m = symmetric_from_upper(m);
      m *= 1.0 / 16.0;
      break;
    }
    case ChannelKind::pauli_z: {
      const double e4 = std::exp(-4.0 * kt);
      m(1, 1) = 2.0;
      m(2, 2) = 1.0;
      m(4, 4) = 1.0;
      m(1, 2) = m(1, 4) = r2 * e4;
      m(2, 4) = e4;
      m = symmetric_from_upper(m);
      m *= 0.25;
      break;
    }
    case ChannelKind::depolarising: {
      const double e4 = std::exp(-4.0 * kt), e8 = std::exp(-8.0 * kt), e12 = std::exp(-12.0 * kt);
      const double a1 = 1 + e4 + e8 + e12;
      const double a2 = 1 + e4 - e8 - e12;
      const double a3 = 1 - e4 - e8 + e12;
      const double a4 = 1 - e4 + e8 - e12;
      const double bp = 1 + e12, bm = 1 - e12;
      const double gp = e8 + e12, gm = e8 - e12;
      m(0, 0) = a2;
      m(1, 1) = a1;
      m(1, 2) = r2 * gp;
      m(1, 4) = r2 * gp;
      m(2, 2) = bp;
      m(2, 4) = gp;
      m(3, 3) = bm;
      m(3, 5) = gm;
      m(3, 6) = r2 * gm;
      m(4, 4) = bp;
      m(5, 5) = bm;
      m(5, 6) = r2 * gm;
      m(6, 6) = a4;
      m(7, 7) = a3;
      m = symmetric_from_upper(m);
      m *= 1.0 / 8.0;
      break;
    }
  }
  return m;
}

}  // namespace detail

/// Closed-form state at time kt for each (initial state, channel) pair.
inline ThreeQubitState evolve_analytic(StateKind s, const ChannelSpec& channel, ScaledTime t) {
  const double kt = t.value();
  return ThreeQubitState(s == StateKind::ghz ? detail::ghz_evolved(channel.kind, kt)
                                             : detail::w_evolved(channel.kind, kt));
}

// ---------------------------------------------------------------------------
// Lindblad generator

enum class PauliAxis { x, y, z };

/// Lindblad jump operator sqrt(rate) * sigma_axis on one qubit (1-based).
struct JumpOperator {
  PauliAxis axis;
  int qubit;
  double rate;

  /// Dense 8x8 form, for reference computations.
  Matrix<8> dense() const {
    const Matrix<2> s = axis == PauliAxis::x ? pauli::x() : axis == PauliAxis::y ? pauli::y() : pauli::z();
    std::array<Matrix<2>, 3> f{pauli::identity(), pauli::identity(), pauli::identity()};
    f[static_cast<std::size_t>(qubit - 1)] = s;
    Matrix<8> m = kron(kron(f[0], f[1]), f[2]);
    m *= std::sqrt(rate);
    return m;
  }
};

/// Three operators (one per qubit) for a Pauli channel; nine for the
/// depolarising channel, every one with the same rate kappa.
inline std::vector<JumpOperator> jump_operators(const ChannelSpec& c) {
  std::vector<PauliAxis> axes;
  switch (c.kind) {
    case ChannelKind::pauli_x: axes = {PauliAxis::x}; break;
    case ChannelKind::pauli_y: axes = {PauliAxis::y}; break;
    case ChannelKind::pauli_z: axes = {PauliAxis::z}; break;
    case ChannelKind::depolarising: axes = {PauliAxis::x, PauliAxis::y, PauliAxis::z}; break;
  }
  std::vector<JumpOperator> ops;
  for (int q = 1; q <= 3; ++q)
    for (PauliAxis a : axes) ops.push_back({a, q, c.kappa});
  return ops;
}

namespace detail {

/// sigma_axis on `qubit` maps basis state b to phase(b) |b ^ bit>.
struct PauliAction {
  unsigned flip;
  std::array<Complex, 8> phase;  // indexed by the input basis state
};

inline PauliAction pauli_action(PauliAxis axis, int qubit) {
  const unsigned bit = 1u << static_cast<unsigned>(3 - qubit);
  PauliAction act{axis == PauliAxis::z ? 0u : bit, {}};
  for (unsigned b = 0; b < 8; ++b) {
    const bool one = (b & bit) != 0;
    switch (axis) {
      case PauliAxis::x: act.phase[b] = 1.0; break;
      case PauliAxis::y: act.phase[b] = one ? Complex(0, -1) : Complex(0, 1); break;
      case PauliAxis::z: act.phase[b] = one ? -1.0 : 1.0; break;
    }
  }
  return act;
}

/// sigma rho (left action).
inline Matrix<8> apply_left(const PauliAction& p, const Matrix<8>& rho) {
  Matrix<8> out;
  for (unsigned b = 0; b < 8; ++b) {
    const unsigned a = b ^ p.flip;  // sigma |b> = phase(b) |a>
    for (unsigned c = 0; c < 8; ++c) out(a, c) = p.phase[b] * rho(b, c);
  }
  return out;
}

/// rho sigma^dagger (right action with the adjoint).
inline Matrix<8> apply_right_adjoint(const PauliAction& p, const Matrix<8>& rho) {
  Matrix<8> out;
  for (unsigned b = 0; b < 8; ++b) {
    const unsigned a = b ^ p.flip;  // <b| sigma^dagger = conj(phase(b)) <a|
    for (unsigned r = 0; r < 8; ++r) out(r, a) = rho(r, b) * std::conj(p.phase[b]);
  }
  return out;
}

/// sigma^dagger rho (left action with the adjoint).
inline Matrix<8> apply_left_adjoint(const PauliAction& p, const Matrix<8>& rho) {
  Matrix<8> out;
  for (unsigned b = 0; b < 8; ++b) {
    const unsigned a = b ^ p.flip;  // sigma^dagger |a> = conj(phase(b)) |b>
    for (unsigned c = 0; c < 8; ++c) out(b, c) = std::conj(p.phase[b]) * rho(a, c);
  }
  return out;
}

/// rho sigma (right action).
inline Matrix<8> apply_right(const PauliAction& p, const Matrix<8>& rho) {
  Matrix<8> out;
  for (unsigned b = 0; b < 8; ++b) {
    const unsigned a = b ^ p.flip;  // <a| sigma = phase(b) <b|
    for (unsigned r = 0; r < 8; ++r) out(r, b) = rho(r, a) * p.phase[b];
  }
  return out;
}

}  // namespace detail

/// Lindblad generator with zero system Hamiltonian:
///   sum_i L_i rho L_i^dagger - 1/2 {L_i^dagger L_i, rho}.
/// Pauli jump operators are applied as signed permutations, so no dense
/// 8x8 products are formed. Works on any 8x8 operator (Runge-Kutta stages
/// are not density matrices).
inline Matrix<8> lindblad_rhs(const Matrix<8>& rho, const ChannelSpec& channel) {
  Matrix<8> out;
  for (const JumpOperator& op : jump_operators(channel)) {
    const auto act = detail::pauli_action(op.axis, op.qubit);
    const Matrix<8> l_rho = detail::apply_left(act, rho);
    Matrix<8> term = detail::apply_right_adjoint(act, l_rho);  // L rho L^dagger
    const Matrix<8> ldl_rho = detail::apply_left_adjoint(act, l_rho);
    const Matrix<8> rho_ldl = detail::apply_right(act, detail::apply_right_adjoint(act, rho));
    term -= 0.5 * (ldl_rho + rho_ldl);
    term *= op.rate;
    out += term;
  }
  return out;
}

inline Matrix<8> lindblad_rhs(const ThreeQubitState& rho, const ChannelSpec& channel) {
  return lindblad_rhs(rho.matrix(), channel);
}

struct IntegratorOptions {
  double step = 1e-4;  ///< fixed step in kappa*t units
};

/// Fixed-step RK4 integration of the Lindblad equation in kappa*t, starting
/// from `initial` and sampling at each entry of `times` (any order). After
/// every step the state is re-Hermitized and renormalized to unit trace.
inline std::vector<ThreeQubitState> evolve_numeric_series(const Matrix<8>& initial,
                                                          const ChannelSpec& channel,
                                                          std::span<const double> times,
                                                          const IntegratorOptions& opts = {}) {
  if (!(opts.step > 0.0) || !std::isfinite(opts.step))
    throw ArgumentError("integrator step must be positive");
  for (double t : times) (void)ScaledTime(t);

  std::vector<std::size_t> order(times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });

  // kappa is factored out: d rho / d(kappa t) = rhs / kappa.
  const double inv_kappa = 1.0 / channel.kappa;
  auto deriv = [&](const Matrix<8>& r) {
    Matrix<8> d = lindblad_rhs(r, channel);
    d *= inv_kappa;
    return d;
  };

  std::vector<Matrix<8>> samples(times.size());
  Matrix<8> rho = initial;
  double now = 0.0;
  for (std::size_t idx : order) {
    const double target = times[idx];
    const auto steps = static_cast<long long>(std::ceil((target - now) / opts.step - 1e-9));
    for (long long s = 0; s < steps; ++s) {
      const double h = std::min(opts.step, target - now);
      const Matrix<8> k1 = deriv(rho);
      const Matrix<8> k2 = deriv(rho + (h / 2) * k1);
      const Matrix<8> k3 = deriv(rho + (h / 2) * k2);
      const Matrix<8> k4 = deriv(rho + h * k3);
      rho += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = hermitian_part(rho);
      rho *= 1.0 / rho.trace().real();
      if (!rho.all_finite()) throw IntegrationError("non-finite state during RK4 integration");
      now = (s + 1 == steps) ? target : now + h;
    }
    samples[idx] = rho;
  }

  std::vector<ThreeQubitState> out;
  out.reserve(samples.size());
  for (const auto& m : samples) out.emplace_back(m);
  return out;
}

inline ThreeQubitState evolve_numeric(StateKind s, const ChannelSpec& channel, ScaledTime t,
                                      double step = IntegratorOptions{}.step) {
  const double kt = t.value();
  return evolve_numeric_series(initial_density(s).matrix(), channel, std::span<const double>(&kt, 1),
                               {step})
      .front();
}

}  // namespace qdiscord
