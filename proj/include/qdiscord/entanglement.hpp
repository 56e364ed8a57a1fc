#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "qdiscord/channels.hpp"

namespace qdiscord {

/// Lower bounds to the three-qubit concurrence that have closed forms:
/// GHZ under each Pauli channel.
enum class Tau3Kind { ghz_x, ghz_y, ghz_z };

inline std::string_view to_string(Tau3Kind k) {
  switch (k) {
    case Tau3Kind::ghz_x: return "ghz_x";
    case Tau3Kind::ghz_y: return "ghz_y";
    case Tau3Kind::ghz_z: return "ghz_z";
  }
  return "?";
}

inline std::optional<Tau3Kind> tau3_for(StateKind s, ChannelKind c) {
  if (s != StateKind::ghz) return std::nullopt;
  switch (c) {
    case ChannelKind::pauli_x: return Tau3Kind::ghz_x;
    case ChannelKind::pauli_y: return Tau3Kind::ghz_y;
    case ChannelKind::pauli_z: return Tau3Kind::ghz_z;
    case ChannelKind::depolarising: return std::nullopt;
  }
  return std::nullopt;
}

namespace detail {

/// Argument of the max{0, .} in the sigma_y bound.
inline double tau3_y_argument(double kt) {
  return 0.25 * (3 * std::exp(-2 * kt) + std::exp(-4 * kt) + std::exp(-6 * kt) - 1);
}

}  // namespace detail

inline double tau3(Tau3Kind kind, ScaledTime t) {
  const double kt = t.value();
  switch (kind) {
    case Tau3Kind::ghz_x: return std::exp(-4 * kt);
    case Tau3Kind::ghz_y: return std::max(0.0, detail::tau3_y_argument(kt));
    case Tau3Kind::ghz_z: return std::exp(-6 * kt);
  }
  return 0.0;
}

/// Finite kappa*t at which the bound reaches zero, if it does. Only the
/// sigma_y bound dies at finite time; it is located by bisection to 1e-10.
inline std::optional<double> sudden_death_time(Tau3Kind kind) {
  if (kind != Tau3Kind::ghz_y) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  while (detail::tau3_y_argument(hi) > 0) hi *= 2;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (detail::tau3_y_argument(mid) > 0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace qdiscord
