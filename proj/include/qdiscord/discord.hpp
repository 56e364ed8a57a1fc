#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdiscord/channels.hpp"
#include "qdiscord/density.hpp"
#include "qdiscord/errors.hpp"
#include "qdiscord/matrix.hpp"
#include "qdiscord/nelder_mead.hpp"
#include "qdiscord/parallel.hpp"

namespace qdiscord {

// ---------------------------------------------------------------------------
// Local projective measurements

/// Local von Neumann measurement on one qubit, parameterized by polar angle
/// theta and azimuth phi. The first projector is |v><v| with
/// v = (cos(theta/2), e^{-i phi} sin(theta/2)); the second is its complement.
struct LocalBasis {
  double theta = 0.0;
  double phi = 0.0;

  std::array<Complex, 2> first_vector() const {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, std::polar(s, -phi)};
  }
  std::array<Complex, 2> second_vector() const {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {s, -std::polar(c, -phi)};
  }

  /// Bloch direction of the first projector: Pi_1 = (I + n.sigma)/2.
  std::array<double, 3> bloch() const {
    return {std::sin(theta) * std::cos(phi), -std::sin(theta) * std::sin(phi), std::cos(theta)};
  }

  /// Representative of the same unordered projector pair with theta in
  /// [0, pi/2], phi in [0, 2pi) (in [0, pi) on the equator) and phi = 0 at
  /// the pole, where the projectors do not depend on phi.
  LocalBasis canonical() const {
    auto n = bloch();
    constexpr double eps = 1e-12;
    const bool flip = n[2] < -eps ||
                      (std::abs(n[2]) <= eps && (n[0] < -eps || (std::abs(n[0]) <= eps && n[1] < 0)));
    if (flip)
      for (double& c : n) c = -c;
    LocalBasis out;
    out.theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    if (std::hypot(n[0], n[1]) < 1e-9) {
      out.theta = 0.0;
      out.phi = 0.0;
      return out;
    }
    out.phi = std::atan2(-n[1], n[0]);
    if (out.phi < 0) out.phi += 2 * std::numbers::pi;
    if (out.phi >= 2 * std::numbers::pi) out.phi = 0.0;
    return out;
  }
};

/// Angles (theta_j, phi_j) for the three qubits.
struct MeasurementBasis {
  std::array<double, 3> theta{};
  std::array<double, 3> phi{};

  static MeasurementBasis uniform(double th, double ph) { return {{th, th, th}, {ph, ph, ph}}; }
  static MeasurementBasis sigma_z() { return uniform(0.0, 0.0); }
  static MeasurementBasis sigma_x() { return uniform(std::numbers::pi / 2, 0.0); }
  static MeasurementBasis sigma_y() { return uniform(std::numbers::pi / 2, std::numbers::pi / 2); }

  static MeasurementBasis from_locals(const std::array<LocalBasis, 3>& l) {
    MeasurementBasis b;
    for (std::size_t j = 0; j < 3; ++j) {
      b.theta[j] = l[j].theta;
      b.phi[j] = l[j].phi;
    }
    return b;
  }

  /// Qubit index is 1-based.
  LocalBasis local(int qubit) const {
    const auto j = static_cast<std::size_t>(qubit - 1);
    return {theta[j], phi[j]};
  }

  MeasurementBasis canonical() const {
    return from_locals({local(1).canonical(), local(2).canonical(), local(3).canonical()});
  }
};

/// The two rank-one projectors of a local measurement.
inline std::pair<Matrix<2>, Matrix<2>> projectors(const LocalBasis& b) {
  const Matrix<2> first = Matrix<2>::outer(b.first_vector());
  return {first, Matrix<2>::identity() - first};
}

inline std::pair<Matrix<2>, Matrix<2>> projectors(const MeasurementBasis& b, int qubit) {
  if (qubit < 1 || qubit > 3) throw ArgumentError("projectors: qubit index must be 1, 2 or 3");
  return projectors(b.local(qubit));
}

/// Sum over the eight product projectors Pi_k rho Pi_k.
inline ThreeQubitState pinch_global(const ThreeQubitState& rho, const MeasurementBasis& basis) {
  const auto p1 = projectors(basis, 1), p2 = projectors(basis, 2), p3 = projectors(basis, 3);
  const std::array<Matrix<2>, 2> q1{p1.first, p1.second}, q2{p2.first, p2.second}, q3{p3.first, p3.second};
  Matrix<8> out;
  for (const auto& a : q1)
    for (const auto& b : q2)
      for (const auto& c : q3) {
        const Matrix<8> pk = kron(kron(a, b), c);
        out += pk * rho.matrix() * pk;
      }
  return ThreeQubitState(out);
}

inline QubitState pinch_local(const QubitState& rho, const LocalBasis& basis) {
  const auto [a, b] = projectors(basis);
  return QubitState(a * rho.matrix() * a + b * rho.matrix() * b);
}

// ---------------------------------------------------------------------------
// Global quantum discord objective

/// S(rho || Phi(rho)) - sum_j S(rho_j || Phi_j(rho_j)) for a fixed state,
/// evaluated for many measurement bases.
///
/// Every pinched operator is diagonal in its measurement basis, so by the
/// pinching identity each relative entropy is the Shannon entropy of the
/// outcome distribution minus the von Neumann entropy of the unmeasured
/// state. The state entropies are computed once.
class DiscordObjective {
 public:
  explicit DiscordObjective(const ThreeQubitState& rho) : rho_(rho.matrix()) {
    state_entropy_ = von_neumann_entropy(rho);
    local_entropy_ = 0.0;
    for (int q = 1; q <= 3; ++q) local_entropy_ += von_neumann_entropy(partial_trace(rho, q));
  }

  double operator()(const std::array<LocalBasis, 3>& bases) const {
    std::array<std::array<std::array<Complex, 2>, 2>, 3> vecs;
    for (std::size_t j = 0; j < 3; ++j) vecs[j] = {bases[j].first_vector(), bases[j].second_vector()};
    return evaluate(vecs);
  }

  double operator()(const MeasurementBasis& b) const {
    return (*this)({b.local(1), b.local(2), b.local(3)});
  }

  using LocalVectors = std::array<std::array<Complex, 2>, 2>;

  /// Outcome probabilities p[a][b][c] for product vectors vecs[j][outcome].
  std::array<double, 8> probabilities(const std::array<LocalVectors, 3>& vecs) const {
    std::array<double, 8> p{};
    for (unsigned k = 0; k < 8; ++k) {
      std::array<Complex, 8> w;
      const auto& u = vecs[0][(k >> 2) & 1u];
      const auto& v = vecs[1][(k >> 1) & 1u];
      const auto& x = vecs[2][k & 1u];
      for (unsigned i = 0; i < 8; ++i) w[i] = u[(i >> 2) & 1u] * v[(i >> 1) & 1u] * x[i & 1u];
      Complex acc = 0.0;
      for (unsigned i = 0; i < 8; ++i) {
        Complex row = 0.0;
        for (unsigned j = 0; j < 8; ++j) row += rho_(i, j) * w[j];
        acc += std::conj(w[i]) * row;
      }
      p[k] = acc.real();
    }
    return p;
  }

  double evaluate(const std::array<LocalVectors, 3>& vecs) const {
    const auto p = probabilities(vecs);
    double local_outcomes = 0.0;
    for (unsigned q = 0; q < 3; ++q) {
      const unsigned bit = 4u >> q;
      double p0 = 0.0;
      for (unsigned k = 0; k < 8; ++k)
        if ((k & bit) == 0) p0 += p[k];
      local_outcomes += entropy_of_weights(std::array<double, 2>{p0, 1.0 - p0});
    }
    // [H(p) - S(rho)] - sum_j [H(p_j) - S(rho_j)]
    return entropy_of_weights(p) - state_entropy_ - local_outcomes + local_entropy_;
  }

  double state_entropy() const { return state_entropy_; }

 private:
  Matrix<8> rho_;
  double state_entropy_ = 0.0;
  double local_entropy_ = 0.0;
};

inline double gqd_objective(const ThreeQubitState& rho, const MeasurementBasis& basis) {
  return DiscordObjective(rho)(basis);
}

// ---------------------------------------------------------------------------
// Minimization over the six measurement angles

struct MinimizerOptions {
  /// Lattice theta = i pi / theta_points, phi = 2 pi k / phi_points; both even.
  int theta_points = 12;
  int phi_points = 12;
  /// Number of best lattice points handed to simplex refinement.
  int refinements = 5;
  /// Restrict the lattice scan using qubit-permutation invariance of the state.
  bool use_symmetry = true;
  double symmetry_tolerance = 1e-12;
  SimplexOptions simplex{std::numbers::pi / 12, 1e-13, 10000};
};

struct DiscordResult {
  double value = 0.0;
  MeasurementBasis argmin;
  long evaluations = 0;
  /// max - min over the refined minima.
  double residual = 0.0;
};

/// Which qubit transpositions leave a three-qubit operator invariant.
struct PermutationSymmetry {
  bool swap12 = false;
  bool swap13 = false;
  bool swap23 = false;
};

inline PermutationSymmetry detect_permutation_symmetry(const Matrix<8>& rho, double tol = 1e-12) {
  auto invariant = [&](unsigned qa, unsigned qb) {
    // qa, qb are bit positions (qubit 1 -> bit 2)
    auto perm = [&](unsigned s) {
      const unsigned ba = (s >> qa) & 1u, bb = (s >> qb) & 1u;
      s &= ~((1u << qa) | (1u << qb));
      return s | (ba << qb) | (bb << qa);
    };
    for (unsigned a = 0; a < 8; ++a)
      for (unsigned b = 0; b < 8; ++b)
        if (std::abs(rho(perm(a), perm(b)) - rho(a, b)) > tol) return false;
    return true;
  };
  return {invariant(2, 1), invariant(2, 0), invariant(1, 0)};
}

/// Distinct local bases of the (theta, phi) lattice. (theta, phi) and
/// (pi - theta, phi + pi) name the same projector pair and phi is void at
/// theta = 0, so only theta <= pi/2 is kept, the equator keeps phi < pi,
/// and the pole appears once.
inline std::vector<LocalBasis> lattice_bases(int theta_points, int phi_points) {
  if (theta_points < 2 || phi_points < 2 || theta_points % 2 || phi_points % 2)
    throw ArgumentError("lattice sizes must be even and at least 2");
  std::vector<LocalBasis> out;
  const double pi = std::numbers::pi;
  for (int i = 0; 2 * i <= theta_points; ++i) {
    const double theta = pi * i / theta_points;
    if (i == 0) {
      out.push_back({0.0, 0.0});
      continue;
    }
    const int nphi = (2 * i == theta_points) ? phi_points / 2 : phi_points;
    for (int k = 0; k < nphi; ++k) out.push_back({theta, 2 * pi * k / phi_points});
  }
  return out;
}

/// Global quantum discord: minimum of gqd_objective over all local
/// projective measurements.
///
/// Stage 1 scans the product lattice of local bases (pruned by detected
/// permutation symmetry); stage 2 runs Nelder-Mead on the six angles from
/// the best `refinements` lattice points, each followed by one restart from
/// its own optimum. Lattice ties are broken by lattice index so the result is
/// independent of evaluation order. Throws ConvergenceError if a simplex run
/// exhausts its iterations.
inline DiscordResult minimize_gqd(const ThreeQubitState& rho, const MinimizerOptions& opts = {}) {
  const DiscordObjective objective(rho);
  const auto bases = lattice_bases(opts.theta_points, opts.phi_points);
  const int nb = static_cast<int>(bases.size());

  std::vector<DiscordObjective::LocalVectors> vecs(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i)
    vecs[i] = {bases[i].first_vector(), bases[i].second_vector()};

  PermutationSymmetry sym;
  if (opts.use_symmetry) sym = detect_permutation_symmetry(rho.matrix(), opts.symmetry_tolerance);

  std::vector<std::array<int, 3>> tuples;
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      if (sym.swap12 && b < a) continue;
      for (int c = 0; c < nb; ++c) {
        if (sym.swap13 && c < a) continue;
        if (sym.swap23 && c < b) continue;
        tuples.push_back({a, b, c});
      }
    }

  std::vector<double> values(tuples.size());
  constexpr std::size_t chunk = 4096;
  const std::size_t nchunks = (tuples.size() + chunk - 1) / chunk;
  parallel_for(nchunks, [&](std::size_t ci) {
    const std::size_t end = std::min(tuples.size(), (ci + 1) * chunk);
    for (std::size_t i = ci * chunk; i < end; ++i) {
      const auto& t = tuples[i];
      values[i] = objective.evaluate({vecs[t[0]], vecs[t[1]], vecs[t[2]]});
    }
  });

  std::vector<std::size_t> idx(tuples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts.refinements)), idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(keep), idx.end(), [&](auto x, auto y) {
    return values[x] != values[y] ? values[x] < values[y] : tuples[x] < tuples[y];
  });

  DiscordResult result;
  result.evaluations = static_cast<long>(tuples.size());

  auto angles_of = [](const std::array<double, 6>& x) {
    return std::array<LocalBasis, 3>{LocalBasis{x[0], x[1]}, LocalBasis{x[2], x[3]}, LocalBasis{x[4], x[5]}};
  };
  auto f = [&](const std::array<double, 6>& x) { return objective(angles_of(x)); };

  struct Refined {
    SimplexResult<6> best;
    long evaluations = 0;
    bool converged = true;
  };
  std::vector<Refined> refined(keep);
  parallel_for(keep, [&](std::size_t r) {
    const auto& t = tuples[idx[r]];
    std::array<double, 6> x0{};
    for (std::size_t j = 0; j < 3; ++j) {
      x0[2 * j] = bases[t[j]].theta;
      x0[2 * j + 1] = bases[t[j]].phi;
    }
    auto first = nelder_mead(f, x0, opts.simplex);
    SimplexOptions again = opts.simplex;
    again.initial_step /= 4;
    auto second = nelder_mead(f, first.x, again);
    refined[r].evaluations = first.evaluations + second.evaluations;
    refined[r].converged = first.converged && second.converged;
    refined[r].best = second.value < first.value ? second : first;
  });

  double lo = refined.front().best.value, hi = lo;
  std::size_t winner = 0;
  for (std::size_t r = 0; r < keep; ++r) {
    result.evaluations += refined[r].evaluations;
    const double v = refined[r].best.value;
    if (!refined[r].converged)
      throw ConvergenceError("minimize_gqd: simplex refinement did not converge", std::min(lo, v));
    if (v < lo) {
      lo = v;
      winner = r;
    }
    hi = std::max(hi, v);
  }
  // Roundoff can leave the minimum a few ulps below zero.
  result.value = (lo < 0.0 && lo > -1e-9) ? 0.0 : lo;
  result.residual = hi - lo;
  result.argmin = MeasurementBasis::from_locals(angles_of(refined[winner].best.x)).canonical();
  return result;
}

// ---------------------------------------------------------------------------
// Closed-form discord along sigma_z measurements

enum class ClosedFormKind { ghz_x, ghz_y, ghz_z, ghz_depol, w_z, w_depol };

enum class ClosedFormVariant {
  corrected,
  /// Inconsistent variants: the GHZ depolarising form with the
  /// population coefficient 1 + 3e^{-4kt}, and the W depolarising form with
  /// constant (3 - e^{-8kt})/2 and quarter weights. Kept only to report how
  /// far they are from the consistent forms.
  uncorrected,
};

inline std::string_view to_string(ClosedFormKind k) {
  switch (k) {
    case ClosedFormKind::ghz_x: return "ghz_x";
    case ClosedFormKind::ghz_y: return "ghz_y";
    case ClosedFormKind::ghz_z: return "ghz_z";
    case ClosedFormKind::ghz_depol: return "ghz_depol";
    case ClosedFormKind::w_z: return "w_z";
    case ClosedFormKind::w_depol: return "w_depol";
  }
  return "?";
}

/// Closed form available for a (state, channel) pair; W under sigma_x or
/// sigma_y has none.
inline std::optional<ClosedFormKind> closed_form_for(StateKind s, ChannelKind c) {
  if (s == StateKind::ghz) {
    switch (c) {
      case ChannelKind::pauli_x: return ClosedFormKind::ghz_x;
      case ChannelKind::pauli_y: return ClosedFormKind::ghz_y;
      case ChannelKind::pauli_z: return ClosedFormKind::ghz_z;
      case ChannelKind::depolarising: return ClosedFormKind::ghz_depol;
    }
  }
  if (c == ChannelKind::pauli_z) return ClosedFormKind::w_z;
  if (c == ChannelKind::depolarising) return ClosedFormKind::w_depol;
  return std::nullopt;
}

namespace detail {

/// x log2 x with 0 log 0 = 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Entropy-like sum for one 3x3 block with eigen-pair (b+g+a -/+ r).
inline double block_pair(double beta, double gamma, double alpha) {
  const double r = std::sqrt(std::max(0.0, beta * beta + gamma * (2 * beta + 17 * gamma) -
                                               2 * alpha * (beta + gamma) + alpha * alpha));
  return xlog2x(beta + gamma + alpha - r) + xlog2x(beta + gamma + alpha + r);
}

}  // namespace detail

/// Discord of the evolved GHZ/W state measured in the sigma_z eigenbasis,
/// as an explicit function of kappa*t.
inline double closed_form_discord(ClosedFormKind kind, ScaledTime t,
                                  ClosedFormVariant variant = ClosedFormVariant::corrected) {
  using detail::xlog2x;
  const double kt = t.value();
  auto e = [kt](double k) { return std::exp(-k * kt); };
  switch (kind) {
    case ClosedFormKind::ghz_x:
      return 1.0;
    case ClosedFormKind::ghz_y: {
      const double ap = 1 + 3 * e(4), am = 1 - e(4);
      const double b1 = 3 * e(2) + e(6), b2 = e(2) - e(6);
      return (xlog2x(ap - b1) + xlog2x(ap + b1)) / 8 + 3 * (xlog2x(am - b2) + xlog2x(am + b2)) / 8 -
             xlog2x(ap) / 4 - 3 * xlog2x(am) / 4;
    }
    case ClosedFormKind::ghz_z: {
      const double q = e(6);
      return (xlog2x(1 + q) + xlog2x(1 - q)) / 2;
    }
    case ClosedFormKind::ghz_depol: {
      const double ap = variant == ClosedFormVariant::corrected ? 1 + 3 * e(8) : 1 + 3 * e(4);
      const double g = 4 * e(12);
      return (xlog2x(ap + g) + xlog2x(ap - g)) / 8 - xlog2x(ap) / 4;
    }
    case ClosedFormKind::w_z: {
      const double q = e(4);
      const double r = std::sqrt(1 - 2 * q + 17 * q * q);
      return -(5 + q) / 4 + xlog2x(1 - q) / 4 + (xlog2x(3 + q - r) + xlog2x(3 + q + r)) / 8;
    }
    case ClosedFormKind::w_depol: {
      const double a1 = 1 + e(4) + e(8) + e(12);
      const double a2 = 1 + e(4) - e(8) - e(12);
      const double a3 = 1 - e(4) - e(8) + e(12);
      const double a4 = 1 - e(4) + e(8) - e(12);
      const double bp = 1 + e(12), bm = 1 - e(12);
      const double gp = e(8) + e(12), gm = e(8) - e(12);
      const double blocks = (detail::block_pair(bp, gp, a1) + detail::block_pair(bm, gm, a4)) / 16;
      const double singles = (xlog2x(bp - gp) + xlog2x(bm - gm)) / 8;
      if (variant == ClosedFormVariant::uncorrected) {
        return 0.5 * (3 - e(8)) -
               (xlog2x(bp) + xlog2x(bm) + xlog2x(a1) + 2 * xlog2x(a2) + 2 * xlog2x(a3) + xlog2x(a4)) / 4 +
               singles + blocks;
      }
      // The |000> and |111> populations are unaffected by the measurement
      // and cancel between S(Phi(rho)) and S(rho).
      return -(1 + e(8)) / 2 - (xlog2x(a1) + xlog2x(a4) + 2 * xlog2x(bp) + 2 * xlog2x(bm)) / 8 + singles +
             blocks;
    }
  }
  return 0.0;
}

}  // namespace qdiscord
