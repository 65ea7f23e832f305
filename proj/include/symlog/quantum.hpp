#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "symlog/dualities.hpp"
#include "symlog/registry.hpp"

namespace symlog {

inline constexpr double kQubitTol = 1e-12;
inline constexpr double kRationalTol = 1e-9;
inline constexpr std::int64_t kMaxDenominator = 1000000;

// α|↓⟩ + e^{iφ}β|↑⟩ up to a global phase, kept in canonical form:
// α, β ≥ 0 and φ ∈ [0, 2π), with φ = 0 whenever one amplitude vanishes.
struct Qubit {
  double alpha = 1;
  double beta = 0;
  double phi = 0;

  static Qubit make(double alpha, double beta, double phi) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(phi) || alpha < 0 || beta < 0)
      throw Error(ErrorKind::InvalidQubit, "amplitudes must be finite and non-negative");
    if (std::abs(alpha * alpha + beta * beta - 1) > 1e-9)
      throw Error(ErrorKind::InvalidQubit, "state is not normalized");
    return canonical(alpha, beta, phi);
  }

  static Qubit canonical(double alpha, double beta, double phi) {
    Qubit q;
    double n = std::hypot(alpha, beta);
    q.alpha = alpha / n;
    q.beta = beta / n;
    double two_pi = 2 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    if (two_pi - phi < kQubitTol) phi = 0;
    q.phi = (q.alpha < kQubitTol || q.beta < kQubitTol) ? 0 : phi;
    if (q.alpha < kQubitTol) q.alpha = 0;
    if (q.beta < kQubitTol) q.beta = 0;
    return q;
  }

  std::complex<double> amp_down() const { return alpha; }
  std::complex<double> amp_up() const { return std::polar(beta, phi); }
};

inline Qubit ket_down() { return Qubit::make(1, 0, 0); }
inline Qubit ket_up() { return Qubit::make(0, 1, 0); }
inline Qubit ket_plus() { return Qubit::make(std::sqrt(0.5), std::sqrt(0.5), 0); }
inline Qubit ket_minus() { return Qubit::make(std::sqrt(0.5), std::sqrt(0.5), std::numbers::pi); }

// From arbitrary amplitudes, removing the global phase.
inline Qubit from_amplitudes(std::complex<double> a, std::complex<double> b) {
  double ra = std::abs(a), rb = std::abs(b);
  double phase = ra > kQubitTol ? std::arg(a) : 0;
  double phi = rb > kQubitTol ? std::arg(b) - phase : 0;
  return Qubit::canonical(ra, rb, phi);
}

inline std::complex<double> inner_product(const Qubit& q, const Qubit& r) {
  return std::conj(q.amp_down()) * r.amp_down() + std::conj(q.amp_up()) * r.amp_up();
}

inline bool distinguishable(const Qubit& q, const Qubit& r) { return std::abs(inner_product(q, r)) < kQubitTol; }

// Equal as rays: |⟨q|r⟩| = 1.
inline bool same_state(const Qubit& q, const Qubit& r, double tol = kQubitTol) {
  return std::abs(std::abs(inner_product(q, r)) - 1) < tol;
}

enum class Gate { X, Z };

inline const char* to_string(Gate g) { return g == Gate::X ? "X" : "Z"; }

inline Qubit apply_gate(Gate g, const Qubit& q) {
  if (g == Gate::X) return from_amplitudes(q.amp_up(), q.amp_down());
  return from_amplitudes(q.amp_down(), -q.amp_up());
}

// ---------------------------------------------------------------------------
// Measurement

// Best rational approximation with bounded denominator (continued fractions).
inline std::optional<Rational> rationalize(double x, std::int64_t max_den = kMaxDenominator, double tol = kRationalTol) {
  if (!(x >= 0)) return std::nullopt;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    if (a > 1e12) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < tol) return Rational(p1, q1);
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1 / frac;
  }
  if (q1 != 0 && std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < tol) return Rational(p1, q1);
  return std::nullopt;
}

inline DomainRecord measurement_domain(const Qubit& q) {
  auto pd = rationalize(q.alpha * q.alpha), pu = rationalize(q.beta * q.beta);
  if (!pd || !pu || *pd + *pu != Rational(1))
    throw Error(ErrorKind::NonDyadicProbability, "outcome probabilities do not rationalize within tolerance");
  auto reg = standard_registry();
  if (*pu == Rational(0)) return reg.at(kDown);
  if (*pd == Rational(0)) return reg.at(kUp);
  if (*pd == Rational(1, 2)) {
    if (q.phi < 1e-9) return reg.at(kPlus);
    if (std::abs(q.phi - std::numbers::pi) < 1e-9) return reg.at(kMinus);
  }
  return make_domain("Dq", {outcome("down", *pd), outcome("up", *pu)}, false, false, std::nullopt, false, false);
}

inline Formula state_formula(const Qubit& q, const std::string& pred = "A") {
  return mk::forall("x", measurement_domain(q).name, mk::atom(pred, {var("x")}));
}

// Measurement as substitution: the conjunction of A over the outcomes.
inline Formula collapse(const Qubit& q, const std::string& pred = "A") {
  auto d = measurement_domain(q);
  Formula out = mk::atom(pred, {d.entries.back()});
  for (size_t i = d.entries.size() - 1; i-- > 0;) out = mk::conj(mk::atom(pred, {d.entries[i]}), out);
  return out;
}

// ---------------------------------------------------------------------------
// Bell pairs

struct BellState {
  enum class Phase { plus, minus } phase = Phase::plus;
  Corr correlation = Corr::identical;
};

inline std::vector<BellState> all_bell_states() {
  using P = BellState::Phase;
  return {{P::plus, Corr::identical}, {P::plus, Corr::opposite}, {P::minus, Corr::identical}, {P::minus, Corr::opposite}};
}

inline std::string to_string(const BellState& b) {
  return std::string(b.phase == BellState::Phase::plus ? "plus" : "minus") + "/" +
         (b.correlation == Corr::identical ? "identical" : "opposite");
}

inline Formula bell_formula(const BellState& b, const std::string& pred = "A") {
  auto d = b.phase == BellState::Phase::plus ? kPlus : kMinus;
  return mk::forall("x", d,
                    mk::join(b.correlation, mk::atom(pred, {var("x")}, Index::iconst(1)),
                             mk::atom(pred, {var("x")}, Index::iconst(2))));
}

// ---------------------------------------------------------------------------

struct CorrespondenceCell {
  std::string state;
  Gate gate;
  Formula expected;  // the duality applied to the state's formula
  Formula actual;    // the formula of the gated state
  bool ok;
};

// X ↔ ⊥ and Z ↔ ⊤ on the four basis states.
inline std::vector<CorrespondenceCell> duality_correspondence() {
  std::vector<CorrespondenceCell> out;
  std::vector<std::pair<std::string, Qubit>> states = {
      {"down", ket_down()}, {"up", ket_up()}, {"plus", ket_plus()}, {"minus", ket_minus()}};
  for (const auto& [name, s] : states)
    for (auto g : {Gate::X, Gate::Z}) {
      auto expected = apply_duality(state_formula(s), g == Gate::X ? Duality::perp : Duality::top);
      auto actual = state_formula(apply_gate(g, s));
      out.push_back({name, g, expected, actual, identical(expected, actual)});
    }
  return out;
}

}  // namespace symlog
