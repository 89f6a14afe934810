#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qgame/qmat.hpp"

namespace qgame {

/// Euler-type parameters of an SU(2) element:
///   [[ e^{iφ} cos(θ/2),   e^{iχ} sin(θ/2) ],
///    [ -e^{-iχ} sin(θ/2), e^{-iφ} cos(θ/2) ]]
/// with θ ∈ [0, π], φ ∈ [0, 2π), χ ∈ [0, 2π).
struct Su2Params {
  double theta = 0.0;
  double phi = 0.0;
  double chi = 0.0;

  // Throws ConstraintError naming the out-of-range field.
  void validate() const;
  bool operator==(const Su2Params&) const = default;
};

CMatrix su2(const Su2Params& p);

/// Best-effort inverse of su2(): the parameters of e^{iδ}·u for the phase δ
/// that makes the determinant 1. Both square roots of the determinant are
/// returned (they differ by π in φ and χ). Throws ConstraintError if u is
/// not a 2×2 unitary.
std::vector<Su2Params> su2_decompose(const CMatrix& u);

enum class GateKind {
  kIdentity,
  kPauliX,
  kPauliY,
  kPauliZ,
  kHadamard,
  kSDaggerHadamard,
  kSu2,
  kEwlJ,
};

struct GateLabel {
  GateKind kind = GateKind::kIdentity;
  Su2Params params{};  // kSu2 only
  double gamma = 0.0;  // kEwlJ only, in [0, π/2]

  static GateLabel identity() { return {}; }
  static GateLabel pauli_x() { return {GateKind::kPauliX}; }
  static GateLabel pauli_y() { return {GateKind::kPauliY}; }
  static GateLabel pauli_z() { return {GateKind::kPauliZ}; }
  static GateLabel hadamard() { return {GateKind::kHadamard}; }
  static GateLabel s_dagger_hadamard() { return {GateKind::kSDaggerHadamard}; }
  static GateLabel su2(Su2Params p) { return {GateKind::kSu2, p}; }
  static GateLabel ewl_j(double gamma) { return {GateKind::kEwlJ, {}, gamma}; }

  void validate() const;
  // "identity", "pauli_x", ..., "su2(θ,φ,χ)", "ewl_J(γ)"
  std::string name() const;
  // Inverse of name(); throws ConstraintError on unknown labels.
  static GateLabel parse(const std::string& text);

  bool operator==(const GateLabel&) const = default;
};

/// 2×2 matrix for single-qubit labels, 4×4 for ewl_J(γ) = e^{iγ σy⊗σy}.
CMatrix named_gate(const GateLabel& g);

inline constexpr double kDefaultGamma = std::numbers::pi / 2;
inline constexpr double kDefaultEps1 = 0.1;
inline constexpr double kDefaultEps2 = 0.3;

// Computational basis state |index> on n qubits, as a density matrix.
CMatrix basis_density(int num_qubits, std::size_t index);

CVector ghz_state(int num_qubits);

// Uniform mixture over the eight odd-parity 4-bit basis states.
CMatrix minority_rho_in();

// α/√2(|0000⟩+|1111⟩) + √(1−α²)/2 (|01⟩+|10⟩)⊗(|01⟩+|10⟩), α ∈ [0, 1].
CVector fsslh_psi_in(double alpha);

// diag((1−ε₁−ε₂)/2, ε₁, ε₂, (1−ε₁−ε₂)/2); requires ε₁ ≠ ε₂.
CMatrix f09_rho(double eps1, double eps2);

/// Σ_Y p(Y) Q_{y_1}⊗…⊗Q_{y_n} for a probability vector p indexed by basis
/// index. Throws ConstraintError if p is not a distribution.
CMatrix diagonal_mixture(std::span<const double> p);

}  // namespace qgame
