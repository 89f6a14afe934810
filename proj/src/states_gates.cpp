#include "qgame/states_gates.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
const Complex kI{0.0, 1.0};

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

}  // namespace

void Su2Params::validate() const {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw ConstraintError("su2: theta=" + shortest(theta) + " outside [0, pi]");
  }
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw ConstraintError("su2: phi=" + shortest(phi) + " outside [0, 2pi)");
  }
  if (!(chi >= 0.0 && chi < kTwoPi)) {
    throw ConstraintError("su2: chi=" + shortest(chi) + " outside [0, 2pi)");
  }
}

CMatrix su2(const Su2Params& p) {
  p.validate();
  const double c = std::cos(p.theta / 2);
  const double s = std::sin(p.theta / 2);
  const Complex ep = std::polar(1.0, p.phi);
  const Complex ec = std::polar(1.0, p.chi);
  return CMatrix{{ep * c, ec * s}, {-std::conj(ec) * s, std::conj(ep) * c}};
}

std::vector<Su2Params> su2_decompose(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u)) {
    throw ConstraintError("su2_decompose: expected a 2x2 unitary");
  }
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Complex root = std::polar(1.0, -std::arg(det) / 2);
  std::vector<Su2Params> out;
  for (const Complex phase : {root, -root}) {
    const Complex a = phase * u(0, 0);
    const Complex b = phase * u(0, 1);
    Su2Params p;
    p.theta = 2 * std::atan2(std::abs(b), std::abs(a));
    p.phi = std::abs(a) < 1e-12 ? 0.0 : wrap_angle(std::arg(a));
    p.chi = std::abs(b) < 1e-12 ? 0.0 : wrap_angle(std::arg(b));
    out.push_back(p);
  }
  return out;
}

void GateLabel::validate() const {
  if (kind == GateKind::kSu2) params.validate();
  if (kind == GateKind::kEwlJ && !(gamma >= 0.0 && gamma <= kPi / 2)) {
    throw ConstraintError("ewl_J: gamma=" + shortest(gamma) + " outside [0, pi/2]");
  }
}

std::string GateLabel::name() const {
  switch (kind) {
    case GateKind::kIdentity: return "identity";
    case GateKind::kPauliX: return "pauli_x";
    case GateKind::kPauliY: return "pauli_y";
    case GateKind::kPauliZ: return "pauli_z";
    case GateKind::kHadamard: return "hadamard";
    case GateKind::kSDaggerHadamard: return "s_dagger_hadamard";
    case GateKind::kSu2:
      return "su2(" + shortest(params.theta) + "," + shortest(params.phi) + "," +
             shortest(params.chi) + ")";
    case GateKind::kEwlJ: return "ewl_J(" + shortest(gamma) + ")";
  }
  return "?";
}

namespace {

std::vector<double> parse_args(const std::string& text, std::size_t open) {
  if (text.back() != ')') throw ConstraintError("gate label '" + text + "': missing ')'");
  std::vector<double> args;
  const char* p = text.data() + open + 1;
  const char* end = text.data() + text.size() - 1;
  while (p < end) {
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) throw ConstraintError("gate label '" + text + "': bad number");
    args.push_back(v);
    p = next;
    if (p < end) {
      if (*p != ',') throw ConstraintError("gate label '" + text + "': expected ','");
      ++p;
    }
  }
  return args;
}

}  // namespace

GateLabel GateLabel::parse(const std::string& text) {
  if (text == "identity") return identity();
  if (text == "pauli_x") return pauli_x();
  if (text == "pauli_y") return pauli_y();
  if (text == "pauli_z") return pauli_z();
  if (text == "hadamard") return hadamard();
  if (text == "s_dagger_hadamard") return s_dagger_hadamard();
  const auto open = text.find('(');
  if (open != std::string::npos) {
    const std::string head = text.substr(0, open);
    const auto args = parse_args(text, open);
    GateLabel g;
    if (head == "su2" && args.size() == 3) {
      g = su2({args[0], args[1], args[2]});
    } else if (head == "ewl_J" && args.size() == 1) {
      g = ewl_j(args[0]);
    } else {
      throw ConstraintError("unknown gate label '" + text + "'");
    }
    g.validate();
    return g;
  }
  throw ConstraintError("unknown gate label '" + text + "'");
}

CMatrix named_gate(const GateLabel& g) {
  g.validate();
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::kIdentity: return CMatrix::identity(2);
    case GateKind::kPauliX: return CMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case GateKind::kPauliY: return CMatrix{{0.0, -kI}, {kI, 0.0}};
    case GateKind::kPauliZ: return CMatrix{{1.0, 0.0}, {0.0, -1.0}};
    case GateKind::kHadamard: return CMatrix{{r, r}, {r, -r}};
    case GateKind::kSDaggerHadamard: {
      const CMatrix h{{r, r}, {r, -r}};
      const CMatrix s_dagger{{1.0, 0.0}, {0.0, -kI}};
      return h * s_dagger;
    }
    case GateKind::kSu2: return su2(g.params);
    case GateKind::kEwlJ: {
      // (σy⊗σy)² = I, so the exponential is cos γ·I + i sin γ·σy⊗σy.
      const CMatrix y = named_gate(GateLabel::pauli_y());
      return CMatrix::identity(4) * std::cos(g.gamma) + kron(y, y) * (kI * std::sin(g.gamma));
    }
  }
  throw ConstraintError("unknown gate kind");
}

CMatrix basis_density(int num_qubits, std::size_t index) {
  return basis_projector(num_qubits, index);
}

CVector ghz_state(int num_qubits) {
  if (num_qubits < 2 || num_qubits > 5) {
    throw ConstraintError("ghz_state: n=" + std::to_string(num_qubits) + " outside [2, 5]");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  CVector v(dim);
  v[0] = v[dim - 1] = 1.0 / std::sqrt(2.0);
  return v;
}

CMatrix minority_rho_in() {
  std::vector<double> diag(16, 0.0);
  for (std::size_t y = 0; y < 16; ++y) {
    if (std::popcount(y) % 2 == 1) diag[y] = 1.0 / 8;
  }
  return CMatrix::diagonal(std::span<const double>(diag));
}

CVector fsslh_psi_in(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConstraintError("fsslh_psi_in: alpha=" + shortest(alpha) + " outside [0, 1]");
  }
  CVector v(16);
  v[0] = v[15] = alpha / std::sqrt(2.0);
  const double mixed = std::sqrt(1.0 - alpha * alpha) / 2;
  for (std::size_t idx : {0b0101u, 0b0110u, 0b1001u, 0b1010u}) v[idx] = mixed;
  return v;
}

CMatrix f09_rho(double eps1, double eps2) {
  if (!(eps1 >= 0.0)) throw ConstraintError("f09_rho: eps1 must be >= 0");
  if (!(eps2 >= 0.0)) throw ConstraintError("f09_rho: eps2 must be >= 0");
  if (!(eps1 + eps2 <= 1.0)) throw ConstraintError("f09_rho: eps1 + eps2 must be <= 1");
  if (!(std::abs(eps1 - eps2) > 0.0)) throw ConstraintError("f09_rho: requires |eps1 - eps2| > 0");
  const double even = (1.0 - (eps1 + eps2)) / 2;
  const std::vector<double> diag{even, eps1, eps2, even};
  return CMatrix::diagonal(std::span<const double>(diag));
}

CMatrix diagonal_mixture(std::span<const double> p) {
  const std::size_t dim = p.size();
  if (dim < 2 || dim > kMaxDim || std::popcount(dim) != 1) {
    throw DimensionError("diagonal_mixture: length must be a power of two in [2, 32]");
  }
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw ConstraintError("diagonal_mixture: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw ConstraintError("diagonal_mixture: probabilities sum to " + shortest(total));
  }
  return CMatrix::diagonal(p);
}

}  // namespace qgame
