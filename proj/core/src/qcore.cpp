#include "ccc/qcore.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ccc {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<std::string> default_labels(int n_qubits) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    labels.push_back("q" + std::to_string(q));
  }
  return labels;
}

void check_qubit(const StateVector& state, int qubit, const char* who) {
  if (qubit < 0 || qubit >= state.n_qubits()) {
    throw std::out_of_range(std::string(who) + ": qubit index out of range");
  }
}

// Bell amplitudes over (b_i, b_j) in order 00, 01, 10, 11.
const std::array<Amplitude, 4>& bell_coeffs(BellIndex m) {
  static const std::array<std::array<Amplitude, 4>, 4> kTable = {{
      {{kInvSqrt2, 0.0, 0.0, kInvSqrt2}},
      {{0.0, kInvSqrt2, kInvSqrt2, 0.0}},
      {{kInvSqrt2, 0.0, 0.0, -kInvSqrt2}},
      {{0.0, kInvSqrt2, -kInvSqrt2, 0.0}},
  }};
  return kTable[static_cast<std::size_t>(m.value())];
}

StateVector renormalized(int n_qubits, std::vector<Amplitude> amps,
                         std::vector<std::string> labels, double norm_sq) {
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  return StateVector(n_qubits, std::move(amps), std::move(labels));
}

}  // namespace

BellIndex::BellIndex(int value) : value_(value) {
  if (value < 0 || value > 3) {
    throw std::out_of_range("BellIndex must be in 0..3, got " +
                            std::to_string(value));
  }
}

BasisAngle::BasisAngle(double radians) : radians_(radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("BasisAngle must be finite");
  }
}

double BasisAngle::canonical() const {
  const double pi = std::numbers::pi;
  double r = std::fmod(radians_, pi);
  if (r < 0.0) r += pi;
  return r;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : StateVector(n_qubits, std::move(amplitudes), default_labels(n_qubits)) {}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes,
                         std::vector<std::string> labels)
    : n_qubits_(n_qubits),
      amplitudes_(std::move(amplitudes)),
      labels_(std::move(labels)) {
  if (n_qubits_ < 1) {
    throw std::invalid_argument("StateVector needs at least one qubit");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
    throw std::invalid_argument("StateVector amplitude count must be 2^n");
  }
  if (labels_.size() != static_cast<std::size_t>(n_qubits_)) {
    throw std::invalid_argument("StateVector needs one label per qubit");
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("StateVector amplitudes must be finite");
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTol) {
    throw std::invalid_argument("StateVector is not normalized");
  }
}

int StateVector::bit(std::size_t index, int qubit) const {
  return static_cast<int>((index >> (n_qubits_ - 1 - qubit)) & 1u);
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

StateVector bell_state(BellIndex index) {
  const auto& c = bell_coeffs(index);
  return StateVector(2, {c[0], c[1], c[2], c[3]});
}

StateVector basis_state(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || index >= (std::size_t{1} << n_qubits)) {
    throw std::out_of_range("basis_state: index out of range");
  }
  std::vector<Amplitude> amps(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps[index] = Amplitude{1.0, 0.0};
  return StateVector(n_qubits, std::move(amps));
}

StateVector tensor(const StateVector& left, const StateVector& right) {
  if (std::abs(left.norm_squared() - 1.0) > kNormTol ||
      std::abs(right.norm_squared() - 1.0) > kNormTol) {
    throw std::invalid_argument("tensor: unnormalized input");
  }
  const std::size_t dim_r = right.dim();
  std::vector<Amplitude> amps(left.dim() * dim_r);
  for (std::size_t i = 0; i < left.dim(); ++i) {
    for (std::size_t j = 0; j < dim_r; ++j) {
      amps[i * dim_r + j] = left.amplitude(i) * right.amplitude(j);
    }
  }
  std::vector<std::string> labels = left.labels();
  labels.insert(labels.end(), right.labels().begin(), right.labels().end());
  return StateVector(left.n_qubits() + right.n_qubits(), std::move(amps),
                     std::move(labels));
}

MeasurementSplit measure_distribution(const StateVector& state, int qubit,
                                      BasisAngle basis) {
  check_qubit(state, qubit, "measure_distribution");

  const double c = std::cos(basis.radians());
  const double s = std::sin(basis.radians());
  const std::size_t dim = state.dim();
  const std::size_t mask = std::size_t{1} << (state.n_qubits() - 1 - qubit);

  std::vector<Amplitude> raw0(dim, Amplitude{0.0, 0.0});
  std::vector<Amplitude> raw1(dim, Amplitude{0.0, 0.0});
  double p0 = 0.0;
  double p1 = 0.0;

  for (std::size_t k = 0; k < dim; ++k) {
    if (k & mask) continue;  // visit each (0,1) pair once, via its 0 member
    const Amplitude a0 = state.amplitude(k);
    const Amplitude a1 = state.amplitude(k | mask);
    const Amplitude along0 = c * a0 + s * a1;
    const Amplitude along1 = -s * a0 + c * a1;
    p0 += std::norm(along0);
    p1 += std::norm(along1);
    raw0[k] = c * along0;
    raw0[k | mask] = s * along0;
    raw1[k] = -s * along1;
    raw1[k | mask] = c * along1;
  }

  MeasurementSplit split;
  split.p0 = p0;
  split.p1 = p1;
  if (p0 > kZeroWeight) {
    split.post0 = renormalized(state.n_qubits(), std::move(raw0),
                               state.labels(), p0);
  }
  if (p1 > kZeroWeight) {
    split.post1 = renormalized(state.n_qubits(), std::move(raw1),
                               state.labels(), p1);
  }
  return split;
}

SampledMeasurement sample_measurement(const StateVector& state, int qubit,
                                      BasisAngle basis, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::out_of_range("sample_measurement: u must lie in [0,1)");
  }
  MeasurementSplit split = measure_distribution(state, qubit, basis);
  if (u < split.p0) {
    return SampledMeasurement{0, std::move(*split.post0)};
  }
  return SampledMeasurement{1, std::move(*split.post1)};
}

const StateVector& BellProjection::post_or_throw() const {
  if (!post) {
    throw ZeroProbabilityError(
        "bell_project: projection onto a zero-probability Bell outcome");
  }
  return *post;
}

BellProjection bell_project(const StateVector& state, int qubit_i, int qubit_j,
                            BellIndex m) {
  check_qubit(state, qubit_i, "bell_project");
  check_qubit(state, qubit_j, "bell_project");
  if (qubit_i == qubit_j) {
    throw std::invalid_argument("bell_project: qubits must differ");
  }

  const auto& coeff = bell_coeffs(m);
  const std::size_t dim = state.dim();
  const int n = state.n_qubits();
  const std::size_t mask_i = std::size_t{1} << (n - 1 - qubit_i);
  const std::size_t mask_j = std::size_t{1} << (n - 1 - qubit_j);

  std::vector<Amplitude> raw(dim, Amplitude{0.0, 0.0});
  double weight = 0.0;

  for (std::size_t k = 0; k < dim; ++k) {
    if ((k & mask_i) || (k & mask_j)) continue;  // rest pattern representative
    const std::size_t k00 = k;
    const std::size_t k01 = k | mask_j;
    const std::size_t k10 = k | mask_i;
    const std::size_t k11 = k | mask_i | mask_j;
    const Amplitude overlap = std::conj(coeff[0]) * state.amplitude(k00) +
                              std::conj(coeff[1]) * state.amplitude(k01) +
                              std::conj(coeff[2]) * state.amplitude(k10) +
                              std::conj(coeff[3]) * state.amplitude(k11);
    weight += std::norm(overlap);
    raw[k00] = coeff[0] * overlap;
    raw[k01] = coeff[1] * overlap;
    raw[k10] = coeff[2] * overlap;
    raw[k11] = coeff[3] * overlap;
  }

  BellProjection projection;
  projection.weight = weight;
  if (weight > kZeroWeight) {
    projection.post =
        renormalized(n, std::move(raw), state.labels(), weight);
  }
  return projection;
}

}  // namespace ccc
