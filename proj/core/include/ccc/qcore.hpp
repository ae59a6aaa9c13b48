// Exact state-vector quantum mechanics for small qubit registers:
// Bell states, rotated-basis single-qubit measurements, and Bell-basis
// projections of a qubit pair, all with exact outcome distributions.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ccc/common.hpp"

namespace ccc {

using Amplitude = std::complex<double>;

// One of the four maximally entangled two-qubit states. The convention is
// pinned project-wide; every outcome label 0..3 at a Bell-basis measurement
// or preparation refers to it:
//   0 <-> (|00> + |11>)/sqrt2        2 <-> (|00> - |11>)/sqrt2
//   1 <-> (|01> + |10>)/sqrt2        3 <-> (|01> - |10>)/sqrt2
// Which physical Bell state carries which label is a modelling choice; this
// assignment makes a pair of index-0 sources swap into an index-m outer pair
// under an index-m inner projection with no relabeling.
class BellIndex {
 public:
  explicit BellIndex(int value);
  int value() const { return value_; }

  friend bool operator==(const BellIndex&, const BellIndex&) = default;

 private:
  int value_;
};

// Measurement basis {cos t|0> + sin t|1>, -sin t|0> + cos t|1>}; radians.
// Any finite angle is accepted; canonical() reduces modulo pi, which
// identifies bases equal up to phase and label order.
class BasisAngle {
 public:
  explicit BasisAngle(double radians);
  double radians() const { return radians_; }
  double canonical() const;

 private:
  double radians_;
};

// Normalized amplitude vector over labeled qubits. Qubit 0 is the leftmost
// label and the most significant index bit (big-endian), so for two qubits
// the amplitude order is |00>, |01>, |10>, |11>.
class StateVector {
 public:
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes);
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes,
              std::vector<std::string> labels);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
  const Amplitude& amplitude(std::size_t index) const { return amplitudes_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Bit of `qubit` within basis index `index` under the big-endian convention.
  int bit(std::size_t index, int qubit) const;

  double norm_squared() const;

 private:
  int n_qubits_;
  std::vector<Amplitude> amplitudes_;
  std::vector<std::string> labels_;
};

StateVector bell_state(BellIndex index);
StateVector basis_state(int n_qubits, std::size_t index);

// Kronecker product; label order is left labels then right labels.
StateVector tensor(const StateVector& left, const StateVector& right);

// Both branches of a single-qubit measurement in a rotated basis.
// A branch's post state is absent when its probability is below kZeroWeight;
// otherwise it is renormalized, with the measured qubit collapsed onto the
// corresponding basis vector.
struct MeasurementSplit {
  double p0 = 0.0;
  double p1 = 0.0;
  std::optional<StateVector> post0;
  std::optional<StateVector> post1;
};

MeasurementSplit measure_distribution(const StateVector& state, int qubit,
                                      BasisAngle basis);

struct SampledMeasurement {
  int bit;
  StateVector post;
};

// Threshold rule: outcome 0 iff u < p0. Deterministic in (state, qubit,
// basis, u); u must lie in [0, 1).
SampledMeasurement sample_measurement(const StateVector& state, int qubit,
                                      BasisAngle basis, double u);

// Projection of the (qubit_i, qubit_j) pair onto Bell state m.
// weight is the squared norm of the projected component; post is the
// renormalized projected state, absent when weight < kZeroWeight.
// Over m = 0..3 the weights sum to 1.
struct BellProjection {
  double weight = 0.0;
  std::optional<StateVector> post;

  // Throws ZeroProbabilityError when the projection weight vanished.
  const StateVector& post_or_throw() const;
};

BellProjection bell_project(const StateVector& state, int qubit_i, int qubit_j,
                            BellIndex m);

}  // namespace ccc
