// Built-in causal models: the Ivy College admission collider and the
// classical rejection-sampling toy that reproduces the postselected wing
// statistics of the W experiment.

#pragma once

#include "ccc/causal.hpp"
#include "ccc/qcore.hpp"

namespace ccc {

// Three binary nodes: academic and athletic are independent fair coins,
// admitted = academic OR athletic ("either excellence, not requiring both").
// The -0.5 conditional correlation downstream of that choice is
// model-dependent: OR with fair priors is the minimal faithful reading.
DiscreteScm ivy_scm();

// Classical toy for the W wings at settings (a, b), with
// Q = run_v_exact(prep 0, a, b):
//
// unconstrained (constrained = false):
//   A, B            independent fair bits
//   Mhat            in {accept, reject}; P(accept | A,B) = Q(A,B) / max Q
// Conditioning on Mhat = accept recovers Q exactly (rejection sampling).
//
// constrained (constrained = true):
//   AB              joint cell in {00,01,10,11} drawn from Q by inverse-CDF
//                   on a single exogenous U, cell order 00,01,10,11
//   A, B            the two bits of AB
//   Mhat            accept with probability 1
// This is the direct-sampling form of the boundary-constrained experiment;
// its fixed-noise coupling is what the flip-rate counterfactuals probe.
// For classification queries, the constrained situation is the clamped
// unconstrained model: clamp(toy_dces(a, b, false), {"Mhat", "accept"}).
DiscreteScm toy_dces(BasisAngle a, BasisAngle b, bool constrained);

inline constexpr const char* kToyAccept = "accept";
inline constexpr const char* kToyAcceptNode = "Mhat";

}  // namespace ccc
