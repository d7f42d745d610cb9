#pragma once

#include <vector>

#include "qubodec/channel.hpp"
#include "qubodec/codes.hpp"
#include "qubodec/postprocess.hpp"

namespace qubodec {

/// Messages live on Tanner-graph edges, clipped to ±kLlrClip so atanh stays
/// finite.
inline constexpr double kLlrClip = 30.0;

/// Per-bit channel log-likelihood ratios 2·r_i/σ² (positive favors bit 0
/// under the BPSK convention used here).
std::vector<double> channel_llrs(const ReceivedVector& r);

/// Sum-product belief propagation in the LLR domain with a flooding schedule:
/// variable-to-check messages are channel LLR plus extrinsic sums,
/// check-to-variable messages use the tanh product rule, and the hard
/// decision is re-checked against the syndrome each iteration for early exit.
/// Deterministic. The result's `iterations` field records the number of
/// iterations actually run; `valid` reflects the final syndrome.
DecodeResult bp_decode(const ReceivedVector& r, const ParityCheckMatrix& h,
                       int max_iters = 50);

}  // namespace qubodec
