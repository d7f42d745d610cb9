#pragma once

#include <string>
#include <vector>

#include "qubodec/channel.hpp"
#include "qubodec/codes.hpp"
#include "qubodec/samplers.hpp"

namespace qubodec {

/// How the returned bits were chosen.
enum class Selection {
  kMinDistance,     // argmin Euclidean distance among valid codeword candidates
  kEnergyFallback,  // no valid candidate; lowest-energy sample projection
  kHardDecision,    // per-bit decision (belief propagation output)
};

std::string selection_name(Selection s);

struct DecodeResult {
  BitVec bits;
  bool valid = false;  // true iff syndrome(bits) = 0
  Selection selection = Selection::kEnergyFallback;
  double distance = 0.0;  // Euclidean distance between BPSK(bits) and r
  double energy = 0.0;    // QUBO energy of the winning sample; NaN when no QUBO was involved
  int candidates_considered = 0;  // valid candidates that entered the distance competition
  int iterations = 0;             // message-passing iterations (BP only)
};

/// Euclidean distance between the BPSK modulation of `bits` and the raw
/// channel samples.
double euclidean_distance(const BitVec& bits, const std::vector<double>& samples);

/// A codeword projection that survived the syndrome test, tagged with the
/// energy of the (lowest-energy) sample it came from.
struct ValidCandidate {
  BitVec bits;
  double energy = 0.0;
};

/// Slices the first H.cols() bits off every sample (dropping ancillas),
/// keeps the distinct projections whose syndrome is zero, and preserves the
/// sample set's ascending-energy order (first occurrence wins).
std::vector<ValidCandidate> filter_valid(const SampleSet& samples, const ParityCheckMatrix& h);

/// Returns the candidate closest to r in Euclidean distance; ties broken by
/// lower energy, then lexicographically smaller bits. Throws
/// std::invalid_argument on an empty list.
DecodeResult select_min_distance(const std::vector<ValidCandidate>& candidates,
                                 const ReceivedVector& r);

/// Full post-processing chain: filter_valid, then select_min_distance. When
/// no valid candidate exists, returns the lowest-energy sample's codeword
/// projection with selection = kEnergyFallback and valid = false. Throws
/// std::invalid_argument on an empty SampleSet.
DecodeResult decode(const SampleSet& samples, const ReceivedVector& r,
                    const ParityCheckMatrix& h);

/// Exact maximum-likelihood decoding: minimizes the Euclidean distance to r
/// over all 2^k codewords spanned by G (Gray-code walk, O(2^k · row weight)).
/// Serves as the "exhaustive" decoder for codes whose QUBO exceeds the
/// brute-force sampler's variable limit.
DecodeResult ml_decode(const ReceivedVector& r, const GeneratorMatrix& g);

}  // namespace qubodec
