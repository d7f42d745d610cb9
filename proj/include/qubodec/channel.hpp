#pragma once

#include <iosfwd>
#include <random>
#include <vector>

#include "qubodec/codes.hpp"

namespace qubodec {

/// SNR convention used throughout: snr_db = 10·log10(Es/σ²) with per-symbol
/// energy Es = 1 and σ² the per-sample noise variance.
double snr_to_sigma(double snr_db);

struct ChannelConfig {
  double snr_db = 0.0;
  double sigma = 1.0;  // noise standard deviation per real dimension
  uint64_t seed = 0;

  static ChannelConfig from_snr_db(double snr_db, uint64_t seed = 0);
};

/// BPSK map: bit 0 → +1, bit 1 → −1.
inline double bpsk(uint8_t bit) { return bit ? -1.0 : 1.0; }

/// Sign slicer, the inverse of the BPSK map: r ≥ 0 → 0, r < 0 → 1.
BitVec hard_decision(const std::vector<double>& samples);

/// Pr(bit = 1 | r) = 1 / (1 + exp(2r/σ²)) for BPSK over AWGN, evaluated in a
/// form that cannot overflow; the result is clamped into the open unit
/// interval so downstream consumers can rely on p ∈ (0,1).
double posterior(double r, double sigma);

struct ReceivedVector {
  std::vector<double> samples;     // BPSK(c) + noise
  std::vector<double> posteriors;  // posterior(samples[i], sigma), cached
  double sigma = 1.0;
  double snr_db = 0.0;
};

/// BPSK-modulate, add white Gaussian noise of std `cfg.sigma`, and cache the
/// per-bit posteriors. Deterministic for a given rng state.
ReceivedVector transmit(const BitVec& codeword, const ChannelConfig& cfg, std::mt19937_64& rng);

/// Wrap raw channel samples (e.g. read from a file) with posteriors attached.
ReceivedVector received_from_samples(std::vector<double> samples, double sigma, double snr_db);

void write_received_csv(const ReceivedVector& r, std::ostream& out);

/// Reads one real value per line; commas and whitespace both separate values.
std::vector<double> read_sample_values(std::istream& in);

}  // namespace qubodec
