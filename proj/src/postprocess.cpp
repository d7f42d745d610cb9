#include "qubodec/postprocess.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

namespace qubodec {

std::string selection_name(Selection s) {
  switch (s) {
    case Selection::kMinDistance: return "min-distance";
    case Selection::kEnergyFallback: return "lowest-energy-fallback";
    case Selection::kHardDecision: return "hard-decision";
  }
  return "unknown";
}

double euclidean_distance(const BitVec& bits, const std::vector<double>& samples) {
  if (bits.size() != samples.size())
    throw std::invalid_argument("bit/sample length mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double d = bpsk(bits[i]) - samples[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

std::vector<ValidCandidate> filter_valid(const SampleSet& samples,
                                         const ParityCheckMatrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.cols());
  std::vector<ValidCandidate> out;
  std::set<BitVec> seen;
  for (const Sample& s : samples.samples) {
    if (s.bits.size() < n)
      throw std::invalid_argument("sample shorter than the codeword length");
    BitVec projection(s.bits.begin(), s.bits.begin() + n);
    if (!is_codeword(projection, h)) continue;
    if (!seen.insert(projection).second) continue;
    out.push_back({std::move(projection), s.energy});
  }
  return out;
}

DecodeResult select_min_distance(const std::vector<ValidCandidate>& candidates,
                                 const ReceivedVector& r) {
  if (candidates.empty())
    throw std::invalid_argument("no candidates to select from");

  const ValidCandidate* best = nullptr;
  double best_sq = std::numeric_limits<double>::infinity();
  for (const ValidCandidate& c : candidates) {
    double sq = 0.0;
    for (std::size_t i = 0; i < c.bits.size(); ++i) {
      const double d = bpsk(c.bits[i]) - r.samples[i];
      sq += d * d;
    }
    const bool wins = best == nullptr || sq < best_sq ||
                      (sq == best_sq && (c.energy < best->energy ||
                                         (c.energy == best->energy && c.bits < best->bits)));
    if (wins) {
      best = &c;
      best_sq = sq;
    }
  }

  DecodeResult result;
  result.bits = best->bits;
  result.valid = true;
  result.selection = Selection::kMinDistance;
  result.distance = std::sqrt(best_sq);
  result.energy = best->energy;
  result.candidates_considered = static_cast<int>(candidates.size());
  return result;
}

DecodeResult decode(const SampleSet& samples, const ReceivedVector& r,
                    const ParityCheckMatrix& h) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");

  const auto candidates = filter_valid(samples, h);
  if (!candidates.empty()) return select_min_distance(candidates, r);

  const Sample& fallback = samples.best();
  DecodeResult result;
  result.bits.assign(fallback.bits.begin(), fallback.bits.begin() + h.cols());
  result.valid = false;
  result.selection = Selection::kEnergyFallback;
  result.distance = euclidean_distance(result.bits, r.samples);
  result.energy = fallback.energy;
  result.candidates_considered = 0;
  return result;
}

DecodeResult ml_decode(const ReceivedVector& r, const GeneratorMatrix& g) {
  const int n = g.n();
  const int k = g.k();
  if (static_cast<int>(r.samples.size()) != n)
    throw std::invalid_argument("received vector length does not match the code");
  if (k > 30) throw std::invalid_argument("ml_decode limited to k <= 30");

  // Row supports of G; flipping message bit t XORs row t into the codeword.
  std::vector<std::vector<int>> support(k);
  for (int t = 0; t < k; ++t)
    for (int i = 0; i < n; ++i)
      if (g.row(t)[i]) support[t].push_back(i);

  // Minimizing Σ(BPSK(c_i) − r_i)² is maximizing the correlation Σ BPSK(c_i)·r_i.
  BitVec codeword(n, 0);
  double corr = 0.0;
  for (int i = 0; i < n; ++i) corr += r.samples[i];

  BitVec best_codeword = codeword;
  double best_corr = corr;
  const std::uint64_t total = 1ULL << k;
  for (std::uint64_t gray = 1; gray < total; ++gray) {
    const int t = std::countr_zero(gray);
    for (int i : support[t]) {
      corr -= 2.0 * bpsk(codeword[i]) * r.samples[i];
      codeword[i] ^= 1u;
    }
    if (corr > best_corr || (corr == best_corr && codeword < best_codeword)) {
      best_corr = corr;
      best_codeword = codeword;
    }
  }

  DecodeResult result;
  result.bits = std::move(best_codeword);
  result.valid = true;
  result.selection = Selection::kMinDistance;
  result.distance = euclidean_distance(result.bits, r.samples);
  result.energy = std::numeric_limits<double>::quiet_NaN();
  result.candidates_considered = static_cast<int>(total);
  return result;
}

}  // namespace qubodec
