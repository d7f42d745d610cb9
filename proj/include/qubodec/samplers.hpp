#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qubodec/qubo.hpp"

namespace qubodec {

/// Single-flip Metropolis schedule: geometric inverse-temperature ladder from
/// beta_initial to beta_final across num_sweeps full passes, repeated for
/// num_reads independent restarts.
struct AnnealSchedule {
  double beta_initial = 0.1;
  double beta_final = 10.0;
  int num_sweeps = 1000;
  int num_reads = 100;

  /// Throws std::invalid_argument unless 0 < beta_initial < beta_final,
  /// num_sweeps >= 1 and num_reads >= 1.
  void validate() const;
};

/// One distinct assignment with its (locally recomputed) energy and the
/// number of reads that produced it.
struct Sample {
  BitVec bits;
  double energy = 0.0;
  int count = 1;
};

/// Provenance attached to a SampleSet so results are self-describing.
struct SamplerMeta {
  std::string sampler;
  AnnealSchedule schedule{};
  std::uint64_t seed = 0;
};

/// Result of one sampler invocation. Samples are distinct, sorted ascending
/// by (energy, lexicographic bits), energies recomputed via energy() so they
/// are trustworthy regardless of where the assignments came from.
struct SampleSet {
  std::vector<Sample> samples;
  SamplerMeta meta;

  bool empty() const noexcept { return samples.empty(); }
  /// Lowest-energy sample. Precondition: not empty.
  const Sample& best() const { return samples.front(); }
};

/// Deduplicates raw assignments (summing multiplicities), recomputes every
/// energy against `q`, and sorts by (energy, lexicographic bits). All
/// samplers funnel through this so SampleSet invariants hold by construction.
SampleSet assemble_samples(const std::vector<BitVec>& assignments, const Qubo& q,
                           SamplerMeta meta);

/// Simulated annealing. Each read is an independent Metropolis chain from a
/// random initial assignment, walking the geometric beta ladder and visiting
/// variables in index order; the final state of each read is recorded.
/// Consumes exactly one value from `rng` (the master seed); read r then runs
/// on its own stream derived from (master, r), so the first m reads of a
/// larger run reproduce an m-read run bit for bit.
SampleSet sample_sa(const Qubo& q, const AnnealSchedule& sched, std::mt19937_64& rng);

/// Brute-force oracle: evaluates all 2^num_vars assignments (Gray-code order,
/// incremental deltas) and returns the full ranked set, or only the top_k
/// lowest-energy assignments when top_k > 0. Throws std::invalid_argument
/// when num_vars exceeds 24.
SampleSet sample_exhaustive(const Qubo& q, int top_k = 0);
constexpr int kExhaustiveMaxVars = 24;

/// An adapter failed to honor the sampler contract (bad exit status, timeout,
/// malformed or wrong-length samples).
class AdapterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Anything that turns a Qubo into a SampleSet. `rng` seeds whatever
/// stochastic behavior the implementation has; deterministic samplers may
/// ignore it.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  virtual SampleSet sample(const Qubo& q, std::mt19937_64& rng) = 0;
};

class SaSampler : public Sampler {
 public:
  explicit SaSampler(AnnealSchedule sched) : sched_(sched) { sched_.validate(); }
  std::string name() const override { return "sa"; }
  SampleSet sample(const Qubo& q, std::mt19937_64& rng) override {
    return sample_sa(q, sched_, rng);
  }

 private:
  AnnealSchedule sched_;
};

class ExhaustiveSampler : public Sampler {
 public:
  explicit ExhaustiveSampler(int top_k = 0) : top_k_(top_k) {}
  std::string name() const override { return "exhaustive"; }
  SampleSet sample(const Qubo& q, std::mt19937_64&) override {
    return sample_exhaustive(q, top_k_);
  }

 private:
  int top_k_;
};

/// Shells out to an external sampler: writes the Qubo in the sparse text
/// format, substitutes {qubo} and {samples} into the command template, runs
/// it (wrapped in `timeout` when timeout_seconds > 0), and reads the sample
/// file back. Energies are recomputed locally; assignments of the wrong
/// length raise AdapterError.
class ExternalSampler : public Sampler {
 public:
  /// Throws std::invalid_argument if the template lacks either placeholder.
  ExternalSampler(std::string command_template, double timeout_seconds = 60.0);
  std::string name() const override { return "external"; }
  SampleSet sample(const Qubo& q, std::mt19937_64& rng) override;

 private:
  std::string command_template_;
  double timeout_seconds_;
};

/// Construction knobs shared by the built-in samplers; a registry factory
/// picks what it needs.
struct SamplerOptions {
  AnnealSchedule schedule{};
  int exhaustive_top_k = 0;
  std::string adapter_command;
  double adapter_timeout_seconds = 60.0;
};

/// Name → factory table. "sa", "exhaustive" and "external" are pre-registered;
/// tests and downstream code may add their own.
class SamplerRegistry {
 public:
  using Factory = std::function<std::unique_ptr<Sampler>(const SamplerOptions&)>;

  static SamplerRegistry& instance();

  void register_sampler(const std::string& name, Factory factory);
  /// Throws std::out_of_range for unknown names.
  std::unique_ptr<Sampler> create(const std::string& name, const SamplerOptions& opts) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  SamplerRegistry();
  std::vector<std::pair<std::string, Factory>> factories_;
};

/// Sample file format: one line per sample, "<bits> <count>" with bits as a
/// 0/1 string; '#' starts a comment line. Counts are optional on input
/// (default 1). Energies never travel through this format.
void write_sample_file(const SampleSet& set, std::ostream& out);
std::vector<std::pair<BitVec, int>> read_sample_file(std::istream& in);

}  // namespace qubodec
