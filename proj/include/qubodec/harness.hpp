#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qubodec/bp.hpp"
#include "qubodec/channel.hpp"
#include "qubodec/codes.hpp"
#include "qubodec/postprocess.hpp"
#include "qubodec/qubo.hpp"
#include "qubodec/samplers.hpp"

namespace qubodec {

/// Per-frame SNR source: a fixed list of dB points swept one after another,
/// or an independent Gaussian draw per frame (clamped below at floor_db).
struct SnrSchedule {
  enum class Kind { kFixed, kGaussian };
  Kind kind = Kind::kFixed;
  std::vector<double> points_db;
  double mu_db = 5.0;
  double sigma_db = 2.0;
  double floor_db = -5.0;
};

struct AdapterConfig {
  std::string command;  // shell template with {qubo} and {samples} placeholders
  double timeout_seconds = 60.0;
};

/// Everything a run needs; serializes to/from JSON so emitted CSVs can echo
/// the exact configuration and reruns reproduce rates bit for bit.
struct ExperimentConfig {
  std::string code_file;
  std::vector<std::string> decoders{"sa", "bp"};
  SnrSchedule snr;
  long trials = 10000;  // per SNR point (fixed) or total frames (gaussian)
  double w1 = 0.5;
  double w2 = 1.0;
  AnnealSchedule anneal{};
  int bp_max_iters = 50;
  int exhaustive_top_k = 0;
  AdapterConfig adapter;
  std::string message_source = "random";  // "random" | "zero"
  std::uint64_t master_seed = 1;
  int workers = 1;

  void validate() const;  // throws std::invalid_argument with a reason
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::string& path);
};

/// Parsed code plus everything derived from it once per run.
struct CodeContext {
  ParityCheckMatrix h;
  GeneratorMatrix g;
  Qubo constraint;  // parity penalty with ancillas, shared by all trials
};
CodeContext load_code(const std::string& path);

/// 95% confidence interval for a binomial proportion.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval wilson_interval(long successes, long trials, double z = 1.959963984540054);

/// One (snr point, decoder) aggregate of a fixed-SNR sweep.
struct RateCell {
  double snr_db = 0.0;
  std::string decoder;
  long trials = 0;
  long bit_errors = 0;
  long frame_errors = 0;
  long fallbacks = 0;
  double ber = 0.0;
  double fer = 0.0;
  Interval ber_ci;
  Interval fer_ci;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<RateCell> cells;  // point-major, decoders in config order
};

/// Per-decoder aggregate of a time-varying-SNR run.
struct TvCell {
  std::string decoder;
  long frames = 0;
  long correct = 0;
  long fallbacks = 0;
  double fraction = 0.0;  // fraction of frames decoded exactly
  Interval fraction_ci;
};

/// Per-frame realization (the Fig.-3-style record).
struct TvFrame {
  long frame = 0;
  double snr_db = 0.0;
  std::vector<uint8_t> correct;  // aligned with TvResult::cells
};

struct TvResult {
  ExperimentConfig config;
  std::vector<TvCell> cells;
  std::vector<TvFrame> frames;
};

/// A decoding strategy as the harness sees it: one ReceivedVector in, one
/// DecodeResult out. Implementations own their per-worker state.
class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual std::string name() const = 0;
  virtual DecodeResult decode_one(const ReceivedVector& r, std::mt19937_64& rng) = 0;
};

/// Known names: "sa", "bp", "exhaustive", "external". The exhaustive decoder
/// solves the composed QUBO by brute force when it fits the sampler's
/// variable limit and otherwise performs exact maximum-likelihood decoding
/// over the codebook, which selects the same codeword whenever every valid
/// codeword is reachable. Throws std::invalid_argument for unknown names.
std::unique_ptr<Decoder> make_decoder(const std::string& name, const CodeContext& ctx,
                                      const ExperimentConfig& cfg);

/// Deterministic per-trial channel draw. Both the random message and the
/// noise come from a stream keyed by (master_seed, point_index, trial_index)
/// only — independent of the decoder set, worker count, and trial execution
/// order — so every decoder sees the same bytes. `zero_message` replaces the
/// random message with the all-zero one (same noise stream).
ReceivedVector draw_trial(const GeneratorMatrix& g, double snr_db, std::uint64_t master_seed,
                          int point_index, long trial_index, bool zero_message,
                          BitVec* codeword_out);

/// Seed for the decoder-private stream of one trial. Keyed by the decoder
/// NAME, so adding or removing other decoders never shifts anyone's stream.
std::uint64_t decoder_stream_seed(std::uint64_t master_seed, int point_index,
                                  long trial_index, const std::string& decoder_name);

using ProgressFn = std::function<void(long done, long total)>;

SweepResult run_fixed_snr(const ExperimentConfig& cfg, const ProgressFn& progress = {});
TvResult run_time_varying(const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// The per-frame SNR draws a time-varying run will use (clamped at the
/// floor): exposed so results can be analyzed against their realizations.
std::vector<double> tv_snr_draws(const ExperimentConfig& cfg);

/// CSV emission. No timestamps anywhere: two runs with the same config and
/// seed produce byte-identical files. The first line echoes the config as
/// `# config <json>` so a run can be reproduced from its output alone.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_tv_csv(const TvResult& result, std::ostream& out);
void write_tv_frames_csv(const TvResult& result, std::ostream& out);

/// Parses a sweep CSV back (config echo + all rate cells); inverse of
/// write_sweep_csv for round-trip checks and reruns.
SweepResult read_sweep_csv(std::istream& in);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace qubodec
