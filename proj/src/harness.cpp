#include "qubodec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qubodec/rng.hpp"

namespace qubodec {

namespace {

// Stream tags keep the channel, decoder, and SNR-schedule streams disjoint
// for every master seed.
constexpr std::uint64_t kChannelTag = 0x6368616e6e656cULL;
constexpr std::uint64_t kDecoderTag = 0xdec0deULL;
constexpr std::uint64_t kSnrScheduleTag = 0x7476736e72ULL;

const std::vector<std::string>& known_decoders() {
  static const std::vector<std::string> names{"sa", "bp", "exhaustive", "external"};
  return names;
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; }))
      throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (code_file.empty()) throw std::invalid_argument("code_file is required");
  if (decoders.empty()) throw std::invalid_argument("at least one decoder is required");
  for (const auto& name : decoders) {
    const auto& known = known_decoders();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw std::invalid_argument("unknown decoder '" + name + "'");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw std::invalid_argument("w1 and w2 must be positive");
  anneal.validate();
  if (bp_max_iters < 1) throw std::invalid_argument("bp_max_iters must be >= 1");
  if (exhaustive_top_k < 0) throw std::invalid_argument("exhaustive_top_k must be >= 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (message_source != "random" && message_source != "zero")
    throw std::invalid_argument("message_source must be 'random' or 'zero'");
  if (snr.kind == SnrSchedule::Kind::kFixed) {
    if (snr.points_db.empty()) throw std::invalid_argument("fixed schedule needs points_db");
  } else {
    if (!(snr.sigma_db >= 0.0)) throw std::invalid_argument("snr sigma_db must be >= 0");
  }
  const bool uses_external =
      std::find(decoders.begin(), decoders.end(), "external") != decoders.end();
  if (uses_external && adapter.command.empty())
    throw std::invalid_argument("the external decoder needs adapter.command");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["code_file"] = code_file;
  j["decoders"] = decoders;
  if (snr.kind == SnrSchedule::Kind::kFixed) {
    j["snr"] = {{"type", "fixed"}, {"points_db", snr.points_db}};
  } else {
    j["snr"] = {{"type", "gaussian"},
                {"mu_db", snr.mu_db},
                {"sigma_db", snr.sigma_db},
                {"floor_db", snr.floor_db}};
  }
  j["trials"] = trials;
  j["w1"] = w1;
  j["w2"] = w2;
  j["anneal"] = {{"beta_initial", anneal.beta_initial},
                 {"beta_final", anneal.beta_final},
                 {"num_sweeps", anneal.num_sweeps},
                 {"num_reads", anneal.num_reads}};
  j["bp_max_iters"] = bp_max_iters;
  j["exhaustive_top_k"] = exhaustive_top_k;
  j["adapter"] = {{"command", adapter.command}, {"timeout_seconds", adapter.timeout_seconds}};
  j["message_source"] = message_source;
  j["master_seed"] = master_seed;
  j["workers"] = workers;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  check_keys(j,
             {"code_file", "decoders", "snr", "trials", "w1", "w2", "anneal", "bp_max_iters",
              "exhaustive_top_k", "adapter", "message_source", "master_seed", "workers"},
             "config");
  ExperimentConfig cfg;
  cfg.code_file = j.value("code_file", cfg.code_file);
  if (j.contains("decoders")) cfg.decoders = j.at("decoders").get<std::vector<std::string>>();
  if (j.contains("snr")) {
    const auto& s = j.at("snr");
    check_keys(s, {"type", "points_db", "mu_db", "sigma_db", "floor_db"}, "snr");
    const std::string type = s.value("type", "fixed");
    if (type == "fixed") {
      cfg.snr.kind = SnrSchedule::Kind::kFixed;
      cfg.snr.points_db = s.value("points_db", std::vector<double>{});
    } else if (type == "gaussian") {
      cfg.snr.kind = SnrSchedule::Kind::kGaussian;
      cfg.snr.mu_db = s.value("mu_db", cfg.snr.mu_db);
      cfg.snr.sigma_db = s.value("sigma_db", cfg.snr.sigma_db);
      cfg.snr.floor_db = s.value("floor_db", cfg.snr.floor_db);
    } else {
      throw std::invalid_argument("snr.type must be 'fixed' or 'gaussian'");
    }
  }
  cfg.trials = j.value("trials", cfg.trials);
  cfg.w1 = j.value("w1", cfg.w1);
  cfg.w2 = j.value("w2", cfg.w2);
  if (j.contains("anneal")) {
    const auto& a = j.at("anneal");
    check_keys(a, {"beta_initial", "beta_final", "num_sweeps", "num_reads"}, "anneal");
    cfg.anneal.beta_initial = a.value("beta_initial", cfg.anneal.beta_initial);
    cfg.anneal.beta_final = a.value("beta_final", cfg.anneal.beta_final);
    cfg.anneal.num_sweeps = a.value("num_sweeps", cfg.anneal.num_sweeps);
    cfg.anneal.num_reads = a.value("num_reads", cfg.anneal.num_reads);
  }
  cfg.bp_max_iters = j.value("bp_max_iters", cfg.bp_max_iters);
  cfg.exhaustive_top_k = j.value("exhaustive_top_k", cfg.exhaustive_top_k);
  if (j.contains("adapter")) {
    const auto& a = j.at("adapter");
    check_keys(a, {"command", "timeout_seconds"}, "adapter");
    cfg.adapter.command = a.value("command", cfg.adapter.command);
    cfg.adapter.timeout_seconds = a.value("timeout_seconds", cfg.adapter.timeout_seconds);
  }
  cfg.message_source = j.value("message_source", cfg.message_source);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.workers = j.value("workers", cfg.workers);
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error("cannot parse " + path + ": " + err.what());
  }
  return from_json(j);
}

CodeContext load_code(const std::string& path) {
  ParityCheckMatrix h = parse_alist_file(path);
  GeneratorMatrix g = derive_generator(h);
  Qubo constraint = build_constraint_metric(h);
  return CodeContext{std::move(h), std::move(g), std::move(constraint)};
}

Interval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // In exact arithmetic the interval always brackets p (lo = 0 when
  // successes = 0, hi = 1 when successes = trials); keep rounding noise from
  // violating that.
  const double lo = std::min(std::max(0.0, center - half), p);
  const double hi = std::max(std::min(1.0, center + half), p);
  return {lo, hi};
}

ReceivedVector draw_trial(const GeneratorMatrix& g, double snr_db, std::uint64_t master_seed,
                          int point_index, long trial_index, bool zero_message,
                          BitVec* codeword_out) {
  std::mt19937_64 rng(mix64(mix64(mix64(master_seed, kChannelTag),
                                  static_cast<std::uint64_t>(point_index)),
                            static_cast<std::uint64_t>(trial_index)));
  BitVec message(g.k(), 0);
  if (!zero_message)
    for (auto& bit : message) bit = static_cast<uint8_t>(rng() & 1u);
  BitVec codeword = encode(message, g);
  ReceivedVector r = transmit(codeword, ChannelConfig::from_snr_db(snr_db), rng);
  if (codeword_out) *codeword_out = std::move(codeword);
  return r;
}

std::uint64_t decoder_stream_seed(std::uint64_t master_seed, int point_index, long trial_index,
                                  const std::string& decoder_name) {
  return mix64(mix64(mix64(mix64(master_seed, kDecoderTag), fnv1a64(decoder_name)),
                     static_cast<std::uint64_t>(point_index)),
               static_cast<std::uint64_t>(trial_index));
}

namespace {

class SaDecoder : public Decoder {
 public:
  SaDecoder(const CodeContext& ctx, const ExperimentConfig& cfg)
      : ctx_(ctx), sched_(cfg.anneal), w1_(cfg.w1), w2_(cfg.w2) {}
  std::string name() const override { return "sa"; }
  DecodeResult decode_one(const ReceivedVector& r, std::mt19937_64& rng) override {
    const Qubo q = compose(build_distance_metric(r.posteriors), ctx_.constraint, w1_, w2_);
    return decode(sample_sa(q, sched_, rng), r, ctx_.h);
  }

 private:
  const CodeContext& ctx_;
  AnnealSchedule sched_;
  double w1_, w2_;
};

class BpDecoder : public Decoder {
 public:
  BpDecoder(const CodeContext& ctx, const ExperimentConfig& cfg)
      : ctx_(ctx), max_iters_(cfg.bp_max_iters) {}
  std::string name() const override { return "bp"; }
  DecodeResult decode_one(const ReceivedVector& r, std::mt19937_64&) override {
    return bp_decode(r, ctx_.h, max_iters_);
  }

 private:
  const CodeContext& ctx_;
  int max_iters_;
};

class ExhaustiveDecoder : public Decoder {
 public:
  ExhaustiveDecoder(const CodeContext& ctx, const ExperimentConfig& cfg)
      : ctx_(ctx), top_k_(cfg.exhaustive_top_k), w1_(cfg.w1), w2_(cfg.w2) {}
  std::string name() const override { return "exhaustive"; }
  DecodeResult decode_one(const ReceivedVector& r, std::mt19937_64&) override {
    if (ctx_.constraint.num_vars() <= kExhaustiveMaxVars) {
      const Qubo q = compose(build_distance_metric(r.posteriors), ctx_.constraint, w1_, w2_);
      return decode(sample_exhaustive(q, top_k_), r, ctx_.h);
    }
    // The composed QUBO no longer fits a brute-force enumeration; exact
    // maximum-likelihood over the codebook selects the same codeword the
    // full ranked sample set would.
    return ml_decode(r, ctx_.g);
  }

 private:
  const CodeContext& ctx_;
  int top_k_;
  double w1_, w2_;
};

class ExternalDecoder : public Decoder {
 public:
  ExternalDecoder(const CodeContext& ctx, const ExperimentConfig& cfg)
      : ctx_(ctx),
        sampler_(cfg.adapter.command, cfg.adapter.timeout_seconds),
        w1_(cfg.w1),
        w2_(cfg.w2) {}
  std::string name() const override { return "external"; }
  DecodeResult decode_one(const ReceivedVector& r, std::mt19937_64& rng) override {
    const Qubo q = compose(build_distance_metric(r.posteriors), ctx_.constraint, w1_, w2_);
    return decode(sampler_.sample(q, rng), r, ctx_.h);
  }

 private:
  const CodeContext& ctx_;
  ExternalSampler sampler_;
  double w1_, w2_;
};

int hamming_distance(const BitVec& a, const BitVec& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

struct TrialOutcome {
  int bit_errors = 0;
  uint8_t fallback = 0;
};

// Runs `work(t, worker)` for t in [0, total) on `workers` threads. Work
// items are claimed dynamically, but callers index results by t, so output
// never depends on the claim order or the worker count. The first exception
// aborts the pool and is rethrown here.
void run_pool(int workers, long total, const std::function<void(long, int)>& work,
              const ProgressFn& progress, std::atomic<long>& done, long grand_total) {
  std::atomic<long> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex mutex;

  auto body = [&](int worker) {
    for (;;) {
      const long t = next.fetch_add(1);
      if (t >= total || abort.load()) break;
      try {
        work(t, worker);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!first_error) first_error = std::current_exception();
        abort.store(true);
        break;
      }
      const long d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(mutex);
        progress(d, grand_total);
      }
    }
  };

  if (workers <= 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(body, w);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::unique_ptr<Decoder>> make_decoders(const CodeContext& ctx,
                                                    const ExperimentConfig& cfg) {
  std::vector<std::unique_ptr<Decoder>> out;
  out.reserve(cfg.decoders.size());
  for (const auto& name : cfg.decoders) out.push_back(make_decoder(name, ctx, cfg));
  return out;
}

}  // namespace

std::unique_ptr<Decoder> make_decoder(const std::string& name, const CodeContext& ctx,
                                      const ExperimentConfig& cfg) {
  if (name == "sa") return std::make_unique<SaDecoder>(ctx, cfg);
  if (name == "bp") return std::make_unique<BpDecoder>(ctx, cfg);
  if (name == "exhaustive") return std::make_unique<ExhaustiveDecoder>(ctx, cfg);
  if (name == "external") return std::make_unique<ExternalDecoder>(ctx, cfg);
  throw std::invalid_argument("unknown decoder '" + name + "'");
}

SweepResult run_fixed_snr(const ExperimentConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  if (cfg.snr.kind != SnrSchedule::Kind::kFixed)
    throw std::invalid_argument("run_fixed_snr needs a fixed SNR schedule");
  const CodeContext ctx = load_code(cfg.code_file);
  const int n = ctx.h.cols();
  const int num_decoders = static_cast<int>(cfg.decoders.size());
  const bool zero_message = cfg.message_source == "zero";

  SweepResult result;
  result.config = cfg;
  std::atomic<long> done{0};
  const long grand_total = cfg.trials * static_cast<long>(cfg.snr.points_db.size());

  // One decoder instance set per worker; shared state (ctx) is read-only.
  std::vector<std::vector<std::unique_ptr<Decoder>>> per_worker(cfg.workers);
  for (auto& decoders : per_worker) decoders = make_decoders(ctx, cfg);

  for (std::size_t point = 0; point < cfg.snr.points_db.size(); ++point) {
    const double snr_db = cfg.snr.points_db[point];
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials) * num_decoders);

    auto work = [&](long t, int worker) {
      BitVec codeword;
      const ReceivedVector r = draw_trial(ctx.g, snr_db, cfg.master_seed,
                                          static_cast<int>(point), t, zero_message, &codeword);
      for (int d = 0; d < num_decoders; ++d) {
        std::mt19937_64 rng(decoder_stream_seed(cfg.master_seed, static_cast<int>(point), t,
                                                cfg.decoders[d]));
        const DecodeResult res = per_worker[worker][d]->decode_one(r, rng);
        TrialOutcome& o = outcomes[static_cast<std::size_t>(t) * num_decoders + d];
        o.bit_errors = hamming_distance(res.bits, codeword);
        o.fallback = res.selection == Selection::kEnergyFallback;
      }
    };
    run_pool(cfg.workers, cfg.trials, work, progress, done, grand_total);

    for (int d = 0; d < num_decoders; ++d) {
      RateCell cell;
      cell.snr_db = snr_db;
      cell.decoder = cfg.decoders[d];
      cell.trials = cfg.trials;
      for (long t = 0; t < cfg.trials; ++t) {
        const TrialOutcome& o = outcomes[static_cast<std::size_t>(t) * num_decoders + d];
        cell.bit_errors += o.bit_errors;
        cell.frame_errors += o.bit_errors > 0;
        cell.fallbacks += o.fallback;
      }
      const long bits = cfg.trials * static_cast<long>(n);
      cell.ber = static_cast<double>(cell.bit_errors) / static_cast<double>(bits);
      cell.fer = static_cast<double>(cell.frame_errors) / static_cast<double>(cfg.trials);
      cell.ber_ci = wilson_interval(cell.bit_errors, bits);
      cell.fer_ci = wilson_interval(cell.frame_errors, cfg.trials);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::vector<double> tv_snr_draws(const ExperimentConfig& cfg) {
  std::mt19937_64 rng(mix64(cfg.master_seed, kSnrScheduleTag));
  std::normal_distribution<double> dist(cfg.snr.mu_db, cfg.snr.sigma_db);
  std::vector<double> draws(cfg.trials);
  for (auto& v : draws) v = std::max(cfg.snr.floor_db, dist(rng));
  return draws;
}

TvResult run_time_varying(const ExperimentConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  if (cfg.snr.kind != SnrSchedule::Kind::kGaussian)
    throw std::invalid_argument("run_time_varying needs a gaussian SNR schedule");
  const CodeContext ctx = load_code(cfg.code_file);
  const int num_decoders = static_cast<int>(cfg.decoders.size());
  const bool zero_message = cfg.message_source == "zero";
  const std::vector<double> snrs = tv_snr_draws(cfg);

  struct FrameOutcome {
    uint8_t correct = 0;
    uint8_t fallback = 0;
  };
  std::vector<FrameOutcome> outcomes(static_cast<std::size_t>(cfg.trials) * num_decoders);

  std::atomic<long> done{0};
  std::vector<std::vector<std::unique_ptr<Decoder>>> per_worker(cfg.workers);
  for (auto& decoders : per_worker) decoders = make_decoders(ctx, cfg);
  auto work = [&](long t, int worker) {
    BitVec codeword;
    const ReceivedVector r =
        draw_trial(ctx.g, snrs[t], cfg.master_seed, 0, t, zero_message, &codeword);
    for (int d = 0; d < num_decoders; ++d) {
      std::mt19937_64 rng(decoder_stream_seed(cfg.master_seed, 0, t, cfg.decoders[d]));
      const DecodeResult res = per_worker[worker][d]->decode_one(r, rng);
      FrameOutcome& o = outcomes[static_cast<std::size_t>(t) * num_decoders + d];
      o.correct = res.bits == codeword;
      o.fallback = res.selection == Selection::kEnergyFallback;
    }
  };
  run_pool(cfg.workers, cfg.trials, work, progress, done, cfg.trials);

  TvResult result;
  result.config = cfg;
  for (int d = 0; d < num_decoders; ++d) {
    TvCell cell;
    cell.decoder = cfg.decoders[d];
    cell.frames = cfg.trials;
    for (long t = 0; t < cfg.trials; ++t) {
      const FrameOutcome& o = outcomes[static_cast<std::size_t>(t) * num_decoders + d];
      cell.correct += o.correct;
      cell.fallbacks += o.fallback;
    }
    cell.fraction = static_cast<double>(cell.correct) / static_cast<double>(cfg.trials);
    cell.fraction_ci = wilson_interval(cell.correct, cfg.trials);
    result.cells.push_back(std::move(cell));
  }
  result.frames.reserve(cfg.trials);
  for (long t = 0; t < cfg.trials; ++t) {
    TvFrame frame;
    frame.frame = t;
    frame.snr_db = snrs[t];
    frame.correct.resize(num_decoders);
    for (int d = 0; d < num_decoders; ++d)
      frame.correct[d] = outcomes[static_cast<std::size_t>(t) * num_decoders + d].correct;
    result.frames.push_back(std::move(frame));
  }
  return result;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_config_echo(const ExperimentConfig& cfg, std::ostream& out) {
  out << "# config " << cfg.to_json().dump() << '\n';
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  write_config_echo(result.config, out);
  out << "snr_db,decoder,trials,bit_errors,frame_errors,fallbacks,"
         "ber,ber_ci_lo,ber_ci_hi,fer,fer_ci_lo,fer_ci_hi\n";
  for (const RateCell& c : result.cells) {
    out << format_double(c.snr_db) << ',' << c.decoder << ',' << c.trials << ','
        << c.bit_errors << ',' << c.frame_errors << ',' << c.fallbacks << ','
        << format_double(c.ber) << ',' << format_double(c.ber_ci.lo) << ','
        << format_double(c.ber_ci.hi) << ',' << format_double(c.fer) << ','
        << format_double(c.fer_ci.lo) << ',' << format_double(c.fer_ci.hi) << '\n';
  }
}

void write_tv_csv(const TvResult& result, std::ostream& out) {
  write_config_echo(result.config, out);
  out << "decoder,frames,correct,fallbacks,fraction,fraction_ci_lo,fraction_ci_hi\n";
  for (const TvCell& c : result.cells) {
    out << c.decoder << ',' << c.frames << ',' << c.correct << ',' << c.fallbacks << ','
        << format_double(c.fraction) << ',' << format_double(c.fraction_ci.lo) << ','
        << format_double(c.fraction_ci.hi) << '\n';
  }
}

void write_tv_frames_csv(const TvResult& result, std::ostream& out) {
  write_config_echo(result.config, out);
  out << "frame,snr_db";
  for (const TvCell& c : result.cells) out << ',' << c.decoder << "_correct";
  out << '\n';
  for (const TvFrame& f : result.frames) {
    out << f.frame << ',' << format_double(f.snr_db);
    for (uint8_t flag : f.correct) out << ',' << static_cast<int>(flag);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double_field(const std::string& s, int line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("bad numeric field '" + s + "'", line_no);
  return v;
}

long parse_long_field(const std::string& s, int line_no) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("bad integer field '" + s + "'", line_no);
  return v;
}

}  // namespace

SweepResult read_sweep_csv(std::istream& in) {
  constexpr const char* kEchoPrefix = "# config ";
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++line_no;
  if (line.rfind(kEchoPrefix, 0) != 0) throw ParseError("missing config echo line", line_no);
  SweepResult result;
  try {
    result.config =
        ExperimentConfig::from_json(nlohmann::json::parse(line.substr(std::strlen(kEchoPrefix))));
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("bad config echo: ") + err.what(), line_no);
  }

  if (!std::getline(in, line)) throw ParseError("missing header line", line_no + 1);
  ++line_no;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 12) throw ParseError("expected 12 fields", line_no);
    RateCell c;
    c.snr_db = parse_double_field(fields[0], line_no);
    c.decoder = fields[1];
    c.trials = parse_long_field(fields[2], line_no);
    c.bit_errors = parse_long_field(fields[3], line_no);
    c.frame_errors = parse_long_field(fields[4], line_no);
    c.fallbacks = parse_long_field(fields[5], line_no);
    c.ber = parse_double_field(fields[6], line_no);
    c.ber_ci.lo = parse_double_field(fields[7], line_no);
    c.ber_ci.hi = parse_double_field(fields[8], line_no);
    c.fer = parse_double_field(fields[9], line_no);
    c.fer_ci.lo = parse_double_field(fields[10], line_no);
    c.fer_ci.hi = parse_double_field(fields[11], line_no);
    result.cells.push_back(std::move(c));
  }
  return result;
}

}  // namespace qubodec
