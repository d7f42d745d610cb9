// Command-line front end: encode, decode-one, sweep, tv-snr, export-qubo,
// sample-file. Exits 0 only on clean completion.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qubodec/bp.hpp"
#include "qubodec/channel.hpp"
#include "qubodec/codes.hpp"
#include "qubodec/harness.hpp"
#include "qubodec/postprocess.hpp"
#include "qubodec/qubo.hpp"
#include "qubodec/rng.hpp"
#include "qubodec/samplers.hpp"

namespace {

using namespace qubodec;

void warn_about_code(const ParityCheckMatrix& h, const GeneratorMatrix& g) {
  if (g.h_rank() < h.rows())
    std::cerr << "warning: parity-check matrix has rank " << g.h_rank() << " < " << h.rows()
              << " rows (redundant checks)\n";
  if (h.density() >= 0.5)
    std::cerr << "warning: parity-check matrix density " << h.density()
              << " >= 0.5; this is not a sparse (low-density) code\n";
}

ParityCheckMatrix load_h(const std::string& path) { return parse_alist_file(path); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

ReceivedVector load_received(const std::string& path, double sigma, double snr_db) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open received file: " + path);
  return received_from_samples(read_sample_values(in), sigma, snr_db);
}

nlohmann::json result_to_json(const DecodeResult& res) {
  nlohmann::json j;
  j["bits"] = to_bit_string(res.bits);
  j["valid"] = res.valid;
  j["selection"] = selection_name(res.selection);
  j["distance"] = res.distance;
  if (std::isfinite(res.energy)) j["energy"] = res.energy;
  j["candidates_considered"] = res.candidates_considered;
  j["iterations"] = res.iterations;
  return j;
}

ProgressFn stderr_progress() {
  return [](long done, long total) {
    if (done % 500 == 0 || done == total) {
      std::cerr << '\r' << done << '/' << total << " trials" << std::flush;
      if (done == total) std::cerr << '\n';
    }
  };
}

void print_sweep_summary(const SweepResult& result) {
  for (const RateCell& c : result.cells)
    std::cout << c.snr_db << " dB  " << c.decoder << "  fer=" << c.fer << " ["
              << c.fer_ci.lo << ", " << c.fer_ci.hi << "]  ber=" << c.ber
              << "  fallbacks=" << c.fallbacks << '\n';
}

void print_tv_summary(const TvResult& result) {
  for (const TvCell& c : result.cells)
    std::cout << c.decoder << "  fraction_correct=" << c.fraction << " [" << c.fraction_ci.lo
              << ", " << c.fraction_ci.hi << "]  fallbacks=" << c.fallbacks << '\n';
}

// Shared --config/--config-from-csv/override plumbing for sweep and tv-snr.
struct ConfigCli {
  std::string config_path;
  std::string config_from_csv;
  std::string code_file;
  std::vector<std::string> decoders;
  std::vector<double> points_db;
  std::optional<double> mu_db, sigma_db, floor_db;
  std::optional<long> trials;
  std::optional<double> w1, w2;
  std::optional<double> beta_initial, beta_final;
  std::optional<int> num_sweeps, num_reads;
  std::optional<int> bp_max_iters, top_k, workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> message_source, adapter_command;
  std::optional<double> adapter_timeout;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--config-from-csv", config_from_csv,
                    "read the config echoed in a result CSV (reruns it)");
    cmd->add_option("--code", code_file, "parity-check matrix (alist)");
    cmd->add_option("--decoders", decoders, "decoder subset (sa bp exhaustive external)");
    cmd->add_option("--points", points_db, "fixed SNR points in dB");
    cmd->add_option("--mu", mu_db, "gaussian SNR mean (dB)");
    cmd->add_option("--sigma-db", sigma_db, "gaussian SNR std (dB)");
    cmd->add_option("--floor", floor_db, "gaussian SNR clamp floor (dB)");
    cmd->add_option("--trials", trials, "trials per point / total frames");
    cmd->add_option("--w1", w1, "distance-metric weight");
    cmd->add_option("--w2", w2, "constraint-metric weight");
    cmd->add_option("--beta-initial", beta_initial, "annealing start inverse temperature");
    cmd->add_option("--beta-final", beta_final, "annealing end inverse temperature");
    cmd->add_option("--sweeps", num_sweeps, "annealing sweeps per read");
    cmd->add_option("--reads", num_reads, "annealing reads (restarts)");
    cmd->add_option("--bp-max-iters", bp_max_iters, "BP iteration cap");
    cmd->add_option("--top-k", top_k, "exhaustive sampler: keep only k best (0 = all)");
    cmd->add_option("--workers", workers, "worker threads");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--message-source", message_source, "random | zero");
    cmd->add_option("--adapter-command", adapter_command,
                    "external sampler command ({qubo}, {samples} placeholders)");
    cmd->add_option("--adapter-timeout", adapter_timeout, "external sampler timeout (s)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty() && !config_from_csv.empty())
      throw std::runtime_error("--config and --config-from-csv are mutually exclusive");
    if (!config_path.empty()) {
      cfg = ExperimentConfig::load_file(config_path);
    } else if (!config_from_csv.empty()) {
      std::ifstream in(config_from_csv);
      if (!in) throw std::runtime_error("cannot open " + config_from_csv);
      cfg = read_sweep_csv(in).config;
    }
    if (!code_file.empty()) cfg.code_file = code_file;
    if (!decoders.empty()) cfg.decoders = decoders;
    if (!points_db.empty()) {
      cfg.snr.kind = SnrSchedule::Kind::kFixed;
      cfg.snr.points_db = points_db;
    }
    if (mu_db || sigma_db || floor_db) cfg.snr.kind = SnrSchedule::Kind::kGaussian;
    if (mu_db) cfg.snr.mu_db = *mu_db;
    if (sigma_db) cfg.snr.sigma_db = *sigma_db;
    if (floor_db) cfg.snr.floor_db = *floor_db;
    if (trials) cfg.trials = *trials;
    if (w1) cfg.w1 = *w1;
    if (w2) cfg.w2 = *w2;
    if (beta_initial) cfg.anneal.beta_initial = *beta_initial;
    if (beta_final) cfg.anneal.beta_final = *beta_final;
    if (num_sweeps) cfg.anneal.num_sweeps = *num_sweeps;
    if (num_reads) cfg.anneal.num_reads = *num_reads;
    if (bp_max_iters) cfg.bp_max_iters = *bp_max_iters;
    if (top_k) cfg.exhaustive_top_k = *top_k;
    if (workers) cfg.workers = *workers;
    if (seed) cfg.master_seed = *seed;
    if (message_source) cfg.message_source = *message_source;
    if (adapter_command) cfg.adapter.command = *adapter_command;
    if (adapter_timeout) cfg.adapter.timeout_seconds = *adapter_timeout;
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"QUBO-based LDPC decoding toolkit"};
  app.require_subcommand(1);

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "encode messages into codewords");
  std::string enc_code, enc_message;
  int enc_random = 0;
  std::uint64_t enc_seed = 1;
  encode_cmd->add_option("--code", enc_code, "parity-check matrix (alist)")->required();
  encode_cmd->add_option("--message", enc_message, "message bits as a 0/1 string");
  encode_cmd->add_option("--random", enc_random, "encode N random messages instead");
  encode_cmd->add_option("--seed", enc_seed, "seed for --random");

  // decode-one
  auto* dec_cmd = app.add_subcommand("decode-one", "decode one received vector from a file");
  std::string dec_code, dec_received, dec_decoder = "sa";
  double dec_snr_db = 0.0, dec_sigma = 0.0;
  bool dec_have_snr = false;
  double dec_w1 = 0.5, dec_w2 = 1.0;
  AnnealSchedule dec_sched;
  int dec_bp_iters = 50, dec_top_k = 0;
  std::uint64_t dec_seed = 1;
  std::string dec_adapter;
  double dec_adapter_timeout = 60.0;
  dec_cmd->add_option("--code", dec_code, "parity-check matrix (alist)")->required();
  dec_cmd->add_option("--received", dec_received, "file of received samples, one per line")
      ->required();
  auto* snr_opt = dec_cmd->add_option("--snr-db", dec_snr_db, "channel SNR in dB");
  auto* sigma_opt = dec_cmd->add_option("--sigma", dec_sigma, "noise std (alternative)");
  snr_opt->excludes(sigma_opt);
  dec_cmd->add_option("--decoder", dec_decoder, "sa | bp | exhaustive | external");
  dec_cmd->add_option("--w1", dec_w1, "distance-metric weight");
  dec_cmd->add_option("--w2", dec_w2, "constraint-metric weight");
  dec_cmd->add_option("--beta-initial", dec_sched.beta_initial);
  dec_cmd->add_option("--beta-final", dec_sched.beta_final);
  dec_cmd->add_option("--sweeps", dec_sched.num_sweeps);
  dec_cmd->add_option("--reads", dec_sched.num_reads);
  dec_cmd->add_option("--bp-max-iters", dec_bp_iters);
  dec_cmd->add_option("--top-k", dec_top_k);
  dec_cmd->add_option("--seed", dec_seed);
  dec_cmd->add_option("--adapter-command", dec_adapter);
  dec_cmd->add_option("--adapter-timeout", dec_adapter_timeout);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "fixed-SNR Monte Carlo BER/FER sweep");
  ConfigCli sweep_cli;
  sweep_cli.attach(sweep_cmd);
  std::string sweep_out = "sweep.csv";
  bool sweep_quiet = false;
  sweep_cmd->add_option("--out", sweep_out, "output CSV path");
  sweep_cmd->add_flag("--quiet", sweep_quiet, "suppress progress output");

  // tv-snr
  auto* tv_cmd = app.add_subcommand("tv-snr", "time-varying (gaussian) SNR run");
  ConfigCli tv_cli;
  tv_cli.attach(tv_cmd);
  std::string tv_out = "tvsnr.csv", tv_frames_out;
  bool tv_quiet = false;
  tv_cmd->add_option("--out", tv_out, "output CSV path");
  tv_cmd->add_option("--frames-out", tv_frames_out,
                     "per-frame CSV path (default: <out> with _frames suffix)");
  tv_cmd->add_flag("--quiet", tv_quiet, "suppress progress output");

  // export-qubo
  auto* export_cmd = app.add_subcommand("export-qubo", "write a QUBO in sparse text form");
  std::string exp_code, exp_received, exp_out = "-";
  double exp_w1 = 0.5, exp_w2 = 1.0, exp_snr_db = 0.0, exp_sigma = 0.0;
  export_cmd->add_option("--code", exp_code, "parity-check matrix (alist)")->required();
  export_cmd->add_option("--received", exp_received,
                         "received samples; omit for the constraint metric alone");
  auto* exp_snr_opt = export_cmd->add_option("--snr-db", exp_snr_db, "channel SNR in dB");
  auto* exp_sigma_opt = export_cmd->add_option("--sigma", exp_sigma, "noise std");
  exp_snr_opt->excludes(exp_sigma_opt);
  export_cmd->add_option("--w1", exp_w1);
  export_cmd->add_option("--w2", exp_w2);
  export_cmd->add_option("--out", exp_out, "output path ('-' = stdout)");

  // sample-file: run SA over a sparse-QUBO file. Doubles as the reference
  // external-adapter command.
  auto* sf_cmd = app.add_subcommand("sample-file", "run simulated annealing on a QUBO file");
  std::string sf_qubo, sf_out;
  AnnealSchedule sf_sched;
  std::uint64_t sf_seed = 1;
  sf_cmd->add_option("--qubo", sf_qubo, "sparse QUBO text file")->required();
  sf_cmd->add_option("--out", sf_out, "sample file to write")->required();
  sf_cmd->add_option("--beta-initial", sf_sched.beta_initial);
  sf_cmd->add_option("--beta-final", sf_sched.beta_final);
  sf_cmd->add_option("--sweeps", sf_sched.num_sweeps);
  sf_cmd->add_option("--reads", sf_sched.num_reads);
  sf_cmd->add_option("--seed", sf_seed);

  CLI11_PARSE(app, argc, argv);

  if (encode_cmd->parsed()) {
    const ParityCheckMatrix h = load_h(enc_code);
    const GeneratorMatrix g = derive_generator(h);
    warn_about_code(h, g);
    if (enc_message.empty() == (enc_random == 0))
      throw std::runtime_error("need exactly one of --message or --random");
    if (!enc_message.empty()) {
      std::cout << to_bit_string(encode(bit_vec_from_string(enc_message), g)) << '\n';
    } else {
      std::mt19937_64 rng(enc_seed);
      for (int i = 0; i < enc_random; ++i) {
        BitVec message(g.k());
        for (auto& bit : message) bit = static_cast<uint8_t>(rng() & 1u);
        std::cout << to_bit_string(encode(message, g)) << '\n';
      }
    }
    return 0;
  }

  if (dec_cmd->parsed()) {
    dec_have_snr = snr_opt->count() > 0;
    if (!dec_have_snr && sigma_opt->count() == 0)
      throw std::runtime_error("need --snr-db or --sigma");
    const double sigma = dec_have_snr ? snr_to_sigma(dec_snr_db) : dec_sigma;
    const double snr_db = dec_have_snr ? dec_snr_db : 0.0;

    const ParityCheckMatrix h = load_h(dec_code);
    const GeneratorMatrix g = derive_generator(h);
    warn_about_code(h, g);
    const ReceivedVector r = load_received(dec_received, sigma, snr_db);
    if (static_cast<int>(r.samples.size()) != h.cols())
      throw std::runtime_error("received vector length does not match the code");

    ExperimentConfig cfg;
    cfg.code_file = dec_code;
    cfg.w1 = dec_w1;
    cfg.w2 = dec_w2;
    cfg.anneal = dec_sched;
    cfg.bp_max_iters = dec_bp_iters;
    cfg.exhaustive_top_k = dec_top_k;
    cfg.adapter.command = dec_adapter;
    cfg.adapter.timeout_seconds = dec_adapter_timeout;
    const CodeContext ctx{h, g, build_constraint_metric(h)};
    auto decoder = make_decoder(dec_decoder, ctx, cfg);
    std::mt19937_64 rng(dec_seed);
    std::cout << result_to_json(decoder->decode_one(r, rng)).dump(2) << '\n';
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const ExperimentConfig cfg = sweep_cli.resolve();
    const SweepResult result =
        run_fixed_snr(cfg, sweep_quiet ? ProgressFn{} : stderr_progress());
    auto out = open_out(sweep_out);
    write_sweep_csv(result, out);
    print_sweep_summary(result);
    std::cout << "wrote " << sweep_out << '\n';
    return 0;
  }

  if (tv_cmd->parsed()) {
    const ExperimentConfig cfg = tv_cli.resolve();
    const TvResult result = run_time_varying(cfg, tv_quiet ? ProgressFn{} : stderr_progress());
    auto out = open_out(tv_out);
    write_tv_csv(result, out);
    std::string frames_path = tv_frames_out;
    if (frames_path.empty()) {
      frames_path = tv_out;
      const auto dot = frames_path.rfind('.');
      frames_path.insert(dot == std::string::npos ? frames_path.size() : dot, "_frames");
    }
    auto frames_out = open_out(frames_path);
    write_tv_frames_csv(result, frames_out);
    print_tv_summary(result);
    std::cout << "wrote " << tv_out << " and " << frames_path << '\n';
    return 0;
  }

  if (export_cmd->parsed()) {
    const ParityCheckMatrix h = load_h(exp_code);
    const GeneratorMatrix g = derive_generator(h);
    warn_about_code(h, g);
    Qubo q = build_constraint_metric(h);
    if (!exp_received.empty()) {
      const bool have_snr = exp_snr_opt->count() > 0;
      if (!have_snr && exp_sigma_opt->count() == 0)
        throw std::runtime_error("--received needs --snr-db or --sigma");
      const double sigma = have_snr ? snr_to_sigma(exp_snr_db) : exp_sigma;
      const ReceivedVector r = load_received(exp_received, sigma, have_snr ? exp_snr_db : 0.0);
      q = compose(build_distance_metric(r.posteriors), q, exp_w1, exp_w2);
    }
    if (exp_out == "-") {
      write_qubo(q, std::cout);
    } else {
      auto out = open_out(exp_out);
      write_qubo(q, out);
      std::cout << "wrote " << exp_out << '\n';
    }
    return 0;
  }

  if (sf_cmd->parsed()) {
    std::ifstream in(sf_qubo);
    if (!in) throw std::runtime_error("cannot open QUBO file: " + sf_qubo);
    const Qubo q = read_qubo(in);
    std::mt19937_64 rng(sf_seed);
    const SampleSet set = sample_sa(q, sf_sched, rng);
    auto out = open_out(sf_out);
    write_sample_file(set, out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
