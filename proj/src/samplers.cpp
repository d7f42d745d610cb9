#include "qubodec/samplers.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qubodec/rng.hpp"

namespace qubodec {

void AnnealSchedule::validate() const {
  if (!(beta_initial > 0.0) || !(beta_final > beta_initial))
    throw std::invalid_argument("need 0 < beta_initial < beta_final");
  if (num_sweeps < 1) throw std::invalid_argument("num_sweeps must be >= 1");
  if (num_reads < 1) throw std::invalid_argument("num_reads must be >= 1");
}

SampleSet assemble_samples(const std::vector<BitVec>& assignments, const Qubo& q,
                           SamplerMeta meta) {
  std::map<BitVec, int> counts;
  for (const auto& bits : assignments) ++counts[bits];

  SampleSet set;
  set.meta = std::move(meta);
  set.samples.reserve(counts.size());
  for (const auto& [bits, count] : counts)
    set.samples.push_back({bits, energy(bits, q), count});
  std::sort(set.samples.begin(), set.samples.end(), [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bits < b.bits;
  });
  return set;
}

SampleSet sample_sa(const Qubo& q, const AnnealSchedule& sched, std::mt19937_64& rng) {
  sched.validate();
  const int n = q.num_vars();
  const std::uint64_t master = rng();

  // Precompute the geometric beta ladder once; every read walks the same one.
  std::vector<double> betas(sched.num_sweeps);
  if (sched.num_sweeps == 1) {
    betas[0] = sched.beta_final;
  } else {
    const double ratio = sched.beta_final / sched.beta_initial;
    for (int s = 0; s < sched.num_sweeps; ++s)
      betas[s] = sched.beta_initial *
                 std::pow(ratio, static_cast<double>(s) / (sched.num_sweeps - 1));
  }

  // Uphill moves with beta*delta beyond this are rejected outright, without
  // consuming randomness: exp(-50) ~ 2e-22 is far below the uniform draw's
  // resolution, so the distinction is unobservable but the exp() is saved.
  constexpr double kHopeless = 50.0;

  std::vector<BitVec> finals;
  finals.reserve(sched.num_reads);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> field(n);
  for (int read = 0; read < sched.num_reads; ++read) {
    // Each read's stream depends only on (master, read), so reads keep their
    // identity when num_reads grows.
    std::mt19937_64 chain(splitmix64(master + static_cast<std::uint64_t>(read)));
    BitVec bits(n);
    for (int i = 0; i < n; ++i) bits[i] = static_cast<uint8_t>(chain() & 1u);
    // field[i] = energy of setting bit i against the rest of the state, kept
    // incrementally so each proposal costs O(1) and each accepted flip
    // O(degree); flipping i changes the energy by +-field[i].
    for (int i = 0; i < n; ++i) {
      double f = q.linear()[i];
      for (const auto& [j, c] : q.neighbors()[i]) f += bits[j] ? c : 0.0;
      field[i] = f;
    }
    for (double beta : betas) {
      for (int i = 0; i < n; ++i) {
        const double delta = bits[i] ? -field[i] : field[i];
        if (delta > 0.0 &&
            (beta * delta > kHopeless || !(unif(chain) < std::exp(-beta * delta))))
          continue;
        const double toward = bits[i] ? -1.0 : 1.0;
        bits[i] ^= 1u;
        for (const auto& [j, c] : q.neighbors()[i]) field[j] += toward * c;
      }
    }
    finals.push_back(std::move(bits));
  }

  SamplerMeta meta;
  meta.sampler = "sa";
  meta.schedule = sched;
  meta.seed = master;
  return assemble_samples(finals, q, std::move(meta));
}

SampleSet sample_exhaustive(const Qubo& q, int top_k) {
  const int n = q.num_vars();
  if (n > kExhaustiveMaxVars)
    throw std::invalid_argument("exhaustive sampler limited to " +
                                std::to_string(kExhaustiveMaxVars) + " variables, got " +
                                std::to_string(n));
  if (top_k < 0) throw std::invalid_argument("top_k must be >= 0");

  // Walk assignments in Gray-code order so each step is one O(degree) flip.
  // An assignment is keyed by the bit-reversed mask, whose integer order is
  // exactly lexicographic order of the bit string.
  struct Entry {
    double energy;
    std::uint32_t rev_mask;
  };
  const std::uint64_t total = n == 0 ? 1ULL : (1ULL << n);
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(total));

  BitVec bits(n, 0);
  double e = energy(bits, q);
  std::uint32_t rev = 0;
  entries.push_back({e, rev});
  for (std::uint64_t g = 1; g < total; ++g) {
    const int flip = std::countr_zero(g);
    e += q.flip_delta(bits, flip);
    bits[flip] ^= 1u;
    rev ^= 1u << (n - 1 - flip);
    entries.push_back({e, rev});
  }

  const auto by_rank = [](const Entry& a, const Entry& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.rev_mask < b.rev_mask;
  };
  if (top_k > 0 && static_cast<std::uint64_t>(top_k) < total) {
    std::nth_element(entries.begin(), entries.begin() + top_k, entries.end(), by_rank);
    entries.resize(top_k);
  }
  std::sort(entries.begin(), entries.end(), by_rank);

  SampleSet set;
  set.meta.sampler = "exhaustive";
  set.samples.reserve(entries.size());
  for (const Entry& entry : entries) {
    Sample s;
    s.bits.resize(n);
    for (int i = 0; i < n; ++i) s.bits[i] = (entry.rev_mask >> (n - 1 - i)) & 1u;
    s.energy = entry.energy;
    s.count = 1;
    set.samples.push_back(std::move(s));
  }
  return set;
}

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos)) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

}  // namespace

ExternalSampler::ExternalSampler(std::string command_template, double timeout_seconds)
    : command_template_(std::move(command_template)), timeout_seconds_(timeout_seconds) {
  if (command_template_.find("{qubo}") == std::string::npos ||
      command_template_.find("{samples}") == std::string::npos)
    throw std::invalid_argument("adapter command needs {qubo} and {samples} placeholders");
}

SampleSet ExternalSampler::sample(const Qubo& q, std::mt19937_64& rng) {
  namespace fs = std::filesystem;
  const auto tag = std::to_string(::getpid()) + "_" + std::to_string(rng());
  const fs::path qubo_path = fs::temp_directory_path() / ("qubodec_" + tag + ".qubo");
  const fs::path samples_path = fs::temp_directory_path() / ("qubodec_" + tag + ".samples");
  struct Cleanup {
    const fs::path &a, &b;
    ~Cleanup() {
      std::error_code ec;
      fs::remove(a, ec);
      fs::remove(b, ec);
    }
  } cleanup{qubo_path, samples_path};

  {
    std::ofstream out(qubo_path);
    if (!out) throw AdapterError("cannot write " + qubo_path.string());
    write_qubo(q, out);
  }

  std::string command = substitute(command_template_, "{qubo}", qubo_path.string());
  command = substitute(command, "{samples}", samples_path.string());
  if (timeout_seconds_ > 0.0)
    command = "timeout " + std::to_string(timeout_seconds_) + " " + command;

  const int status = std::system(command.c_str());
  if (status == -1) throw AdapterError("failed to launch adapter: " + command);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 124)
    throw AdapterError("adapter timed out after " + std::to_string(timeout_seconds_) + "s");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : status;
    throw AdapterError("adapter exited with status " + std::to_string(code));
  }

  std::ifstream in(samples_path);
  if (!in) throw AdapterError("adapter produced no sample file at " + samples_path.string());
  std::vector<std::pair<BitVec, int>> raw;
  try {
    raw = read_sample_file(in);
  } catch (const ParseError& err) {
    throw AdapterError(std::string("malformed sample file: ") + err.what());
  }
  if (raw.empty()) throw AdapterError("adapter returned zero samples");

  std::vector<BitVec> assignments;
  for (auto& [bits, count] : raw) {
    if (static_cast<int>(bits.size()) != q.num_vars())
      throw AdapterError("adapter returned an assignment of length " +
                         std::to_string(bits.size()) + "; expected " +
                         std::to_string(q.num_vars()));
    for (int i = 0; i < count; ++i) assignments.push_back(bits);
  }

  SamplerMeta meta;
  meta.sampler = "external";
  return assemble_samples(assignments, q, std::move(meta));
}

SamplerRegistry& SamplerRegistry::instance() {
  static SamplerRegistry registry;
  return registry;
}

SamplerRegistry::SamplerRegistry() {
  register_sampler("sa", [](const SamplerOptions& opts) {
    return std::make_unique<SaSampler>(opts.schedule);
  });
  register_sampler("exhaustive", [](const SamplerOptions& opts) {
    return std::make_unique<ExhaustiveSampler>(opts.exhaustive_top_k);
  });
  register_sampler("external", [](const SamplerOptions& opts) {
    return std::make_unique<ExternalSampler>(opts.adapter_command,
                                             opts.adapter_timeout_seconds);
  });
}

void SamplerRegistry::register_sampler(const std::string& name, Factory factory) {
  for (auto& [existing, f] : factories_) {
    if (existing == name) {
      f = std::move(factory);
      return;
    }
  }
  factories_.emplace_back(name, std::move(factory));
}

std::unique_ptr<Sampler> SamplerRegistry::create(const std::string& name,
                                                 const SamplerOptions& opts) const {
  for (const auto& [existing, factory] : factories_)
    if (existing == name) return factory(opts);
  throw std::out_of_range("unknown sampler '" + name + "'");
}

bool SamplerRegistry::contains(const std::string& name) const {
  for (const auto& [existing, factory] : factories_)
    if (existing == name) return true;
  return false;
}

std::vector<std::string> SamplerRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [name, factory] : factories_) out.push_back(name);
  return out;
}

void write_sample_file(const SampleSet& set, std::ostream& out) {
  out << "# one sample per line: <bits> <count>\n";
  for (const Sample& s : set.samples) out << to_bit_string(s.bits) << ' ' << s.count << '\n';
}

std::vector<std::pair<BitVec, int>> read_sample_file(std::istream& in) {
  std::vector<std::pair<BitVec, int>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string bits_token;
    if (!(ss >> bits_token) || bits_token[0] == '#') continue;
    BitVec bits;
    try {
      bits = bit_vec_from_string(bits_token);
    } catch (const std::exception& err) {
      throw ParseError(err.what(), line_no);
    }
    int count = 1;
    if (int parsed = 0; ss >> parsed) {
      if (parsed < 1) throw ParseError("count must be >= 1", line_no);
      count = parsed;
    } else {
      ss.clear();  // missing count is legal; a non-numeric token surfaces below
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
    out.emplace_back(std::move(bits), count);
  }
  return out;
}

}  // namespace qubodec
