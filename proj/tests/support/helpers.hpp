#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately recompute everything from first principles (dense loops, full
// enumeration) so they cannot share a bug with the library code under test.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubodec/channel.hpp"
#include "qubodec/codes.hpp"
#include "qubodec/qubo.hpp"

namespace testsupport {

using qubodec::BitVec;

/// Parse a dense 0/1 matrix literal ("110\n011\n").
inline qubodec::ParityCheckMatrix dense(const std::string& text) {
  std::istringstream in(text);
  return qubodec::parse_dense(in);
}

inline BitVec random_bits(int n, std::mt19937_64& rng) {
  BitVec bits(n);
  for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1u);
  return bits;
}

/// Every codeword of g via full message enumeration (guarded to small k).
inline std::vector<BitVec> all_codewords(const qubodec::GeneratorMatrix& g) {
  if (g.k() > 20) throw std::invalid_argument("all_codewords: k too large");
  std::vector<BitVec> words;
  words.reserve(std::size_t{1} << g.k());
  for (std::uint32_t m = 0; m < (1u << g.k()); ++m) {
    BitVec msg(g.k());
    for (int i = 0; i < g.k(); ++i) msg[i] = (m >> i) & 1u;
    words.push_back(qubodec::encode(msg, g));
  }
  return words;
}

/// Dense objective oracle: evaluates
///   w1 * sum_i (q_i - p_i)^2  +  w2 * sum_checks ((sum_j q_j) - 2 L_e)^2
/// straight from the definition, reading L_e out of the ancilla layout.
/// Shares no code with Qubo::energy / build_* / compose.
inline double objective_oracle(const BitVec& assignment, const std::vector<double>& posteriors,
                               const qubodec::ParityCheckMatrix& h,
                               const std::vector<qubodec::CheckAncillas>& layout, double w1,
                               double w2) {
  double distance = 0.0;
  for (std::size_t i = 0; i < posteriors.size(); ++i) {
    const double d = static_cast<double>(assignment.at(i)) - posteriors[i];
    distance += d * d;
  }
  double constraint = 0.0;
  for (const auto& anc : layout) {
    long sum = 0;
    for (int var : h.check_adjacency().at(static_cast<std::size_t>(anc.check))) {
      sum += assignment.at(static_cast<std::size_t>(var));
    }
    long le = 0;
    for (std::size_t t = 0; t < anc.vars.size(); ++t) {
      le += static_cast<long>(assignment.at(static_cast<std::size_t>(anc.vars[t]))) << t;
    }
    const double term = static_cast<double>(sum - 2 * le);
    constraint += term * term;
  }
  return w1 * distance + w2 * constraint;
}

inline double sq_euclid(const BitVec& bits, const std::vector<double>& samples) {
  double s = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double d = qubodec::bpsk(bits[i]) - samples[i];
    s += d * d;
  }
  return s;
}

/// Naive maximum-likelihood oracle: scans a codeword list for the minimum
/// Euclidean distance to the channel samples; ties go to the lexicographically
/// smaller word so the answer is unique.
inline BitVec naive_ml(const std::vector<double>& samples, const std::vector<BitVec>& codewords) {
  if (codewords.empty()) throw std::invalid_argument("naive_ml: empty codebook");
  const BitVec* best = nullptr;
  double best_sq = 0.0;
  for (const auto& w : codewords) {
    const double sq = sq_euclid(w, samples);
    if (best == nullptr || sq < best_sq - 1e-12 ||
        (std::abs(sq - best_sq) <= 1e-12 && w < *best)) {
      best = &w;
      best_sq = sq;
    }
  }
  return *best;
}

/// Self-deleting file seeded with the given content.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".txt") {
    static std::atomic<unsigned> counter{0};
    path_ = (std::filesystem::temp_directory_path() /
             ("qubodec_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter.fetch_add(1)) + suffix))
                .string();
    std::ofstream out(path_);
    out << content;
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() { std::error_code ec; std::filesystem::remove(path_, ec); }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Run `cmd`, capture stdout (stderr untouched), return exit status.
inline int run_command(const std::string& cmd, std::string* out) {
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + cmd);
  std::string text;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  const int status = ::pclose(pipe);
  if (out != nullptr) *out = std::move(text);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

}  // namespace testsupport
