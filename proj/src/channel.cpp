#include "qubodec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qubodec {

double snr_to_sigma(double snr_db) { return std::sqrt(std::pow(10.0, -snr_db / 10.0)); }

ChannelConfig ChannelConfig::from_snr_db(double snr_db, uint64_t seed) {
  return ChannelConfig{snr_db, snr_to_sigma(snr_db), seed};
}

double posterior(double r, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double x = 2.0 * r / (sigma * sigma);
  double p;
  if (x >= 0.0) {
    const double e = std::exp(-x);
    p = e / (1.0 + e);
  } else {
    p = 1.0 / (1.0 + std::exp(x));
  }
  // Keep strictly inside (0,1); exp() underflow would otherwise yield exactly 0.
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::clamp(p, lo, hi);
}

BitVec hard_decision(const std::vector<double>& samples) {
  BitVec bits(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    bits[i] = samples[i] < 0.0 ? 1 : 0;
  return bits;
}

ReceivedVector transmit(const BitVec& codeword, const ChannelConfig& cfg, std::mt19937_64& rng) {
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("channel sigma must be positive");
  ReceivedVector out;
  out.sigma = cfg.sigma;
  out.snr_db = cfg.snr_db;
  out.samples.resize(codeword.size());
  out.posteriors.resize(codeword.size());
  std::normal_distribution<double> noise(0.0, cfg.sigma);
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    out.samples[i] = bpsk(codeword[i]) + noise(rng);
    out.posteriors[i] = posterior(out.samples[i], cfg.sigma);
  }
  return out;
}

ReceivedVector received_from_samples(std::vector<double> samples, double sigma, double snr_db) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  ReceivedVector out;
  out.sigma = sigma;
  out.snr_db = snr_db;
  out.posteriors.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out.posteriors[i] = posterior(samples[i], sigma);
  out.samples = std::move(samples);
  return out;
}

void write_received_csv(const ReceivedVector& r, std::ostream& out) {
  out << "index,sample,posterior\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    out << i << ',' << r.samples[i] << ',' << r.posteriors[i] << '\n';
}

std::vector<double> read_sample_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        values.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("expected a real value, got '" + tok + "'", line_no);
      }
    }
  }
  return values;
}

}  // namespace qubodec
