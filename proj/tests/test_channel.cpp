#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "qubodec/channel.hpp"
#include "support/helpers.hpp"

using namespace qubodec;
namespace ts = testsupport;

TEST_CASE("snr_to_sigma follows 10*log10(1/sigma^2)") {
  CHECK(snr_to_sigma(0.0) == doctest::Approx(1.0));
  CHECK(snr_to_sigma(10.0) == doctest::Approx(std::sqrt(0.1)));
  CHECK(snr_to_sigma(20.0) == doctest::Approx(0.1));
  CHECK(snr_to_sigma(-10.0) == doctest::Approx(std::sqrt(10.0)));
  // Round trip: snr = 10*log10(1/sigma^2).
  for (double snr : {-5.0, 0.0, 3.7, 15.0}) {
    const double sigma = snr_to_sigma(snr);
    CHECK(10.0 * std::log10(1.0 / (sigma * sigma)) == doctest::Approx(snr));
  }
  auto cfg = ChannelConfig::from_snr_db(6.0, 42);
  CHECK(cfg.snr_db == 6.0);
  CHECK(cfg.sigma == doctest::Approx(snr_to_sigma(6.0)));
  CHECK(cfg.seed == 42);
}

TEST_CASE("bpsk maps 0 to +1 and 1 to -1, hard_decision inverts it") {
  CHECK(bpsk(0) == 1.0);
  CHECK(bpsk(1) == -1.0);
  CHECK(hard_decision({0.3, -0.2, 0.0, -5.0, 2.0}) == BitVec{0, 1, 0, 1, 0});
  CHECK(hard_decision({}) == BitVec{});
}

TEST_CASE("posterior matches the textbook form on moderate inputs") {
  // Direct (overflow-naive) evaluation as the oracle.
  for (double sigma : {0.4, 1.0, 2.5}) {
    for (double r : {-3.0, -1.0, -0.1, 0.0, 0.25, 1.0, 4.0}) {
      const double expected = 1.0 / (1.0 + std::exp(2.0 * r / (sigma * sigma)));
      CHECK(posterior(r, sigma) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(posterior(0.0, 1.0) == doctest::Approx(0.5));
  // At 6 dB the posterior of a clean +1 sample is small but meaningful.
  CHECK(posterior(1.0, snr_to_sigma(6.0)) == doctest::Approx(3.4828e-4).epsilon(1e-3));
  // p(r) + p(-r) = 1.
  for (double r : {0.0, 0.3, 1.7, 9.0}) {
    CHECK(posterior(r, 0.8) + posterior(-r, 0.8) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("posterior saturates without leaving the open unit interval") {
  const double lo = posterior(1000.0, 1.0);
  const double hi = posterior(-1000.0, 1.0);
  CHECK(lo > 0.0);
  CHECK(lo < 1e-12);
  CHECK(hi < 1.0);
  CHECK(hi > 1.0 - 1e-12);
  CHECK_THROWS_AS(posterior(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(posterior(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("transmit is deterministic in the rng state and caches posteriors") {
  BitVec cw{0, 1, 1, 0, 1, 0, 0, 1};
  auto cfg = ChannelConfig::from_snr_db(3.0);
  std::mt19937_64 a(999), b(999), c(1000);
  auto ra = transmit(cw, cfg, a);
  auto rb = transmit(cw, cfg, b);
  auto rc = transmit(cw, cfg, c);
  CHECK(ra.samples == rb.samples);
  CHECK(ra.samples != rc.samples);
  CHECK(ra.sigma == doctest::Approx(cfg.sigma));
  CHECK(ra.snr_db == 3.0);
  REQUIRE(ra.samples.size() == cw.size());
  for (std::size_t i = 0; i < cw.size(); ++i) {
    CHECK(ra.posteriors[i] == doctest::Approx(posterior(ra.samples[i], cfg.sigma)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(transmit(cw, ChannelConfig{0.0, 0.0, 0}, a), std::invalid_argument);
}

TEST_CASE("transmit noise has the configured first two moments") {
  const int n = 20000;
  BitVec zeros(n, 0);  // all-zero word transmits as +1 everywhere
  const double sigma = 0.5;
  std::mt19937_64 rng(2024);
  auto r = transmit(zeros, ChannelConfig{0.0, sigma, 0}, rng);
  const double mean = std::accumulate(r.samples.begin(), r.samples.end(), 0.0) / n;
  double var = 0.0;
  for (double s : r.samples) var += (s - mean) * (s - mean);
  var /= n - 1;
  // 5-sigma statistical bounds for the sample mean and a loose one for the variance.
  CHECK(std::abs(mean - 1.0) < 5.0 * sigma / std::sqrt(double(n)));
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.05));
}

TEST_CASE("received_from_samples wraps raw values") {
  auto r = received_from_samples({0.5, -1.2}, 0.7, 3.1);
  CHECK(r.sigma == 0.7);
  CHECK(r.snr_db == 3.1);
  CHECK(r.samples == std::vector<double>{0.5, -1.2});
  CHECK(r.posteriors[0] == doctest::Approx(posterior(0.5, 0.7)));
  CHECK(r.posteriors[1] == doctest::Approx(posterior(-1.2, 0.7)));
  CHECK_THROWS_AS(received_from_samples({0.5}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("read_sample_values accepts lines, commas and blanks") {
  std::istringstream in("0.5\n-1.25, 3e-2\n\n 7 ,8\n");
  auto vals = read_sample_values(in);
  CHECK(vals == std::vector<double>{0.5, -1.25, 0.03, 7.0, 8.0});

  std::istringstream bad("1.0\nnope\n");
  try {
    read_sample_values(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("write_received_csv emits one indexed row per sample") {
  auto r = received_from_samples({1.5, -0.25}, 1.0, 0.0);
  std::ostringstream out;
  write_received_csv(r, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,sample,posterior");
  // The value columns parse back to the samples and posteriors.
  auto vals = read_sample_values(in);
  REQUIRE(vals.size() == 6);
  CHECK(vals[0] == 0.0);
  CHECK(vals[1] == doctest::Approx(1.5));
  CHECK(vals[2] == doctest::Approx(r.posteriors[0]));
  CHECK(vals[3] == 1.0);
  CHECK(vals[4] == doctest::Approx(-0.25));
  CHECK(vals[5] == doctest::Approx(r.posteriors[1]));
}
