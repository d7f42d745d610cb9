#include <doctest.h>

#include <cmath>
#include <random>

#include "qubodec/bp.hpp"
#include "qubodec/postprocess.hpp"
#include "support/helpers.hpp"

using namespace qubodec;
namespace ts = testsupport;

namespace {

const char* kToySix =
    "1 1 0 1 0 0\n"
    "0 1 1 0 1 0\n"
    "0 0 1 1 0 1\n";

SampleSet manual_set(std::vector<Sample> samples) {
  SampleSet set;
  set.samples = std::move(samples);
  return set;
}

}  // namespace

TEST_CASE("selection_name spells out each mode") {
  CHECK(selection_name(Selection::kMinDistance) == "min-distance");
  CHECK(selection_name(Selection::kEnergyFallback) == "lowest-energy-fallback");
  CHECK(selection_name(Selection::kHardDecision) == "hard-decision");
}

TEST_CASE("euclidean_distance modulates the bits before comparing") {
  // bits (0,1) -> (+1,-1); samples (1,-1) -> distance 0.
  CHECK(euclidean_distance({0, 1}, {1.0, -1.0}) == doctest::Approx(0.0));
  CHECK(euclidean_distance({0, 0}, {1.0, -1.0}) == doctest::Approx(2.0));
  CHECK(euclidean_distance({1, 0}, {0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(euclidean_distance({1, 0}, {0.5}), std::invalid_argument);
}

TEST_CASE("filter_valid keeps distinct codeword projections in sample order") {
  auto h = ts::dense("110\n011\n");  // codewords 000 and 111
  // Assignments are 3 codeword bits + 2 ancillas (one per check).
  auto set = manual_set({
      {{1, 1, 1, 1, 1}, -2.0, 3},  // valid projection 111
      {{1, 0, 1, 0, 0}, -1.0, 1},  // syndrome != 0, dropped
      {{0, 0, 0, 1, 0}, -0.5, 1},  // valid projection 000
      {{1, 1, 1, 0, 0}, 0.5, 1},   // duplicate projection 111, dropped
  });
  auto candidates = filter_valid(set, h);
  REQUIRE(candidates.size() == 2);
  CHECK(candidates[0].bits == BitVec{1, 1, 1});
  CHECK(candidates[0].energy == -2.0);  // first (lowest-energy) occurrence wins
  CHECK(candidates[1].bits == BitVec{0, 0, 0});
  CHECK(candidates[1].energy == -0.5);

  auto none = manual_set({{{1, 0, 0, 0, 0}, 0.0, 1}});
  CHECK(filter_valid(none, h).empty());

  auto runt = manual_set({{{1, 0}, 0.0, 1}});
  CHECK_THROWS_AS(filter_valid(runt, h), std::invalid_argument);
}

TEST_CASE("select_min_distance picks the closest candidate and reports how") {
  ReceivedVector r = received_from_samples({0.8, 0.9, 1.2}, 1.0, 0.0);
  std::vector<ValidCandidate> candidates{{{1, 1, 1}, -5.0}, {{0, 0, 0}, 2.0}};
  auto res = select_min_distance(candidates, r);
  CHECK(res.bits == BitVec{0, 0, 0});  // bits 0 modulate to +1, nearest to r
  CHECK(res.valid);
  CHECK(res.selection == Selection::kMinDistance);
  CHECK(res.energy == 2.0);
  CHECK(res.candidates_considered == 2);
  CHECK(res.distance == doctest::Approx(euclidean_distance({0, 0, 0}, r.samples)));

  ReceivedVector flipped = received_from_samples({-0.8, -0.9, -1.2}, 1.0, 0.0);
  CHECK(select_min_distance(candidates, flipped).bits == BitVec{1, 1, 1});

  CHECK_THROWS_AS(select_min_distance({}, r), std::invalid_argument);
}

TEST_CASE("select_min_distance breaks exact ties by energy, then lexicographically") {
  // The all-zero samples are equidistant from 000 and 111.
  ReceivedVector r = received_from_samples({0.0, 0.0, 0.0}, 1.0, 0.0);
  auto res = select_min_distance({{{1, 1, 1}, -1.0}, {{0, 0, 0}, 2.0}}, r);
  CHECK(res.bits == BitVec{1, 1, 1});  // lower energy wins the tie
  auto res2 = select_min_distance({{{1, 1, 1}, 0.5}, {{0, 0, 0}, 0.5}}, r);
  CHECK(res2.bits == BitVec{0, 0, 0});  // equal energy: lexicographically smaller
}

TEST_CASE("decode picks the true codeword from an exhaustive sample set") {
  auto h = ts::dense(kToySix);
  auto g = derive_generator(h);
  Qubo constraint = build_constraint_metric(h);
  std::mt19937_64 rng(424242);
  auto codewords = ts::all_codewords(g);

  for (int trial = 0; trial < 25; ++trial) {
    BitVec cw = encode(ts::random_bits(g.k(), rng), g);
    auto r = transmit(cw, ChannelConfig::from_snr_db(6.0), rng);
    Qubo full = compose(build_distance_metric(r.posteriors), constraint, 0.5, 1.0);
    auto set = sample_exhaustive(full);
    auto res = decode(set, r, h);
    CHECK(res.valid);
    CHECK(res.selection == Selection::kMinDistance);
    CHECK(res.bits == ts::naive_ml(r.samples, codewords));
    CHECK(res.distance == doctest::Approx(euclidean_distance(res.bits, r.samples)));
    CHECK(res.candidates_considered >= 1);
    CHECK(std::isfinite(res.energy));
  }
}

TEST_CASE("decode falls back to the lowest-energy projection when nothing is valid") {
  auto h = ts::dense("110\n011\n");
  ReceivedVector r = received_from_samples({0.1, -0.2, 0.3}, 1.0, 0.0);
  auto set = manual_set({
      {{1, 0, 0, 0, 0}, -3.0, 2},  // invalid, lowest energy
      {{0, 1, 0, 1, 1}, -1.0, 1},  // invalid
  });
  auto res = decode(set, r, h);
  CHECK_FALSE(res.valid);
  CHECK(res.selection == Selection::kEnergyFallback);
  CHECK(res.bits == BitVec{1, 0, 0});
  CHECK(res.energy == -3.0);
  CHECK(res.candidates_considered == 0);
  CHECK(res.distance == doctest::Approx(euclidean_distance({1, 0, 0}, r.samples)));

  CHECK_THROWS_AS(decode(manual_set({}), r, h), std::invalid_argument);
}

TEST_CASE("ml_decode matches a naive scan of the full codebook") {
  auto h = ts::dense(kToySix);
  auto g = derive_generator(h);
  auto codewords = ts::all_codewords(g);
  std::mt19937_64 rng(777);
  for (double snr : {-2.0, 3.0, 8.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      BitVec cw = encode(ts::random_bits(g.k(), rng), g);
      auto r = transmit(cw, ChannelConfig::from_snr_db(snr), rng);
      auto res = ml_decode(r, g);
      CHECK(res.bits == ts::naive_ml(r.samples, codewords));
      CHECK(res.valid);
      CHECK(res.selection == Selection::kMinDistance);
      CHECK(res.candidates_considered == (1 << g.k()));
      CHECK(std::isnan(res.energy));
      CHECK(res.distance == doctest::Approx(euclidean_distance(res.bits, r.samples)));
    }
  }
}

TEST_CASE("ml_decode matches the naive scan on the medium code") {
  const std::string path = std::string(QUBODEC_DATA_DIR) + "/codes/ldpc_32_16.alist";
  auto h = parse_alist_file(path);
  auto g = derive_generator(h);
  auto codewords = ts::all_codewords(g);  // 65536 words
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    BitVec cw = encode(ts::random_bits(g.k(), rng), g);
    auto r = transmit(cw, ChannelConfig::from_snr_db(3.0), rng);
    auto res = ml_decode(r, g);
    CHECK(res.bits == ts::naive_ml(r.samples, codewords));
    CHECK(is_codeword(res.bits, h));
  }
}

TEST_CASE("ml_decode validates its inputs") {
  auto h = ts::dense(kToySix);
  auto g = derive_generator(h);
  ReceivedVector wrong = received_from_samples({1.0, -1.0}, 1.0, 0.0);
  CHECK_THROWS_AS(ml_decode(wrong, g), std::invalid_argument);

  // A single length-32 parity check leaves k = 31 > the enumeration guard.
  auto wide = ts::dense(std::string(32, '1') + "\n");
  auto gw = derive_generator(wide);
  REQUIRE(gw.k() == 31);
  ReceivedVector r32 = received_from_samples(std::vector<double>(32, 1.0), 1.0, 0.0);
  CHECK_THROWS_AS(ml_decode(r32, gw), std::invalid_argument);
}

TEST_CASE("more samples never worsen the selected distance") {
  auto h = ts::dense(kToySix);
  Qubo constraint = build_constraint_metric(h);
  auto g = derive_generator(h);
  std::mt19937_64 rng(606);
  int both_valid = 0;
  for (int trial = 0; trial < 20; ++trial) {
    BitVec cw = encode(ts::random_bits(g.k(), rng), g);
    auto r = transmit(cw, ChannelConfig::from_snr_db(2.0), rng);
    Qubo full = compose(build_distance_metric(r.posteriors), constraint, 2.0, 1.0);
    // The 10-read set is exactly the first 10 reads of the 60-read set.
    std::mt19937_64 sa_rng(trial), sa_rng2(trial);
    auto small = sample_sa(full, {0.1, 10.0, 150, 10}, sa_rng);
    auto large = sample_sa(full, {0.1, 10.0, 150, 60}, sa_rng2);
    auto res_small = decode(small, r, h);
    auto res_large = decode(large, r, h);
    if (res_small.valid) {
      REQUIRE(res_large.valid);  // a superset cannot lose the valid candidate
      CHECK(res_large.distance <= res_small.distance + 1e-12);
      ++both_valid;
    }
  }
  CHECK(both_valid >= 15);  // the property must actually have been exercised
}
