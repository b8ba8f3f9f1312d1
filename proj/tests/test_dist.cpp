#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modec/dist.hpp"

using modec::Candidate;
using modec::CandidateSet;
using modec::ConfigError;
using modec::ProbDist;

TEST_CASE("from_probs validates mass and sign") {
  CHECK_NOTHROW(ProbDist::from_probs({0.5, 0.5}));
  CHECK_NOTHROW(ProbDist::from_probs({0.25, 0.25, 0.25, 0.25}));
  CHECK_THROWS_AS(ProbDist::from_probs({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbDist::from_probs({0.7, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(ProbDist::from_probs({1.1, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(ProbDist::from_probs({}), std::invalid_argument);

  // A top slice may carry less than full mass but never more.
  CHECK_NOTHROW(ProbDist::from_probs({0.5, 0.2, 0.0}, false));
  CHECK_THROWS_AS(ProbDist::from_probs({0.8, 0.4, 0.0}, false),
                  std::invalid_argument);
  CHECK_FALSE(ProbDist::from_probs({0.5, 0.2, 0.0}, false).complete());
  CHECK(ProbDist::from_probs({0.5, 0.5}).complete());
}

TEST_CASE("softmax from logits") {
  const std::vector<double> logits{0.0, 0.0};
  const ProbDist d = ProbDist::from_logits(logits);
  CHECK(d.prob(0) == doctest::Approx(0.5));
  CHECK(d.prob(1) == doctest::Approx(0.5));
  CHECK(d.complete());

  const std::vector<double> skew{std::log(0.7), std::log(0.2), std::log(0.1)};
  const ProbDist s = ProbDist::from_logits(skew);
  CHECK(s.prob(0) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s.prob(1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.prob(2) == doctest::Approx(0.1).epsilon(1e-12));

  // Shift invariance.
  const std::vector<double> shifted{100.0, 100.0, 99.0};
  const ProbDist sh = ProbDist::from_logits(shifted);
  CHECK(sh.prob(0) == doctest::Approx(sh.prob(1)));
  CHECK(sh.prob(0) > sh.prob(2));
}

TEST_CASE("argmax ties resolve to the lowest id") {
  CHECK(ProbDist::from_probs({0.4, 0.1, 0.4, 0.1}).argmax() == 0);
  CHECK(ProbDist::from_probs({0.1, 0.4, 0.4, 0.1}).argmax() == 1);
  CHECK(ProbDist::from_probs({1.0}).argmax() == 0);
}

TEST_CASE("top-k ordering and bounds") {
  const ProbDist d = ProbDist::from_probs({0.1, 0.3, 0.05, 0.3, 0.25});
  const CandidateSet top3 = modec::top_k_candidates(d, 3);
  REQUIRE(top3.size() == 3);
  // 0.3 tie: id 1 before id 3.
  CHECK(top3[0] == Candidate{1, 0.3});
  CHECK(top3[1] == Candidate{3, 0.3});
  CHECK(top3[2] == Candidate{4, 0.25});

  const CandidateSet all = modec::top_k_candidates(d, 5);
  CHECK(all.size() == 5);
  CHECK(all[4] == Candidate{2, 0.05});

  CHECK_THROWS_AS(modec::top_k_candidates(d, 0), ConfigError);
  CHECK_THROWS_AS(modec::top_k_candidates(d, 6), ConfigError);
}

TEST_CASE("nucleus keeps the smallest prefix reaching the mass") {
  const ProbDist d = ProbDist::from_probs({0.5, 0.3, 0.15, 0.05});
  CHECK(modec::nucleus_set(d, 0.5).size() == 1);
  CHECK(modec::nucleus_set(d, 0.6).size() == 2);
  CHECK(modec::nucleus_set(d, 0.8).size() == 2);
  CHECK(modec::nucleus_set(d, 0.81).size() == 3);
  CHECK(modec::nucleus_set(d, 0.95).size() == 3);
  CHECK(modec::nucleus_set(d, 1.0).size() == 4);

  // Zero-probability tokens never make it in, even at p = 1.
  const ProbDist z = ProbDist::from_probs({0.6, 0.4, 0.0});
  CHECK(modec::nucleus_set(z, 1.0).size() == 2);

  // Selection order within the set.
  const CandidateSet set = modec::nucleus_set(d, 0.81);
  CHECK(set[0].token == 0);
  CHECK(set[1].token == 1);
  CHECK(set[2].token == 2);

  CHECK_THROWS_AS(modec::nucleus_set(d, 0.0), ConfigError);
  CHECK_THROWS_AS(modec::nucleus_set(d, 1.0001), ConfigError);
  CHECK_THROWS_AS(
      modec::nucleus_set(ProbDist::from_probs({0.5, 0.2, 0.0}, false), 0.5),
      modec::CapabilityError);
}

TEST_CASE("top-k single-pass path matches a full sort") {
  std::mt19937_64 rng(411u);
  const auto oracle = [](const ProbDist& d, int k) {
    CandidateSet all;
    for (std::size_t id = 0; id < d.vocab_size(); ++id)
      all.push_back({static_cast<modec::TokenId>(id), d.prob(
          static_cast<modec::TokenId>(id))});
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
      if (a.prob != b.prob) return a.prob > b.prob;
      return a.token < b.token;
    });
    all.resize(static_cast<std::size_t>(k));
    return all;
  };
  // Sizes straddle the single-pass threshold and the 512-wide block filter;
  // quantized draws force cross-block probability ties.
  for (const std::size_t v : {41u, 100u, 513u, 1500u}) {
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<double> probs(v);
      std::uniform_int_distribution<int> level(0, rep % 2 == 0 ? 3 : 1000);
      double mass = 0.0;
      for (double& p : probs) mass += (p = 1.0 + level(rng));
      for (double& p : probs) p /= mass;
      const ProbDist d = ProbDist::from_probs(probs);
      for (const int k : {1, 2, 5, 10, 40}) {
        const CandidateSet got = modec::top_k_candidates(d, k);
        const CandidateSet want = oracle(d, k);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
          CHECK(got[i].token == want[i].token);
          CHECK(got[i].prob == want[i].prob);
        }
      }
    }
  }
}
