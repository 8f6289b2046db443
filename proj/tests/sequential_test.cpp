#include "dofcount/sequential.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace dofcount;
using oracle::deck_of;
using test_util::code_of;
using test_util::q;

namespace {

// Outcome sequence from value names, one per step of `plan`.
OutcomeSequence seq_of(const Deck& deck, const MeasurementPlan& plan, std::initializer_list<const char*> values) {
  OutcomeSequence s;
  std::size_t i = 0;
  for (const char* v : values) {
    const std::size_t var = plan.steps.at(i++);
    s.push_back({var, deck.spec().value_index(var, v)});
  }
  return s;
}

void expect_matches_card_paths(const Deck& deck, const MeasurementPlan& plan) {
  const auto dist = sequence_distribution(deck, plan);
  const auto oracle_dist = oracle::card_path_distribution(deck, plan.steps);
  std::size_t positive = 0;
  for (const auto& [path, p] : oracle_dist) {
    OutcomeSequence s;
    for (const auto& [var, val] : path) s.push_back({var, val});
    EXPECT_EQ(dist.probability(s), p);
    positive += p > 0;
  }
  EXPECT_EQ(dist.support_size(), positive);
  EXPECT_EQ(dist.total(), 1);
}

}  // namespace

TEST(SequenceDistribution, SuitTwiceIsDiagonal) {
  const Deck d = oracle::uniform4();
  const auto plan = make_plan(d.spec(), oracle::names({"Suit", "Suit"}));
  const auto dist = sequence_distribution(d, plan);
  EXPECT_EQ(dist.probability(seq_of(d, plan, {"H", "H"})), q(1, 2));
  EXPECT_EQ(dist.probability(seq_of(d, plan, {"S", "S"})), q(1, 2));
  EXPECT_EQ(dist.probability(seq_of(d, plan, {"H", "S"})), 0);
  EXPECT_EQ(dist.probability(seq_of(d, plan, {"S", "H"})), 0);
}

TEST(SequenceDistribution, SingleCardIsPointMass) {
  const Deck d = deck_of(oracle::face_suit_spec(), {{"KH", 1}});
  const auto dist = sequence_distribution(d, make_plan(d.spec(), oracle::names({"Face", "Suit", "Face", "Suit"})));
  ASSERT_EQ(dist.support_size(), 1u);
  EXPECT_EQ(dist.probabilities().begin()->second, 1);
}

TEST(SequenceDistribution, SuitFaceSuit) {
  const Deck d = oracle::uniform4();
  const auto plan = make_plan(d.spec(), oracle::names({"Suit", "Face", "Suit"}));
  const auto dist = sequence_distribution(d, plan);
  EXPECT_EQ(dist.probability(seq_of(d, plan, {"H", "K", "S"})), q(1, 8));
  EXPECT_EQ(dist.support_size(), 8u);
  EXPECT_EQ(dist.total(), 1);
}

TEST(SequenceDistribution, AgreesWithCardPathEnumeration) {
  RandomStream rng(31, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(2);
    const std::size_t v = 1 + rng.uniform_index(3);
    const Deck deck = oracle::random_deck(rng, n, v);
    MeasurementPlan plan;
    const std::size_t len = 1 + rng.uniform_index(3);
    for (std::size_t i = 0; i < len; ++i) plan.steps.push_back(rng.uniform_index(v));
    expect_matches_card_paths(deck, plan);
  }
}

TEST(SequenceDistribution, Errors) {
  const Deck d = oracle::uniform4();
  EXPECT_EQ(code_of([&] { sequence_distribution(Deck(d.spec_ptr()), MeasurementPlan{{0}}); }), ErrorCode::EmptyDeck);
  EXPECT_EQ(code_of([&] { sequence_distribution(d, MeasurementPlan{{0, 5}}); }), ErrorCode::UnknownVariable);
  EXPECT_EQ(code_of([&] { make_plan(d.spec(), oracle::names({"Color"})); }), ErrorCode::UnknownVariable);
}

TEST(Repeatability, PassesForDeviceRule) {
  EXPECT_TRUE(check_repeatability(oracle::uniform4()).passed);
  EXPECT_TRUE(check_repeatability(oracle::skewed3()).passed);
  EXPECT_EQ(code_of([] { check_repeatability(Deck(oracle::face_suit_spec())); }), ErrorCode::EmptyDeck);
}

// Negative controls: narrowing the subdeck still repeats; never filtering does not.
TEST(Repeatability, MutatedUpdateRules) {
  const Deck d = oracle::uniform4();
  EXPECT_TRUE(check_repeatability(d, NarrowSubdeck{}).passed);
  const auto broken = check_repeatability(d, KeepSubdeck{});
  ASSERT_FALSE(broken.passed);
  ASSERT_TRUE(broken.counterexample.has_value());
  EXPECT_NE((*broken.counterexample)[0].value, (*broken.counterexample)[1].value);
}

TEST(Witness, UniformFourCardDeck) {
  const Deck d = oracle::uniform4();
  const auto w = find_classicality_witness(d);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->sequence.size(), 3u);
  EXPECT_EQ(w->probability, q(1, 8));
  EXPECT_EQ(w->sequence[0].variable, w->sequence[2].variable);
  EXPECT_NE(w->sequence[0].value, w->sequence[2].value);
  EXPECT_FALSE(w->violated_constraint.empty());

  // The Suit-Face-Suit witness has the same probability.
  const auto plan = make_plan(d.spec(), oracle::names({"Suit", "Face", "Suit"}));
  EXPECT_EQ(sequence_distribution(d, plan).probability(seq_of(d, plan, {"H", "K", "S"})), q(1, 8));
}

TEST(Witness, NoneOrRefused) {
  EXPECT_FALSE(find_classicality_witness(deck_of(oracle::face_suit_spec(), {{"KH", 1}})).has_value());
  // Perfectly correlated deck: observing Face pins Suit, so no contradiction.
  EXPECT_FALSE(find_classicality_witness(deck_of(oracle::face_suit_spec(), {{"KH", 1}, {"QS", 2}})).has_value());
  // Depth 2 can only show plans like [a, a].
  EXPECT_FALSE(find_classicality_witness(oracle::uniform4(), 2).has_value());

  const auto urn = make_spec(urn_as_cardbox(3));
  EXPECT_EQ(code_of([&] { find_classicality_witness(urn_deck(urn, {1, 1, 1})); }), ErrorCode::SingleVariable);
  EXPECT_EQ(code_of([&] { find_classicality_witness(oracle::uniform4(), 4); }), ErrorCode::InvalidArgument);
}

TEST(PairOrder, Examples) {
  const Deck skew = oracle::skewed3();
  const auto [fs, sf] = pair_order_statistics(skew, "Face", "Suit");
  const std::size_t face = 0, suit = 1;
  const Outcome k{face, 0}, h{suit, 1};
  EXPECT_EQ(fs.probability({k, h}), q(1, 4));
  EXPECT_EQ(sf.probability({h, k}), q(1, 4));

  const Deck u = oracle::uniform4();
  const auto [a, b] = pair_order_statistics(u, face, suit);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      EXPECT_EQ(a.probability({{face, x}, {suit, y}}), q(1, 4));
      EXPECT_EQ(b.probability({{suit, y}, {face, x}}), q(1, 4));
    }
  }

  const Deck one = deck_of(oracle::face_suit_spec(), {{"QS", 2}});
  const auto [c, e] = pair_order_statistics(one, face, suit);
  EXPECT_EQ(c.support_size(), 1u);
  EXPECT_EQ(e.support_size(), 1u);
  EXPECT_EQ(c.probability({{face, 1}, {suit, 0}}), 1);
  EXPECT_EQ(e.probability({{suit, 0}, {face, 1}}), 1);

  EXPECT_EQ(code_of([&] { pair_order_statistics(u, face, face); }), ErrorCode::SameVariable);
  EXPECT_EQ(code_of([&] { pair_order_statistics(u, "Face", "Color"); }), ErrorCode::UnknownVariable);
}

TEST(Properties, RepeatabilityOverRandomDecks) {
  RandomStream rng(4242, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.uniform_index(3);
    const std::size_t v = 1 + rng.uniform_index(3);
    EXPECT_TRUE(check_repeatability(oracle::random_deck(rng, n, v)).passed);
  }
}

TEST(Properties, PairOrderInvarianceEqualsJointFrequency) {
  RandomStream rng(555, 0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng.uniform_index(3);
    const std::size_t v = 2 + rng.uniform_index(2);
    const Deck deck = oracle::random_deck(rng, n, v);
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = 0; b < v; ++b) {
        if (a == b) continue;
        const auto [ab, ba] = pair_order_statistics(deck, a, b);
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            std::uint64_t joint = 0;
            for (const auto& [card, m] : deck.entries()) joint += (card.values[a] == x && card.values[b] == y) * m;
            const Rational freq(BigInt(joint), BigInt(deck.total()));
            EXPECT_EQ(ab.probability({{a, x}, {b, y}}), freq);
            EXPECT_EQ(ba.probability({{b, y}, {a, x}}), freq);
          }
        }
      }
    }
  }
}

TEST(Properties, MonteCarloWithinThreeSigma) {
  const Deck decks[] = {oracle::uniform4(), oracle::skewed3()};
  for (const Deck& d : decks) {
    const auto plan = make_plan(d.spec(), oracle::names({"Suit", "Face", "Suit"}));
    const auto exact = sequence_distribution(d, plan);
    const std::uint64_t trials = 10000;
    const auto counts = simulate_sequences(d, plan, trials, RandomStream(8, 0));
    for (const auto& [s, c] : counts) EXPECT_GT(exact.probability(s), 0);
    for (const auto& [s, p] : exact.probabilities()) {
      const double pd = to_double(p);
      const auto it = counts.find(s);
      const double freq = it == counts.end() ? 0.0 : double(it->second) / trials;
      EXPECT_LE(std::abs(freq - pd), 3 * std::sqrt(pd * (1 - pd) / trials));
    }
  }
}

TEST(Simulate, DeterministicUnderSeed) {
  const Deck d = oracle::uniform4();
  const MeasurementPlan plan{{0, 1, 0}};
  EXPECT_EQ(simulate_sequences(d, plan, 500, RandomStream(3, 1)), simulate_sequences(d, plan, 500, RandomStream(3, 1)));
}
