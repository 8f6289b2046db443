#ifndef DOFCOUNT_SEQUENTIAL_HPP
#define DOFCOUNT_SEQUENTIAL_HPP

// Exact statistics of observation sequences on a card-box.
//
// All distributions are computed by expanding the outcome tree with the
// observe update law; nothing here is sampled except simulate_sequences().

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dofcount/error.hpp"
#include "dofcount/random.hpp"
#include "dofcount/rational.hpp"
#include "dofcount/systems.hpp"

namespace dofcount {

/// Variable indices to press, in order.
struct MeasurementPlan {
  std::vector<std::size_t> steps;

  bool operator==(const MeasurementPlan&) const = default;
};

inline MeasurementPlan make_plan(const SystemSpec& spec, const std::vector<std::string>& names) {
  MeasurementPlan plan;
  for (const auto& name : names) plan.steps.push_back(spec.variable_index(name));
  return plan;
}

using OutcomeSequence = std::vector<Outcome>;

/// Probabilities of outcome sequences. Only sequences with positive
/// probability are stored.
class SequenceDistribution {
 public:
  using Map = std::map<OutcomeSequence, Rational>;

  SequenceDistribution() = default;
  explicit SequenceDistribution(Map probabilities) : probabilities_(std::move(probabilities)) {}

  const Map& probabilities() const noexcept { return probabilities_; }

  Rational probability(const OutcomeSequence& seq) const {
    auto it = probabilities_.find(seq);
    return it == probabilities_.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational sum = 0;
    for (const auto& [seq, p] : probabilities_) sum += p;
    return sum;
  }

  std::size_t support_size() const noexcept { return probabilities_.size(); }

 private:
  Map probabilities_;
};

// Update rules: given the full deck, the current subdeck and the observed
// (variable, value), produce the next subdeck. Only RebuildFromDeck is the
// device's rule; the others exist as controls for the repeatability check.
struct RebuildFromDeck {
  Deck operator()(const Deck& deck, const Deck&, std::size_t var, std::size_t value) const {
    return filter_deck(deck, var, value);
  }
};

struct NarrowSubdeck {
  Deck operator()(const Deck&, const Deck& subdeck, std::size_t var, std::size_t value) const {
    return filter_deck(subdeck, var, value);
  }
};

struct KeepSubdeck {
  Deck operator()(const Deck&, const Deck& subdeck, std::size_t, std::size_t) const { return subdeck; }
};

namespace detail {

inline void check_plan(const SystemSpec& spec, const MeasurementPlan& plan) {
  if (plan.steps.empty()) throw Error(ErrorCode::InvalidArgument, "a plan needs at least one step");
  for (auto var : plan.steps) spec.check_variable(var);
}

template <class UpdateRule>
void expand(const Deck& deck, const Deck& subdeck, const MeasurementPlan& plan, std::size_t step,
            OutcomeSequence& prefix, const Rational& weight, const UpdateRule& rule,
            SequenceDistribution::Map& out) {
  if (step == plan.steps.size()) {
    out[prefix] += weight;
    return;
  }
  const std::size_t var = plan.steps[step];
  const auto dist = value_distribution(subdeck, var);
  for (std::size_t y = 0; y < dist.size(); ++y) {
    if (dist[y] == 0) continue;
    const Deck next = rule(deck, subdeck, var, y);
    prefix.push_back(Outcome{var, y});
    expand(deck, next, plan, step + 1, prefix, weight * dist[y], rule, out);
    prefix.pop_back();
  }
}

}  // namespace detail

template <class UpdateRule = RebuildFromDeck>
SequenceDistribution sequence_distribution(const Deck& deck, const MeasurementPlan& plan,
                                           const UpdateRule& rule = {}) {
  if (deck.empty()) throw Error(ErrorCode::EmptyDeck, "a preparation needs at least one card");
  detail::check_plan(deck.spec(), plan);
  SequenceDistribution::Map out;
  OutcomeSequence prefix;
  detail::expand(deck, deck, plan, 0, prefix, Rational(1), rule, out);
  return SequenceDistribution(std::move(out));
}

struct RepeatabilityResult {
  bool passed = true;
  std::optional<OutcomeSequence> counterexample;
};

/// Passes iff observing any variable twice in a row never gives two
/// different values.
template <class UpdateRule = RebuildFromDeck>
RepeatabilityResult check_repeatability(const Deck& deck, const UpdateRule& rule = {}) {
  if (deck.empty()) throw Error(ErrorCode::EmptyDeck, "a preparation needs at least one card");
  for (std::size_t v = 0; v < deck.spec().variable_count(); ++v) {
    const auto dist = sequence_distribution(deck, MeasurementPlan{{v, v}}, rule);
    for (const auto& [seq, p] : dist.probabilities()) {
      if (seq[0].value != seq[1].value && p > 0) return {false, seq};
    }
  }
  return {};
}

/// A positive-probability sequence in which one variable is seen with two
/// different values. No model in which every card carries fixed values that
/// are merely revealed can produce such a sequence.
struct ClassicalityWitness {
  OutcomeSequence sequence;
  Rational probability;
  std::string violated_constraint;
};

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> contradictory_repeat(const OutcomeSequence& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i].variable == seq[j].variable && seq[i].value != seq[j].value) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

inline bool has_repeated_variable(const std::vector<std::size_t>& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      if (steps[i] == steps[j]) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Searches every plan of length 2..max_length (in lexicographic order of
/// variable indices) for a contradictory repeat. Lengths above 3 are refused;
/// with the rebuild-from-deck rule a witness, if any, already shows at 3.
inline std::optional<ClassicalityWitness> find_classicality_witness(const Deck& deck, std::size_t max_length = 3) {
  if (deck.empty()) throw Error(ErrorCode::EmptyDeck, "a preparation needs at least one card");
  const SystemSpec& spec = deck.spec();
  const std::size_t v_count = spec.variable_count();
  if (v_count < 2) {
    throw Error(ErrorCode::SingleVariable, "a single-variable system has nothing to interleave");
  }
  if (max_length > 3) throw Error(ErrorCode::InvalidArgument, "witness search depth is capped at 3");

  for (std::size_t length = 2; length <= max_length; ++length) {
    std::vector<std::size_t> steps(length, 0);
    while (true) {
      if (detail::has_repeated_variable(steps)) {
        const auto dist = sequence_distribution(deck, MeasurementPlan{steps});
        for (const auto& [seq, p] : dist.probabilities()) {
          if (auto hit = detail::contradictory_repeat(seq); hit && p > 0) {
            const auto& first = seq[hit->first];
            const auto& second = seq[hit->second];
            std::string what = spec.variable(first.variable).name + " observed as " + value_name(spec, first) +
                               " then " + value_name(spec, second);
            return ClassicalityWitness{seq, p, std::move(what)};
          }
        }
      }
      std::size_t pos = length;
      while (pos > 0 && ++steps[pos - 1] == v_count) steps[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return std::nullopt;
}

/// Exact distributions of [a, b] and [b, a] from the full-deck state.
inline std::pair<SequenceDistribution, SequenceDistribution> pair_order_statistics(const Deck& deck, std::size_t a,
                                                                                   std::size_t b) {
  if (deck.empty()) throw Error(ErrorCode::EmptyDeck, "a preparation needs at least one card");
  deck.spec().check_variable(a);
  deck.spec().check_variable(b);
  if (a == b) throw Error(ErrorCode::SameVariable, "pair statistics need two different variables");
  return {sequence_distribution(deck, MeasurementPlan{{a, b}}), sequence_distribution(deck, MeasurementPlan{{b, a}})};
}

inline std::pair<SequenceDistribution, SequenceDistribution> pair_order_statistics(const Deck& deck,
                                                                                   std::string_view a,
                                                                                   std::string_view b) {
  return pair_order_statistics(deck, deck.spec().variable_index(a), deck.spec().variable_index(b));
}

/// Runs `trials` independent presses of `plan` through observe(); trial t
/// draws from rng.child(t).
inline std::map<OutcomeSequence, std::uint64_t> simulate_sequences(const Deck& deck, const MeasurementPlan& plan,
                                                                    std::uint64_t trials, const RandomStream& rng) {
  detail::check_plan(deck.spec(), plan);
  const BoxState start = initial_state(deck);
  std::map<OutcomeSequence, std::uint64_t> counts;
  OutcomeSequence seq;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream trial_rng = rng.child(t);
    BoxState state = start;
    seq.clear();
    for (auto var : plan.steps) {
      auto [outcome, next] = observe(state, var, trial_rng);
      seq.push_back(outcome);
      state = std::move(next);
    }
    ++counts[seq];
  }
  return counts;
}

}  // namespace dofcount

#endif  // DOFCOUNT_SEQUENTIAL_HPP
