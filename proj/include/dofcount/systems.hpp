#ifndef DOFCOUNT_SYSTEMS_HPP
#define DOFCOUNT_SYSTEMS_HPP

// Card-box and urn operational systems.
//
// A card-box holds a deck of cards, each carrying one value for every
// variable, and a subdeck. Pressing the button for a variable draws a card
// uniformly (by multiplicity) from the subdeck, displays that card's value y,
// and replaces the subdeck with every card of the *full* deck whose value for
// that variable is y. The urn is the one-variable special case.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dofcount/error.hpp"
#include "dofcount/random.hpp"
#include "dofcount/rational.hpp"

namespace dofcount {

struct Variable {
  std::string name;
  std::vector<std::string> values;

  bool operator==(const Variable&) const = default;
};

/// V named variables, each with the same N named values. Construction does
/// not check anything; pass through validate_spec() before use.
class SystemSpec {
 public:
  SystemSpec() = default;
  explicit SystemSpec(std::vector<Variable> variables) : variables_(std::move(variables)) {}

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const Variable& variable(std::size_t index) const { return variables_.at(index); }

  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t value_count() const noexcept {
    return variables_.empty() ? 0 : variables_.front().values.size();
  }

  std::size_t variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == name) return i;
    }
    throw Error(ErrorCode::UnknownVariable, "no variable named '" + std::string(name) + "'",
                std::string(name));
  }

  std::size_t value_index(std::size_t var, std::string_view value) const {
    check_variable(var);
    const auto& values = variables_[var].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == value) return i;
    }
    throw Error(ErrorCode::UnknownValue,
                "variable '" + variables_[var].name + "' has no value '" + std::string(value) + "'",
                std::string(value));
  }

  void check_variable(std::size_t var) const {
    if (var >= variables_.size()) {
      throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(var) + " out of range");
    }
  }

  void check_value(std::size_t var, std::size_t value) const {
    check_variable(var);
    if (value >= variables_[var].values.size()) {
      throw Error(ErrorCode::UnknownValue, "value index " + std::to_string(value) + " out of range for '" +
                                               variables_[var].name + "'");
    }
  }

  /// Number of distinct card types, N^V.
  std::uint64_t card_type_count() const {
    std::uint64_t count = 1;
    for (const auto& v : variables_) count *= v.values.size();
    return count;
  }

  bool operator==(const SystemSpec&) const = default;

 private:
  std::vector<Variable> variables_;
};

using SpecPtr = std::shared_ptr<const SystemSpec>;

inline SystemSpec validate_spec(SystemSpec spec) {
  const auto& vars = spec.variables();
  if (vars.empty()) throw Error(ErrorCode::EmptySpec, "a system needs at least one variable");
  const std::size_t n = vars.front().values.size();
  if (n < 2) {
    throw Error(ErrorCode::EmptySpec, "variables need at least two values", vars.front().name);
  }
  std::set<std::string_view> names;
  for (const auto& var : vars) {
    if (!names.insert(var.name).second) {
      throw Error(ErrorCode::DuplicateName, "variable '" + var.name + "' declared twice", var.name);
    }
    if (var.values.size() != n) {
      throw Error(ErrorCode::BadArity,
                  "variable '" + var.name + "' has " + std::to_string(var.values.size()) +
                      " values, expected " + std::to_string(n),
                  var.name);
    }
    std::set<std::string_view> seen;
    for (const auto& value : var.values) {
      if (!seen.insert(value).second) {
        throw Error(ErrorCode::DuplicateName, "value '" + value + "' repeated in '" + var.name + "'", value);
      }
    }
  }
  return spec;
}

inline SpecPtr make_spec(SystemSpec spec) {
  return std::make_shared<const SystemSpec>(validate_spec(std::move(spec)));
}

/// One value index per variable, in spec order.
struct Card {
  std::vector<std::uint32_t> values;

  auto operator<=>(const Card&) const = default;
  bool operator==(const Card&) const = default;
};

/// Builds a card from value names listed in spec variable order.
inline Card make_card(const SystemSpec& spec, const std::vector<std::string>& value_names) {
  if (value_names.size() != spec.variable_count()) {
    throw Error(ErrorCode::BadArity, "card needs one value per variable");
  }
  Card card;
  for (std::size_t v = 0; v < value_names.size(); ++v) {
    card.values.push_back(static_cast<std::uint32_t>(spec.value_index(v, value_names[v])));
  }
  return card;
}

inline void check_card(const SystemSpec& spec, const Card& card) {
  if (card.values.size() != spec.variable_count()) {
    throw Error(ErrorCode::BadArity, "card needs exactly one value per variable");
  }
  for (std::size_t v = 0; v < card.values.size(); ++v) spec.check_value(v, card.values[v]);
}

struct Outcome {
  std::size_t variable = 0;
  std::size_t value = 0;

  auto operator<=>(const Outcome&) const = default;
  bool operator==(const Outcome&) const = default;
};

inline std::string value_name(const SystemSpec& spec, const Outcome& o) {
  return spec.variable(o.variable).values.at(o.value);
}

/// A multiset of cards. May be empty only as the result of filter_deck();
/// preparations require a nonempty deck.
class Deck {
 public:
  using Entries = std::map<Card, std::uint64_t>;

  explicit Deck(SpecPtr spec) : spec_(std::move(spec)) {
    if (!spec_) throw Error(ErrorCode::EmptySpec, "deck requires a system spec");
  }

  Deck(SpecPtr spec, const Entries& entries) : Deck(std::move(spec)) {
    for (const auto& [card, count] : entries) add(card, count);
  }

  const SystemSpec& spec() const noexcept { return *spec_; }
  const SpecPtr& spec_ptr() const noexcept { return spec_; }
  const Entries& entries() const noexcept { return entries_; }

  /// Adds `count` copies; zero counts are ignored.
  void add(const Card& card, std::uint64_t count = 1) {
    check_card(*spec_, card);
    if (count == 0) return;
    entries_[card] += count;
    total_ += count;
  }

  bool empty() const noexcept { return entries_.empty(); }
  std::uint64_t total() const noexcept { return total_; }

  std::uint64_t multiplicity(const Card& card) const {
    auto it = entries_.find(card);
    return it == entries_.end() ? 0 : it->second;
  }

  /// Total multiplicity of cards with `var` = `value`.
  std::uint64_t count_where(std::size_t var, std::size_t value) const {
    std::uint64_t count = 0;
    for (const auto& [card, mult] : entries_) {
      if (card.values[var] == value) count += mult;
    }
    return count;
  }

  bool operator==(const Deck& other) const {
    return entries_ == other.entries_ && (spec_ == other.spec_ || *spec_ == *other.spec_);
  }

 private:
  SpecPtr spec_;
  Entries entries_;
  std::uint64_t total_ = 0;
};

inline Deck filter_deck(const Deck& deck, std::size_t var, std::size_t value) {
  deck.spec().check_value(var, value);
  Deck result(deck.spec_ptr());
  for (const auto& [card, mult] : deck.entries()) {
    if (card.values[var] == value) result.add(card, mult);
  }
  return result;
}

inline Deck filter_deck(const Deck& deck, std::string_view var, std::string_view value) {
  const auto v = deck.spec().variable_index(var);
  return filter_deck(deck, v, deck.spec().value_index(v, value));
}

/// p(y) for each value y of `var`, in spec value order, for a draw from `cards`.
inline std::vector<Rational> value_distribution(const Deck& cards, std::size_t var) {
  cards.spec().check_variable(var);
  if (cards.empty()) throw Error(ErrorCode::EmptySubdeck, "cannot draw from an empty subdeck");
  std::vector<std::uint64_t> counts(cards.spec().value_count(), 0);
  for (const auto& [card, mult] : cards.entries()) counts[card.values[var]] += mult;
  std::vector<Rational> dist;
  dist.reserve(counts.size());
  for (auto c : counts) dist.push_back(make_rational(c, cards.total()));
  return dist;
}

/// Draws a card uniformly by multiplicity and returns its value of `var`.
inline std::size_t draw_value(const Deck& cards, std::size_t var, RandomStream& rng) {
  cards.spec().check_variable(var);
  if (cards.empty()) throw Error(ErrorCode::EmptySubdeck, "cannot draw from an empty subdeck");
  std::uint64_t pick = rng.uniform_index(cards.total());
  for (const auto& [card, mult] : cards.entries()) {
    if (pick < mult) return card.values[var];
    pick -= mult;
  }
  throw Error(ErrorCode::InvariantViolation, "deck total disagrees with its entries");
}

/// The device state: the full deck and the current subdeck.
class BoxState {
 public:
  const Deck& deck() const noexcept { return *deck_; }
  const Deck& subdeck() const noexcept { return subdeck_; }
  const SystemSpec& spec() const noexcept { return deck_->spec(); }

 private:
  BoxState(std::shared_ptr<const Deck> deck, Deck subdeck)
      : deck_(std::move(deck)), subdeck_(std::move(subdeck)) {}

  friend BoxState initial_state(const Deck& deck);
  friend std::pair<Outcome, BoxState> observe(const BoxState& state, std::size_t var, RandomStream& rng);

  std::shared_ptr<const Deck> deck_;
  Deck subdeck_;
};

/// A preparation: loads `deck` with the subdeck set to the whole deck.
inline BoxState initial_state(const Deck& deck) {
  if (deck.empty()) throw Error(ErrorCode::EmptyDeck, "a preparation needs at least one card");
  return BoxState(std::make_shared<const Deck>(deck), deck);
}

inline std::vector<Rational> outcome_distribution(const BoxState& state, std::size_t var) {
  return value_distribution(state.subdeck(), var);
}

inline std::vector<Rational> outcome_distribution(const BoxState& state, std::string_view var) {
  return outcome_distribution(state, state.spec().variable_index(var));
}

inline std::pair<Outcome, BoxState> observe(const BoxState& state, std::size_t var, RandomStream& rng) {
  const std::size_t y = draw_value(state.subdeck(), var, rng);
  Deck rebuilt = filter_deck(state.deck(), var, y);
  if (rebuilt.empty()) {
    throw Error(ErrorCode::InvariantViolation, "observed value has no card in the full deck");
  }
  return {Outcome{var, y}, BoxState(state.deck_, std::move(rebuilt))};
}

inline std::pair<Outcome, BoxState> observe(const BoxState& state, std::string_view var, RandomStream& rng) {
  return observe(state, state.spec().variable_index(var), rng);
}

/// The single-variable urn: one variable "Pos" with values p1..pn.
inline SystemSpec urn_as_cardbox(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadArity, "an urn needs at least two positions");
  Variable pos{"Pos", {}};
  for (std::size_t i = 1; i <= n; ++i) pos.values.push_back("p" + std::to_string(i));
  return validate_spec(SystemSpec({std::move(pos)}));
}

/// Urn state with `counts[i]` balls at position i.
inline Deck urn_deck(const SpecPtr& urn, const std::vector<std::uint64_t>& counts) {
  if (urn->variable_count() != 1 || counts.size() != urn->value_count()) {
    throw Error(ErrorCode::BadArity, "urn deck needs one count per position");
  }
  Deck deck(urn);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    deck.add(Card{{static_cast<std::uint32_t>(i)}}, counts[i]);
  }
  return deck;
}

/// Every card type of `spec` in lexicographic value-index order.
inline std::vector<Card> all_card_types(const SystemSpec& spec) {
  std::vector<Card> cards;
  const std::size_t v_count = spec.variable_count();
  const auto n = static_cast<std::uint32_t>(spec.value_count());
  if (v_count == 0) return cards;
  Card card{std::vector<std::uint32_t>(v_count, 0)};
  while (true) {
    cards.push_back(card);
    std::size_t pos = v_count;
    while (pos > 0) {
      --pos;
      if (++card.values[pos] < n) break;
      card.values[pos] = 0;
      if (pos == 0) return cards;
    }
  }
}

}  // namespace dofcount

#endif  // DOFCOUNT_SYSTEMS_HPP
