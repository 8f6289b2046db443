#ifndef DOFCOUNT_DECK_FILE_HPP
#define DOFCOUNT_DECK_FILE_HPP

// Deck documents:
//
//   {"variables": [{"name": "Face", "values": ["K", "Q"]}, ...],
//    "cards": [{"assignment": {"Face": "K", "Suit": "H"}, "count": 1}, ...]}
//
// Unknown keys anywhere are rejected. Repeated card assignments add up.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dofcount/error.hpp"
#include "dofcount/systems.hpp"

namespace dofcount {

namespace detail {

inline void require_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::SchemaViolation, where + " must be an object", where);
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw Error(ErrorCode::SchemaViolation, "unknown key '" + key + "' in " + where, key);
  }
  for (auto a : allowed) {
    if (!obj.contains(a)) {
      throw Error(ErrorCode::SchemaViolation, where + " is missing '" + std::string(a) + "'", std::string(a));
    }
  }
}

inline const std::string& require_string(const nlohmann::json& j, const std::string& field, const std::string& where) {
  if (!j.is_string()) throw Error(ErrorCode::SchemaViolation, where + " must be a string", field);
  return j.get_ref<const std::string&>();
}

}  // namespace detail

inline Deck parse_deck_file(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  detail::require_keys(doc, {"variables", "cards"}, "document");

  const auto& vars_json = doc.at("variables");
  if (!vars_json.is_array()) throw Error(ErrorCode::SchemaViolation, "'variables' must be an array", "variables");
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < vars_json.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    const auto& vj = vars_json[i];
    detail::require_keys(vj, {"name", "values"}, where);
    Variable var{detail::require_string(vj.at("name"), "name", where + ".name"), {}};
    if (!vj.at("values").is_array()) {
      throw Error(ErrorCode::SchemaViolation, where + ".values must be an array", "values");
    }
    for (const auto& value : vj.at("values")) {
      var.values.push_back(detail::require_string(value, "values", where + ".values[]"));
    }
    vars.push_back(std::move(var));
  }
  const SpecPtr spec = make_spec(SystemSpec(std::move(vars)));

  const auto& cards_json = doc.at("cards");
  if (!cards_json.is_array()) throw Error(ErrorCode::SchemaViolation, "'cards' must be an array", "cards");
  Deck deck(spec);
  for (std::size_t i = 0; i < cards_json.size(); ++i) {
    const std::string where = "cards[" + std::to_string(i) + "]";
    const auto& cj = cards_json[i];
    detail::require_keys(cj, {"assignment", "count"}, where);

    const auto& count_json = cj.at("count");
    if (!count_json.is_number_integer() || count_json.get<std::int64_t>() < 1) {
      throw Error(ErrorCode::SchemaViolation, where + ".count must be an integer >= 1", "count");
    }

    const auto& assignment = cj.at("assignment");
    if (!assignment.is_object()) {
      throw Error(ErrorCode::SchemaViolation, where + ".assignment must be an object", "assignment");
    }
    Card card{std::vector<std::uint32_t>(spec->variable_count(), 0)};
    std::vector<bool> seen(spec->variable_count(), false);
    for (const auto& [name, value] : assignment.items()) {
      std::size_t var = 0;
      try {
        var = spec->variable_index(name);
      } catch (const Error&) {
        throw Error(ErrorCode::SchemaViolation, where + ".assignment names unknown variable '" + name + "'", name);
      }
      const auto& value_str = detail::require_string(value, name, where + ".assignment." + name);
      try {
        card.values[var] = static_cast<std::uint32_t>(spec->value_index(var, value_str));
      } catch (const Error&) {
        throw Error(ErrorCode::SchemaViolation,
                    where + ".assignment." + name + " has unknown value '" + value_str + "'", name);
      }
      seen[var] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v) {
      if (!seen[v]) {
        const auto& name = spec->variable(v).name;
        throw Error(ErrorCode::SchemaViolation, where + ".assignment is missing '" + name + "'", name);
      }
    }
    deck.add(card, count_json.get<std::uint64_t>());
  }
  if (deck.empty()) throw Error(ErrorCode::SchemaViolation, "'cards' must contain at least one card", "cards");
  return deck;
}

inline std::string serialize_deck_file(const Deck& deck) {
  const SystemSpec& spec = deck.spec();
  nlohmann::ordered_json doc;
  doc["variables"] = nlohmann::ordered_json::array();
  for (const auto& var : spec.variables()) {
    doc["variables"].push_back({{"name", var.name}, {"values", var.values}});
  }
  doc["cards"] = nlohmann::ordered_json::array();
  for (const auto& [card, count] : deck.entries()) {
    nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
    for (std::size_t v = 0; v < card.values.size(); ++v) {
      assignment[spec.variable(v).name] = spec.variable(v).values[card.values[v]];
    }
    doc["cards"].push_back({{"assignment", assignment}, {"count", count}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace dofcount

#endif  // DOFCOUNT_DECK_FILE_HPP
