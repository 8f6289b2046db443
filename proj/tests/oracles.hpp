#ifndef DOFCOUNT_TESTS_ORACLES_HPP
#define DOFCOUNT_TESTS_ORACLES_HPP

// Independent reference computations used only by the tests. None of these
// call into the library code paths they are used to check.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "dofcount/dofcount.hpp"

namespace dofcount::oracle {

inline std::vector<std::string> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

/// Face {K,Q} x Suit {S,H}.
inline SpecPtr face_suit_spec() {
  return make_spec(SystemSpec({{"Face", {"K", "Q"}}, {"Suit", {"S", "H"}}}));
}

/// Deck from entries like {"KS", 1}: one character per variable value.
inline Deck deck_of(const SpecPtr& spec, std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  Deck deck(spec);
  for (const auto& [code, count] : entries) {
    std::vector<std::string> values;
    for (const char* c = code; *c; ++c) values.emplace_back(1, *c);
    deck.add(make_card(*spec, values), count);
  }
  return deck;
}

inline Deck uniform4() { return deck_of(face_suit_spec(), {{"KS", 1}, {"KH", 1}, {"QS", 1}, {"QH", 1}}); }
inline Deck skewed3() { return deck_of(face_suit_spec(), {{"KS", 1}, {"KH", 1}, {"QS", 2}}); }

/// Card types enumerated by an explicit mixed-radix counter.
inline std::vector<std::vector<std::uint32_t>> card_types(std::size_t n, std::size_t v) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < v; ++i) total *= n;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> card(v);
    std::uint64_t c = code;
    for (std::size_t i = v; i-- > 0;) {
      card[i] = static_cast<std::uint32_t>(c % n);
      c /= n;
    }
    out.push_back(std::move(card));
  }
  return out;
}

/// Fiducial vector by direct counting: entry (var, y) is the fraction of
/// cards (with multiplicity) carrying y for var.
inline std::vector<Rational> counted_fiducials(std::size_t n, std::size_t v,
                                               const std::vector<std::vector<std::uint32_t>>& types,
                                               const std::vector<std::uint64_t>& mult) {
  std::vector<std::uint64_t> counts(n * v, 0);
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < types.size(); ++t) {
    total += mult[t];
    for (std::size_t var = 0; var < v; ++var) counts[var * n + types[t][var]] += mult[t];
  }
  std::vector<Rational> row;
  for (auto c : counts) row.emplace_back(BigInt(c), BigInt(total));
  return row;
}

/// Fiducial rows for every nonempty deck with multiplicities in
/// [0, max_mult] over all N^V card types. Returns empty if that would be
/// more than `limit` decks.
inline std::vector<std::vector<Rational>> exhaustive_deck_rows(std::size_t n, std::size_t v, std::uint64_t max_mult,
                                                               std::uint64_t limit) {
  const auto types = card_types(n, v);
  long double count = 1;
  for (std::size_t i = 0; i < types.size(); ++i) count *= static_cast<long double>(max_mult + 1);
  if (count - 1 > static_cast<long double>(limit)) return {};
  std::vector<std::vector<Rational>> rows;
  std::vector<std::uint64_t> mult(types.size(), 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < mult.size() && mult[pos] == max_mult) mult[pos++] = 0;
    if (pos == mult.size()) break;
    ++mult[pos];
    rows.push_back(counted_fiducials(n, v, types, mult));
  }
  return rows;
}

/// Fiducial rows of the single-card-type decks. Every deck's fiducial vector
/// is a convex combination of these, so their span is the span of all decks.
inline std::vector<std::vector<Rational>> point_deck_rows(std::size_t n, std::size_t v) {
  const auto types = card_types(n, v);
  std::vector<std::vector<Rational>> rows;
  for (std::size_t t = 0; t < types.size(); ++t) {
    std::vector<std::uint64_t> mult(types.size(), 0);
    mult[t] = 1;
    rows.push_back(counted_fiducials(n, v, types, mult));
  }
  return rows;
}

/// Rank modulo the prime 2^61 - 1 after clearing denominators row by row.
/// Never exceeds the rational rank and equals it unless the prime divides
/// some minor, which does not happen for the small matrices used here.
inline std::size_t rank_mod_prime(const std::vector<std::vector<Rational>>& rows) {
  using u128 = unsigned __int128;
  constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  auto mulmod = [](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>((u128)a * b % p); };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a)) {
      if (e & 1) r = mulmod(r, a);
    }
    return r;
  };
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& row : rows) {
    BigInt lcm = 1;
    for (const auto& x : row) {
      const BigInt d = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<std::uint64_t> r;
    for (const auto& x : row) {
      BigInt num = boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x));
      BigInt red = num % BigInt(p);
      if (red < 0) red += BigInt(p);
      r.push_back(red.convert_to<std::uint64_t>());
    }
    m.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const std::uint64_t inv = powmod(m[rank][c], p - 2);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t f = mulmod(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = (m[r][k] + p - mulmod(f, m[rank][k])) % p;
    }
    ++rank;
  }
  return rank;
}

/// Numeric rank by column-pivoted Householder QR.
inline std::size_t rank_by_qr(const std::vector<std::vector<double>>& rows, double tol) {
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(tol);
  return static_cast<std::size_t>(qr.rank());
}

/// Sequence probabilities by enumerating which physical card is drawn at
/// each press, rather than which value is shown.
inline std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational> card_path_distribution(
    const Deck& deck, const std::vector<std::size_t>& plan) {
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational> out;
  std::vector<std::pair<std::size_t, std::size_t>> prefix;
  auto recurse = [&](auto&& self, const std::vector<std::pair<Card, std::uint64_t>>& sub, std::size_t step,
                     Rational weight) -> void {
    if (step == plan.size()) {
      out[prefix] += weight;
      return;
    }
    std::uint64_t total = 0;
    for (const auto& [c, m] : sub) total += m;
    const std::size_t var = plan[step];
    for (const auto& [card, m] : sub) {
      const std::size_t y = card.values[var];
      std::vector<std::pair<Card, std::uint64_t>> next;
      for (const auto& [c2, m2] : deck.entries()) {
        if (c2.values[var] == y) next.emplace_back(c2, m2);
      }
      prefix.emplace_back(var, y);
      self(self, next, step + 1, weight * Rational(BigInt(m), BigInt(total)));
      prefix.pop_back();
    }
  };
  std::vector<std::pair<Card, std::uint64_t>> start(deck.entries().begin(), deck.entries().end());
  recurse(recurse, start, 0, Rational(1));
  return out;
}

/// A random deck over an arbitrary (N, V) card-box, for property tests.
inline Deck random_deck(RandomStream& rng, std::size_t n, std::size_t v, std::uint64_t max_mult = 3) {
  const SpecPtr spec = uniform_cardbox_spec(n, v);
  Deck deck(spec);
  const auto types = all_card_types(*spec);
  while (deck.empty()) {
    for (const auto& c : types) {
      // Sparse decks as well as dense ones.
      if (rng.uniform_index(2) == 0) deck.add(c, rng.uniform_between(1, max_mult));
    }
  }
  return deck;
}

}  // namespace dofcount::oracle

#endif  // DOFCOUNT_TESTS_ORACLES_HPP
