#ifndef DOFCOUNT_TOMOGRAPHY_HPP
#define DOFCOUNT_TOMOGRAPHY_HPP

// Degrees-of-freedom estimation.
//
// A state is summarized by its fiducial vector: the probability of every
// value of every variable (or every outcome of every basis). Stacking the
// fiducial vectors of many prepared states gives a probability matrix whose
// rank is the number of independent probabilities needed to pin down a state
// (K_rank). K_naive is the plain count of fiducial probabilities.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dofcount/error.hpp"
#include "dofcount/linalg.hpp"
#include "dofcount/quantum.hpp"
#include "dofcount/random.hpp"
#include "dofcount/rational.hpp"
#include "dofcount/systems.hpp"

namespace dofcount {

struct FiducialOutcome {
  std::size_t observable = 0;  // variable or basis index
  std::size_t value = 0;

  bool operator==(const FiducialOutcome&) const = default;
};

/// Every value of every observable, observable-major.
class FiducialSet {
 public:
  FiducialSet(std::size_t observables, std::size_t values) {
    for (std::size_t o = 0; o < observables; ++o) {
      for (std::size_t v = 0; v < values; ++v) outcomes_.push_back({o, v});
    }
  }

  static FiducialSet cardbox(const SystemSpec& spec) { return {spec.variable_count(), spec.value_count()}; }
  static FiducialSet quantum(const ObservableSet& obs) { return {obs.size(), obs.dimension()}; }

  const std::vector<FiducialOutcome>& outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }

 private:
  std::vector<FiducialOutcome> outcomes_;
};

using ClassicalFiducialVector = std::vector<Rational>;
using QuantumFiducialVector = std::vector<double>;

inline ClassicalFiducialVector fiducial_vector_cardbox(const Deck& deck) {
  const BoxState state = initial_state(deck);
  ClassicalFiducialVector out;
  out.reserve(FiducialSet::cardbox(deck.spec()).size());
  for (std::size_t v = 0; v < deck.spec().variable_count(); ++v) {
    auto block = outcome_distribution(state, v);
    out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  return out;
}

inline QuantumFiducialVector fiducial_vector_quantum(const DensityState& state, const ObservableSet& obs) {
  QuantumFiducialVector out;
  out.reserve(FiducialSet::quantum(obs).size());
  for (const auto& basis : obs.bases()) {
    const auto block = measurement_distribution(state, basis);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

inline constexpr std::uint64_t max_card_types = 1u << 20;

/// `count` decks; deck i assigns each card type an independent uniform
/// multiplicity in [0, max_multiplicity] drawn from rng.child(i), redrawing
/// the whole deck if it comes out empty.
inline std::vector<Deck> random_deck_ensemble(const SpecPtr& spec, std::size_t count, std::uint64_t max_multiplicity,
                                              const RandomStream& rng) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "ensemble size must be at least 1");
  if (max_multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "max multiplicity must be at least 1");
  if (spec->card_type_count() > max_card_types) {
    throw Error(ErrorCode::InvalidArgument, "too many card types to sample decks over");
  }
  const auto types = all_card_types(*spec);
  std::vector<Deck> decks;
  decks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RandomStream deck_rng = rng.child(i);
    Deck deck(spec);
    while (deck.empty()) {
      for (const auto& card : types) deck.add(card, deck_rng.uniform_between(0, max_multiplicity));
    }
    decks.push_back(std::move(deck));
  }
  return decks;
}

/// Card-box spec with variables X1..XV, each with values y1..yN.
inline SpecPtr uniform_cardbox_spec(std::size_t n, std::size_t v) {
  std::vector<Variable> vars;
  for (std::size_t i = 1; i <= v; ++i) {
    Variable var{"X" + std::to_string(i), {}};
    for (std::size_t j = 1; j <= n; ++j) var.values.push_back("y" + std::to_string(j));
    vars.push_back(std::move(var));
  }
  return make_spec(SystemSpec(std::move(vars)));
}

// Declared in the order reports are sorted by.
enum class SystemKind { Cardbox, Quantum, Urn };

inline const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Cardbox: return "cardbox";
    case SystemKind::Quantum: return "quantum";
    case SystemKind::Urn: return "urn";
  }
  return "unknown";
}

inline std::optional<SystemKind> parse_system_kind(std::string_view s) {
  if (s == "cardbox") return SystemKind::Cardbox;
  if (s == "quantum") return SystemKind::Quantum;
  if (s == "urn") return SystemKind::Urn;
  return std::nullopt;
}

/// What to measure: an urn with n positions, a card-box with V variables of
/// N values, or an n-level quantum system probed by M bases.
struct SystemDescriptor {
  SystemKind kind = SystemKind::Urn;
  std::size_t n = 2;
  std::size_t v_or_m = 1;

  static SystemDescriptor urn(std::size_t n) { return {SystemKind::Urn, n, 1}; }
  static SystemDescriptor cardbox(std::size_t n, std::size_t v) { return {SystemKind::Cardbox, n, v}; }
  static SystemDescriptor quantum(std::size_t n, std::size_t m) { return {SystemKind::Quantum, n, m}; }
  static SystemDescriptor quantum(std::size_t n) { return {SystemKind::Quantum, n, n + 1}; }

  std::size_t fiducial_count() const { return n * v_or_m; }

  /// The closed-form count for this kind of system: N, N*V, or N^2.
  std::size_t closed_form_count() const {
    switch (kind) {
      case SystemKind::Urn: return n;
      case SystemKind::Cardbox: return n * v_or_m;
      case SystemKind::Quantum: return n * n;
    }
    return 0;
  }

  /// Stream id that depends only on the descriptor, so a row's draws do not
  /// depend on which other rows are computed.
  std::uint64_t stream_key() const {
    return mix64((static_cast<std::uint64_t>(kind) << 48) ^ (static_cast<std::uint64_t>(n) << 24) ^
                 static_cast<std::uint64_t>(v_or_m));
  }
};

struct EnsembleParams {
  std::optional<std::size_t> ensemble;  // default 10 * fiducial count
  std::uint64_t max_multiplicity = 2;
  double tolerance = tolerance::rank_relative;
};

struct KReport {
  SystemKind kind = SystemKind::Urn;
  std::size_t n = 0;
  std::size_t v_or_m = 0;
  std::size_t k_rank = 0;
  std::size_t k_naive = 0;
  std::size_t k_paper = 0;
  std::size_t ensemble = 0;
  bool saturated = false;
  std::uint64_t seed = 0;

  bool operator==(const KReport&) const = default;
};

namespace detail {

inline void check_descriptor(const SystemDescriptor& d) {
  if (d.n < 2) throw Error(ErrorCode::BadDimension, "N must be at least 2");
  if (d.v_or_m < 1) throw Error(ErrorCode::InvalidArgument, "V (or M) must be at least 1");
  if (d.kind == SystemKind::Urn && d.v_or_m != 1) {
    throw Error(ErrorCode::InvalidArgument, "an urn has exactly one variable");
  }
}

// Ranks of the first `base` rows and of all rows.
inline std::pair<std::size_t, std::size_t> classical_ranks(const std::vector<Deck>& decks, std::size_t base,
                                                           std::size_t columns) {
  ExactEchelon<Rational> echelon(columns);
  std::size_t base_rank = 0;
  for (std::size_t i = 0; i < decks.size(); ++i) {
    if (!echelon.full()) echelon.add(fiducial_vector_cardbox(decks[i]));
    if (i + 1 == base) base_rank = echelon.rank();
  }
  return {base_rank, echelon.rank()};
}

}  // namespace detail

/// Builds an ensemble of E states, stacks their fiducial vectors and takes
/// the rank (exact for card-box and urn, SVD-thresholded for quantum). The
/// ensemble is then doubled once; `saturated` records whether that left the
/// rank unchanged.
inline KReport estimate_K(const SystemDescriptor& system, const EnsembleParams& params, const RandomStream& rng) {
  detail::check_descriptor(system);
  const std::size_t fiducials = system.fiducial_count();
  const std::size_t base = params.ensemble.value_or(10 * fiducials);
  if (base < 1) throw Error(ErrorCode::InvalidArgument, "ensemble size must be at least 1");

  KReport report;
  report.kind = system.kind;
  report.n = system.n;
  report.v_or_m = system.v_or_m;
  report.k_naive = fiducials;
  report.k_paper = system.closed_form_count();
  report.ensemble = base;
  report.seed = rng.seed();

  const RandomStream stream = rng.child(system.stream_key());
  std::size_t base_rank = 0;
  std::size_t doubled_rank = 0;
  if (system.kind == SystemKind::Quantum) {
    RandomStream basis_rng = stream.child(0);
    const ObservableSet obs = random_observables(system.n, system.v_or_m, basis_rng);
    const RandomStream state_streams = stream.child(1);
    RowMatrix<double> rows;
    for (std::size_t i = 0; i < 2 * base; ++i) {
      RandomStream state_rng = state_streams.child(i);
      rows.push_back(fiducial_vector_quantum(random_pure_state(system.n, state_rng), obs));
    }
    doubled_rank = matrix_rank_numeric(rows, params.tolerance);
    rows.resize(base);
    base_rank = matrix_rank_numeric(rows, params.tolerance);
  } else {
    const SpecPtr spec = system.kind == SystemKind::Urn ? make_spec(urn_as_cardbox(system.n))
                                                        : uniform_cardbox_spec(system.n, system.v_or_m);
    const auto decks = random_deck_ensemble(spec, 2 * base, params.max_multiplicity, stream);
    std::tie(base_rank, doubled_rank) = detail::classical_ranks(decks, base, fiducials);
  }

  report.k_rank = base_rank;
  report.saturated = base_rank == doubled_rank;
  if (report.k_rank < 1 || report.k_rank > report.k_naive) {
    throw Error(ErrorCode::InvariantViolation, "rank outside [1, K_naive]");
  }
  return report;
}

struct IntRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

/// One report per (kind, N, V) in ascending order. Urn rows ignore the V range
/// (an urn always has one variable); quantum rows use it as the basis count M.
inline std::vector<KReport> k_sweep(IntRange n_range, IntRange v_range, std::vector<SystemKind> kinds,
                                    const EnsembleParams& params, const RandomStream& rng) {
  if (n_range.lo > n_range.hi || v_range.lo > v_range.hi || kinds.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep ranges and system list must be nonempty");
  }
  if (n_range.lo < 2) throw Error(ErrorCode::BadDimension, "N must be at least 2");
  if (v_range.lo < 1) throw Error(ErrorCode::InvalidArgument, "V must be at least 1");
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  std::vector<KReport> table;
  for (auto kind : kinds) {
    for (std::size_t n = n_range.lo; n <= n_range.hi; ++n) {
      if (kind == SystemKind::Urn) {
        table.push_back(estimate_K(SystemDescriptor::urn(n), params, rng));
        continue;
      }
      for (std::size_t v = v_range.lo; v <= v_range.hi; ++v) {
        table.push_back(estimate_K(SystemDescriptor{kind, n, v}, params, rng));
      }
    }
  }
  return table;
}

}  // namespace dofcount

#endif  // DOFCOUNT_TOMOGRAPHY_HPP
