#ifndef DOFCOUNT_CLI_HPP
#define DOFCOUNT_CLI_HPP

// The `dofcount` command line. cli_main() is kept separate from main() so the
// exit-code contract can be exercised in-process:
//   0 success, 1 usage error, 2 input validation error, 3 internal failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dofcount/deck_file.hpp"
#include "dofcount/error.hpp"
#include "dofcount/random.hpp"
#include "dofcount/report.hpp"
#include "dofcount/sequential.hpp"
#include "dofcount/systems.hpp"
#include "dofcount/tomography.hpp"

namespace dofcount {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitInternal = 3 };

inline constexpr const char* seed_env_var = "DOFCOUNT_SEED";

namespace cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
    value = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(what + ": expected a non-negative integer, got '" + text + "'");
  return value;
}

inline IntRange parse_range(const std::string& text, const std::string& what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_u64(text, what);
    return {v, v};
  }
  IntRange r{parse_u64(text.substr(0, dots), what), parse_u64(text.substr(dots + 2), what)};
  if (r.lo > r.hi) throw UsageError(what + ": empty range '" + text + "'");
  return r;
}

inline std::uint64_t resolve_seed(const std::optional<std::string>& flag, const std::optional<std::string>& env) {
  if (flag) return parse_u64(*flag, "--seed");
  if (env && !env->empty()) return parse_u64(*env, seed_env_var);
  throw UsageError(std::string("--seed is required (or set ") + seed_env_var + ")");
}

inline Deck load_deck(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read deck file '" + path + "'", "deck");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_deck_file(buf.str());
}

inline MeasurementPlan load_plan(const SystemSpec& spec, const std::string& text) {
  const auto names = split(text, ',');
  if (names.empty()) throw UsageError("--plan: at least one variable is required");
  for (const auto& n : names) {
    if (n.empty()) throw UsageError("--plan: empty variable name in '" + text + "'");
  }
  return make_plan(spec, names);
}

inline std::string format_values(const SystemSpec& spec, const OutcomeSequence& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ',';
    s += value_name(spec, seq[i]);
  }
  return s;
}

inline std::string format_outcomes(const SystemSpec& spec, const OutcomeSequence& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ',';
    s += spec.variable(seq[i].variable).name + "=" + value_name(spec, seq[i]);
  }
  return s;
}

}  // namespace cli

/// Runs one command. `args` excludes the program name. `env_seed` stands in
/// for the DOFCOUNT_SEED environment variable.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                    std::optional<std::string> env_seed) {
  CLI::App app{"Informational degrees-of-freedom experiments on card-box, urn and quantum systems", "dofcount"};
  app.require_subcommand(1);

  std::string deck_path;
  std::string plan_text;
  std::uint64_t trials = 10000;
  std::optional<std::string> seed_flag;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo frequencies of a plan against exact probabilities");
  simulate->add_option("--deck", deck_path, "Deck JSON file")->required();
  simulate->add_option("--plan", plan_text, "Comma-separated variable names")->required();
  simulate->add_option("--trials", trials, "Number of runs")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed_flag, "Master seed");

  auto* sequence = app.add_subcommand("sequence", "Exact distribution of a plan's outcome sequences");
  sequence->add_option("--deck", deck_path, "Deck JSON file")->required();
  sequence->add_option("--plan", plan_text, "Comma-separated variable names")->required();

  auto* witness = app.add_subcommand("witness", "Search for a contradictory-repeat sequence");
  witness->add_option("--deck", deck_path, "Deck JSON file")->required();

  std::string system_text;
  std::size_t n = 0;
  std::optional<std::size_t> v_opt;
  std::optional<std::size_t> m_opt;
  std::optional<std::size_t> ensemble;
  std::uint64_t max_mult = 2;
  double tol = tolerance::rank_relative;
  bool json = false;

  auto* rank = app.add_subcommand("rank", "Estimate K for one system");
  rank->add_option("--system", system_text, "urn | cardbox | quantum")->required();
  rank->add_option("--n", n, "Values per variable (quantum: dimension)")->required();
  rank->add_option("--v", v_opt, "Card-box variable count");
  rank->add_option("--m", m_opt, "Quantum basis count (default n+1)");
  rank->add_option("--ensemble", ensemble, "Ensemble size (default 10 x fiducial count)");
  rank->add_option("--max-mult", max_mult, "Largest card multiplicity in random decks");
  rank->add_option("--tol", tol, "Relative singular value threshold");
  rank->add_option("--seed", seed_flag, "Master seed");
  rank->add_flag("--json", json, "Emit JSON instead of CSV");

  std::string n_range_text;
  std::string v_range_text;
  std::string systems_text = "cardbox,urn,quantum";
  std::string out_path;

  auto* sweep = app.add_subcommand("sweep", "Estimate K over a grid of N and V");
  sweep->add_option("--n-range", n_range_text, "A..B")->required();
  sweep->add_option("--v-range", v_range_text, "C..D")->required();
  sweep->add_option("--systems", systems_text, "Comma-separated kinds");
  sweep->add_option("--seed", seed_flag, "Master seed");
  sweep->add_option("--out", out_path, "Report file (default stdout)");
  sweep->add_option("--ensemble", ensemble, "Ensemble size per row");
  sweep->add_option("--max-mult", max_mult, "Largest card multiplicity in random decks");
  sweep->add_option("--tol", tol, "Relative singular value threshold");
  sweep->add_flag("--json", json, "Emit JSON instead of CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      const std::uint64_t seed = cli::resolve_seed(seed_flag, env_seed);
      const Deck deck = cli::load_deck(deck_path);
      const MeasurementPlan plan = cli::load_plan(deck.spec(), plan_text);
      const auto exact = sequence_distribution(deck, plan);
      const auto counts = simulate_sequences(deck, plan, trials, RandomStream(seed, 0));
      std::set<OutcomeSequence> keys;
      for (const auto& [seq, p] : exact.probabilities()) keys.insert(seq);
      for (const auto& [seq, c] : counts) keys.insert(seq);
      out << "# trials=" << trials << " seed=" << seed << "\n";
      for (const auto& seq : keys) {
        const auto it = counts.find(seq);
        const std::uint64_t count = it == counts.end() ? 0 : it->second;
        const double freq = static_cast<double>(count) / static_cast<double>(trials);
        const Rational p = exact.probability(seq);
        const double pd = to_double(p);
        const double band = 3.0 * std::sqrt(pd * (1.0 - pd) / static_cast<double>(trials));
        out << cli::format_values(deck.spec(), seq) << " count=" << count << " freq=" << std::fixed
            << std::setprecision(6) << freq << " exact=" << to_fraction_string(p) << " band=" << band
            << " within=" << (std::abs(freq - pd) <= band ? "yes" : "no") << "\n";
        out.unsetf(std::ios::floatfield);
      }
      return kExitOk;
    }
    if (sequence->parsed()) {
      const Deck deck = cli::load_deck(deck_path);
      const auto dist = sequence_distribution(deck, cli::load_plan(deck.spec(), plan_text));
      for (const auto& [seq, p] : dist.probabilities()) {
        out << cli::format_values(deck.spec(), seq) << " = " << to_fraction_string(p) << "\n";
      }
      return kExitOk;
    }
    if (witness->parsed()) {
      const Deck deck = cli::load_deck(deck_path);
      const auto w = find_classicality_witness(deck);
      if (!w) {
        out << "none\n";
      } else {
        out << cli::format_outcomes(deck.spec(), w->sequence) << " = " << to_fraction_string(w->probability)
            << " (" << w->violated_constraint << ")\n";
      }
      return kExitOk;
    }

    const EnsembleParams params{ensemble, max_mult, tol};
    if (rank->parsed()) {
      const std::uint64_t seed = cli::resolve_seed(seed_flag, env_seed);
      const auto kind = parse_system_kind(system_text);
      if (!kind) throw cli::UsageError("--system: expected urn, cardbox or quantum, got '" + system_text + "'");
      SystemDescriptor desc;
      switch (*kind) {
        case SystemKind::Urn:
          if (v_opt || m_opt) throw cli::UsageError("--v/--m do not apply to an urn");
          desc = SystemDescriptor::urn(n);
          break;
        case SystemKind::Cardbox:
          if (!v_opt) throw cli::UsageError("--v is required for a card-box");
          if (m_opt) throw cli::UsageError("--m applies only to quantum systems");
          desc = SystemDescriptor::cardbox(n, *v_opt);
          break;
        case SystemKind::Quantum:
          if (v_opt) throw cli::UsageError("--v applies only to card-boxes; use --m");
          desc = m_opt ? SystemDescriptor::quantum(n, *m_opt) : SystemDescriptor::quantum(n);
          break;
      }
      const KReport report = estimate_K(desc, params, RandomStream(seed, 0));
      out << (json ? to_json(std::vector<KReport>{report}) : to_csv({report}));
      return kExitOk;
    }
    if (sweep->parsed()) {
      const std::uint64_t seed = cli::resolve_seed(seed_flag, env_seed);
      const IntRange n_range = cli::parse_range(n_range_text, "--n-range");
      const IntRange v_range = cli::parse_range(v_range_text, "--v-range");
      std::vector<SystemKind> kinds;
      for (const auto& name : cli::split(systems_text, ',')) {
        const auto kind = parse_system_kind(name);
        if (!kind) throw cli::UsageError("--systems: unknown system '" + name + "'");
        kinds.push_back(*kind);
      }
      const auto table = k_sweep(n_range, v_range, kinds, params, RandomStream(seed, 0));
      const std::string text = json ? to_json(table) : to_csv(table);
      if (out_path.empty() || out_path == "-") {
        out << text;
      } else {
        std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'", "out");
        file << text;
        if (!file) throw Error(ErrorCode::InvalidArgument, "failed writing '" + out_path + "'", "out");
      }
      return kExitOk;
    }
  } catch (const cli::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << (e.is_internal() ? "internal error: " : "invalid input: ") << e.what();
    if (!e.field().empty()) err << " [field: " << e.field() << "]";
    err << "\n";
    return e.is_internal() ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* s = std::getenv(seed_env_var)) env = s;
  return cli_main(args, out, err, env);
}

}  // namespace dofcount

#endif  // DOFCOUNT_CLI_HPP
