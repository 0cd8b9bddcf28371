#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/covering.hpp"
#include "sgc/game.hpp"
#include "sgc/hodge.hpp"

namespace sgc {

/// Serialized game plus the finite mixed-strategy sets the pipeline runs on.
/// The payoff tensor is flat with n * prod(l_i) entries: profile-major in
/// player-major mixed-radix profile order, player-major inside a profile.
struct GameDocument {
  std::string schema = "sgc-game/1";
  std::string title;
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;
  std::vector<double> payoffs;
  /// Per player, a list of probability vectors. Empty means the per-player
  /// delta distributions (P_i = S_i).
  std::vector<std::vector<std::vector<double>>> mixed;
  std::optional<double> tolerance;

  bool operator==(const GameDocument&) const = default;

  Game to_game() const;
  std::vector<std::vector<MixedStrategy>> mixed_sets(double tol) const;
};

/// Parses the native JSON format or a payoff-variant Gambit .nfg document
/// (sniffed by content). Malformed syntax raises ParseError; semantic
/// violations raise InputError.
GameDocument parse_game_text(const std::string& text,
                             const std::string& origin = "<string>");
GameDocument parse_game_file(const std::string& path);

/// Canonical JSON serialization; parse(export(doc)) == doc.
std::string export_game_json(const GameDocument& doc);

struct RunConfig {
  double tolerance = kDefaultTolerance;
  bool tolerance_overridden = false;  // CLI flag beats the document value
  double solver_residual = 1e-10;
  std::string out_dir = ".";
  enum class Format { json, dot, both };
  Format format = Format::both;
  std::uint64_t seed = 0;  // accepted for interface stability; unused
  int threads = 1;
};

enum class Subcommand { build, nerve, covering, nash, decompose, check };
std::optional<Subcommand> subcommand_from(const std::string& name);

struct PipelineResult {
  std::vector<std::string> files;  // paths written, in write order
  std::string summary;             // human-readable lines
  int exit_code = 0;
};

/// Runs one subcommand end to end and writes its report files under
/// cfg.out_dir. Outputs are byte-deterministic for identical inputs.
PipelineResult run_pipeline(const GameDocument& doc, const RunConfig& cfg,
                            Subcommand cmd);

// Report builders, exposed for tests. All deterministic text.
std::string export_complex_json(const SituationComplex& k);
std::string export_nerve_json(const std::vector<Nerve>& locals,
                              const Nerve& global);
std::string export_covering_json(const CoveringComplex& covering,
                                 const CoveringReport& report);
std::string export_nash_json(const SituationComplex& k,
                             const std::vector<int>& nash,
                             const std::vector<DegreeReport>& degrees,
                             const CoveringReport& covering_report);
std::string export_decomposition_json(const SituationComplex& k,
                                      const FlowComplex& fc, const Cochain& w,
                                      const FlowDecomposition& d,
                                      const Classification& cls);

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// The full structural-invariant suite over one document; the `check`
/// subcommand prints one line per item and exits nonzero on any failure.
std::vector<CheckItem> run_invariant_suite(const GameDocument& doc,
                                           const RunConfig& cfg);

}  // namespace sgc
