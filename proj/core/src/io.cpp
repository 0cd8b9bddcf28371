#include "sgc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sgc/errors.hpp"
#include "sgc/format.hpp"

namespace sgc {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Game GameDocument::to_game() const {
  return Game(strategies, payoffs, title, players);
}

std::vector<std::vector<MixedStrategy>> GameDocument::mixed_sets(
    double tol) const {
  std::vector<std::vector<MixedStrategy>> sets;
  const int n = static_cast<int>(strategies.size());
  if (mixed.empty()) {
    // default: the pure deltas, P_i = S_i
    for (int i = 0; i < n; ++i) {
      std::vector<MixedStrategy> set;
      const int l = static_cast<int>(strategies[static_cast<std::size_t>(i)].size());
      for (int j = 0; j < l; ++j)
        set.push_back(MixedStrategy::delta(i, j, l));
      sets.push_back(std::move(set));
    }
    return sets;
  }
  if (static_cast<int>(mixed.size()) != n)
    throw InputError("mixed_strategies lists " + std::to_string(mixed.size()) +
                     " players, game has " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (mixed[static_cast<std::size_t>(i)].empty())
      throw InputError("mixed_strategies[" + std::to_string(i) +
                       "] must not be empty");
    std::vector<MixedStrategy> set;
    for (const auto& weights : mixed[static_cast<std::size_t>(i)]) {
      if (weights.size() != strategies[static_cast<std::size_t>(i)].size())
        throw InputError("mixed_strategies[" + std::to_string(i) +
                         "] entry has " + std::to_string(weights.size()) +
                         " weights, expected " +
                         std::to_string(
                             strategies[static_cast<std::size_t>(i)].size()));
      set.emplace_back(i, weights, tol);
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

// ---------------------------------------------------------------------------
// native JSON format
// ---------------------------------------------------------------------------

namespace {

const ordered_json& require_field(const ordered_json& j, const char* field,
                                  const std::string& origin) {
  if (!j.contains(field))
    throw ParseError(origin + ": missing field '" + std::string(field) + "'");
  return j.at(field);
}

GameDocument parse_native_json(const std::string& text,
                               const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(origin + ": document is not an object");

  GameDocument doc;
  try {
    if (j.contains("schema")) doc.schema = j.at("schema").get<std::string>();
    if (j.contains("title")) doc.title = j.at("title").get<std::string>();
    if (j.contains("players"))
      doc.players = j.at("players").get<std::vector<std::string>>();
    doc.strategies = require_field(j, "strategies", origin)
                         .get<std::vector<std::vector<std::string>>>();
    doc.payoffs =
        require_field(j, "payoffs", origin).get<std::vector<double>>();
    if (j.contains("mixed_strategies"))
      doc.mixed = j.at("mixed_strategies")
                      .get<std::vector<std::vector<std::vector<double>>>>();
    if (j.contains("tolerance"))
      doc.tolerance = j.at("tolerance").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (doc.tolerance && *doc.tolerance <= 0.0)
    throw InputError(origin + ": tolerance must be positive");
  return doc;
}

// ---------------------------------------------------------------------------
// Gambit .nfg, payoff variant
// ---------------------------------------------------------------------------

struct NfgToken {
  enum class Kind { word, str, number, lbrace, rbrace };
  Kind kind;
  std::string text;
  double number = 0.0;
  int line = 1;
};

std::vector<NfgToken> nfg_tokenize(const std::string& text,
                                   const std::string& origin) {
  std::vector<NfgToken> tokens;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '{') {
      tokens.push_back({NfgToken::Kind::lbrace, "{", 0.0, line});
      ++i;
    } else if (c == '}') {
      tokens.push_back({NfgToken::Kind::rbrace, "}", 0.0, line});
      ++i;
    } else if (c == '"') {
      const std::size_t end = text.find('"', i + 1);
      if (end == std::string::npos)
        throw ParseError(origin + ":" + std::to_string(line) +
                         ": unterminated string");
      tokens.push_back(
          {NfgToken::Kind::str, text.substr(i + 1, end - i - 1), 0.0, line});
      i = end + 1;
    } else {
      std::size_t end = i;
      while (end < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[end])) &&
             text[end] != '{' && text[end] != '}' && text[end] != '"')
        ++end;
      const std::string word = text.substr(i, end - i);
      char* parsed_end = nullptr;
      const double value = std::strtod(word.c_str(), &parsed_end);
      if (parsed_end == word.c_str() + word.size())
        tokens.push_back({NfgToken::Kind::number, word, value, line});
      else
        tokens.push_back({NfgToken::Kind::word, word, 0.0, line});
      i = end;
    }
  }
  return tokens;
}

GameDocument parse_nfg(const std::string& text, const std::string& origin) {
  const std::vector<NfgToken> tokens = nfg_tokenize(text, origin);
  std::size_t pos = 0;
  auto at = [&](std::size_t p) -> const NfgToken& {
    if (p >= tokens.size())
      throw ParseError(origin + ": unexpected end of .nfg document");
    return tokens[p];
  };
  auto expect = [&](NfgToken::Kind kind, const char* what) -> const NfgToken& {
    const NfgToken& t = at(pos);
    if (t.kind != kind)
      throw ParseError(origin + ":" + std::to_string(t.line) + ": expected " +
                       std::string(what) + ", got '" + t.text + "'");
    ++pos;
    return t;
  };

  const NfgToken& magic = expect(NfgToken::Kind::word, "NFG");
  if (magic.text != "NFG")
    throw ParseError(origin + ":1: not an NFG document");
  expect(NfgToken::Kind::number, "version");
  const NfgToken& variant = expect(NfgToken::Kind::word, "payoff marker R");
  if (variant.text == "D")
    throw ParseError(origin + ":" + std::to_string(variant.line) +
                     ": outcome-variant .nfg is not supported");
  if (variant.text != "R")
    throw ParseError(origin + ":" + std::to_string(variant.line) +
                     ": unknown .nfg variant '" + variant.text + "'");

  GameDocument doc;
  doc.title = expect(NfgToken::Kind::str, "title").text;

  expect(NfgToken::Kind::lbrace, "{");
  while (at(pos).kind == NfgToken::Kind::str)
    doc.players.push_back(tokens[pos++].text);
  expect(NfgToken::Kind::rbrace, "}");
  const std::size_t n = doc.players.size();
  if (n == 0)
    throw ParseError(origin + ": .nfg documents needs at least one player");

  expect(NfgToken::Kind::lbrace, "{");
  if (at(pos).kind == NfgToken::Kind::lbrace) {
    // strategy-names form: one brace block per player
    for (std::size_t i = 0; i < n; ++i) {
      expect(NfgToken::Kind::lbrace, "{");
      std::vector<std::string> names;
      while (at(pos).kind == NfgToken::Kind::str)
        names.push_back(tokens[pos++].text);
      expect(NfgToken::Kind::rbrace, "}");
      if (names.empty())
        throw ParseError(origin + ": player " + std::to_string(i + 1) +
                         " has no strategies");
      doc.strategies.push_back(std::move(names));
    }
    expect(NfgToken::Kind::rbrace, "}");
  } else {
    // strategy-count form
    while (at(pos).kind == NfgToken::Kind::number) {
      const int count = static_cast<int>(tokens[pos].number);
      if (count < 1 ||
          tokens[pos].number != static_cast<double>(count))
        throw ParseError(origin + ":" + std::to_string(tokens[pos].line) +
                         ": invalid strategy count '" + tokens[pos].text +
                         "'");
      ++pos;
      std::vector<std::string> names;
      for (int s = 1; s <= count; ++s)
        names.push_back("s" + std::to_string(s));
      doc.strategies.push_back(std::move(names));
    }
    expect(NfgToken::Kind::rbrace, "}");
    if (doc.strategies.size() != n)
      throw ParseError(origin + ": " + std::to_string(doc.strategies.size()) +
                       " strategy counts for " + std::to_string(n) +
                       " players");
  }

  // optional comment string
  if (pos < tokens.size() && at(pos).kind == NfgToken::Kind::str) ++pos;

  std::vector<double> flat;
  while (pos < tokens.size()) {
    const NfgToken& t = tokens[pos];
    if (t.kind == NfgToken::Kind::lbrace)
      throw ParseError(origin + ":" + std::to_string(t.line) +
                       ": outcome-variant .nfg payload is not supported");
    if (t.kind != NfgToken::Kind::number)
      throw ParseError(origin + ":" + std::to_string(t.line) +
                       ": expected payoff number, got '" + t.text + "'");
    flat.push_back(t.number);
    ++pos;
  }

  // reorder: .nfg iterates contingencies with player 1 fastest; the native
  // tensor uses the player-major profile index
  std::size_t profile_total = 1;
  for (const auto& names : doc.strategies) profile_total *= names.size();
  if (flat.size() != profile_total * n)
    throw InputError(origin + ": payoff list has " +
                     std::to_string(flat.size()) + " numbers, expected " +
                     std::to_string(profile_total * n));
  doc.payoffs.assign(profile_total * n, 0.0);
  for (std::size_t g = 0; g < profile_total; ++g) {
    std::size_t rest = g;
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<int>(rest % doc.strategies[i].size());
      rest /= doc.strategies[i].size();
    }
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
      p = p * doc.strategies[i].size() + static_cast<std::size_t>(s[i]);
    for (std::size_t i = 0; i < n; ++i)
      doc.payoffs[p * n + i] = flat[g * n + i];
  }
  return doc;
}

}  // namespace

GameDocument parse_game_text(const std::string& text,
                             const std::string& origin) {
  std::size_t i = 0;
  while (i < text.size() &&
         std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (text.compare(i, 3, "NFG") == 0) return parse_nfg(text, origin);
  return parse_native_json(text, origin);
}

GameDocument parse_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open game file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_text(buffer.str(), path);
}

std::string export_game_json(const GameDocument& doc) {
  ordered_json j;
  j["schema"] = doc.schema;
  if (!doc.title.empty()) j["title"] = doc.title;
  if (!doc.players.empty()) j["players"] = doc.players;
  j["strategies"] = doc.strategies;
  j["payoffs"] = doc.payoffs;
  if (!doc.mixed.empty()) j["mixed_strategies"] = doc.mixed;
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// report builders
// ---------------------------------------------------------------------------

std::string export_complex_json(const SituationComplex& k) {
  ordered_json j;
  j["schema"] = "sgc-complex/1";
  if (!k.game().title().empty()) j["title"] = k.game().title();
  j["players"] = k.game().player_names();

  ordered_json verts = ordered_json::array();
  for (int v = 0; v < k.vertex_count(); ++v) {
    const ComplexVertex& cv = k.vertex(v);
    verts.push_back({{"id", v},
                     {"player", cv.player},
                     {"index", cv.index},
                     {"weights", cv.strategy.weights()}});
  }
  j["vertices"] = std::move(verts);

  ordered_json facets = ordered_json::array();
  for (int label = 0; label < k.facet_count(); ++label) {
    facets.push_back({{"label", label},
                      {"simplex", k.facet_by_label(label)},
                      {"mixed_indices", k.facet_mixed_indices(label)},
                      {"payoffs", k.facet_payoffs(label)},
                      {"weight", k.weight(k.facet_by_label(label))}});
  }
  j["facets"] = std::move(facets);

  ordered_json faces = ordered_json::array();
  for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplex_count());
       ++id) {
    faces.push_back({{"id", id},
                     {"dimension", k.simplex(id).dimension},
                     {"vertices", k.simplex(id).vertices},
                     {"weight", k.weight(id)},
                     {"facet_label", k.label_of(id)}});
  }
  j["faces"] = std::move(faces);

  ordered_json barys = ordered_json::array();
  for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplex_count());
       ++id) {
    const Barycenter b = k.barycenter(id);
    barys.push_back({{"simplex", id}, {"weights", b.weights}});
  }
  j["barycenters"] = std::move(barys);

  std::vector<int> by_dim;
  for (int t = 0; t <= k.dimension(); ++t)
    by_dim.push_back(static_cast<int>(k.simplices_of_dim(t).size()));
  j["counts"] = {{"by_dimension", by_dim},
                 {"euler_characteristic", k.euler_characteristic()}};
  return j.dump(2) + "\n";
}

namespace {

ordered_json nerve_to_json(const Nerve& nerve) {
  ordered_json j;
  if (nerve.kind == NerveKind::local) {
    j["player"] = nerve.star_player;
    j["star_index"] = nerve.star_index;
  }
  ordered_json verts = ordered_json::array();
  for (const NerveVertex& v : nerve.vertices)
    verts.push_back({{"label", v.label},
                     {"weight", v.weight},
                     {"mixed_indices", v.mixed_indices},
                     {"payoffs", v.payoffs}});
  j["vertices"] = std::move(verts);
  ordered_json edges = ordered_json::array();
  for (const DualFlowEdge& e : nerve.edges)
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"weight", e.weight},
                     {"tie", e.tie},
                     {"player", e.player},
                     {"star_index", e.star_index}});
  j["edges"] = std::move(edges);
  j["spanning_tree"] = nerve.spanning_tree;
  return j;
}

ordered_json covering_report_json(const CoveringReport& report) {
  auto check = [](const CoveringCheck& c) {
    return ordered_json{{"pass", c.pass}, {"witness", c.witness}};
  };
  return ordered_json{{"sheets_simplicial", check(report.sheets_simplicial)},
                      {"map_simplicial", check(report.map_simplicial)},
                      {"preimages_disjoint", check(report.preimages_disjoint)},
                      {"pass", report.pass()}};
}

}  // namespace

std::string export_nerve_json(const std::vector<Nerve>& locals,
                              const Nerve& global) {
  ordered_json j;
  j["schema"] = "sgc-nerve/1";
  ordered_json local_list = ordered_json::array();
  for (const Nerve& local : locals) local_list.push_back(nerve_to_json(local));
  j["local"] = std::move(local_list);
  j["global"] = nerve_to_json(global);
  return j.dump(2) + "\n";
}

std::string export_covering_json(const CoveringComplex& covering,
                                 const CoveringReport& report) {
  ordered_json j;
  j["schema"] = "sgc-covering/1";
  j["sheets"] = covering.sheet_count;
  j["base_vertex_count"] = covering.base_vertex_count;
  j["simplices_per_sheet"] =
      covering.sheet_count == 0
          ? 0
          : covering.simplices.size() /
                static_cast<std::size_t>(covering.sheet_count);
  j["z"] = covering.z;
  j["a"] = covering.a;
  j["open_membership"] = covering.open_membership;
  j["verification"] = covering_report_json(report);
  return j.dump(2) + "\n";
}

std::string export_nash_json(const SituationComplex& k,
                             const std::vector<int>& nash,
                             const std::vector<DegreeReport>& degrees,
                             const CoveringReport& covering_report) {
  ordered_json j;
  j["schema"] = "sgc-nash/1";
  ordered_json list = ordered_json::array();
  for (int label : nash) {
    ordered_json entry;
    entry["label"] = label;
    entry["mixed_indices"] = k.facet_mixed_indices(label);
    ordered_json comps = ordered_json::array();
    for (int i = 0; i < k.player_count(); ++i)
      comps.push_back(
          k.mixed(i, k.facet_mixed_indices(label)[static_cast<std::size_t>(i)])
              .weights());
    entry["components"] = std::move(comps);
    entry["payoffs"] = k.facet_payoffs(label);
    list.push_back(std::move(entry));
  }
  j["nash_facets"] = std::move(list);

  ordered_json table = ordered_json::array();
  for (const DegreeReport& row : degrees)
    table.push_back({{"label", row.label},
                     {"degrees", row.degrees},
                     {"required", row.required},
                     {"nash", row.nash}});
  j["degree_table"] = std::move(table);
  j["covering_verification"] = covering_report_json(covering_report);
  return j.dump(2) + "\n";
}

std::string export_decomposition_json(const SituationComplex& k,
                                      const FlowComplex& fc, const Cochain& w,
                                      const FlowDecomposition& d,
                                      const Classification& cls) {
  ordered_json j;
  j["schema"] = "sgc-decomposition/1";
  j["classification"] = to_string(cls.kind);
  j["counts"] = {{"vertices", fc.vertex_count()},
                 {"edges", fc.edge_count()},
                 {"triangles", fc.triangle_count()},
                 {"components", fc.component_count()}};
  j["norms"] = {{"flow", d.flow_norm},
                {"gradient", d.gradient_norm},
                {"harmonic", d.harmonic_norm},
                {"curl", d.curl_norm}};
  j["residuals"] = {{"reconstruction", d.reconstruction_error},
                    {"max_cross_inner", d.max_cross_inner},
                    {"harmonic_laplacian", d.harmonic_residual},
                    {"potential_fit", d.potential_residual},
                    {"laplacian1_flow", cls.laplacian1_flow_residual}};
  // Two naming conventions are in circulation for which subspace carries the
  // game-theoretic name; the report states both explicitly.
  j["component_naming"] = {{"potential", "gradient"},
                           {"harmonic", "harmonic"},
                           {"nonstrategic", "curl"}};
  j["alternate_component_naming"] = {{"potential", "curl"},
                                     {"harmonic", "harmonic"},
                                     {"nonstrategic", "gradient"}};

  ordered_json phi = ordered_json::array();
  for (int v = 0; v < fc.vertex_count(); ++v)
    phi.push_back({{"label", v}, {"phi", d.potential.values[v]}});
  j["potential"] = std::move(phi);

  ordered_json edges = ordered_json::array();
  for (int e = 0; e < fc.edge_count(); ++e) {
    const FlowEdge& fe = fc.edges()[static_cast<std::size_t>(e)];
    edges.push_back({{"a", fe.a},
                     {"b", fe.b},
                     {"player", fe.player},
                     {"star_index", fe.star_index},
                     {"flow", w.values[e]},
                     {"gradient", d.gradient.values[e]},
                     {"harmonic", d.harmonic.values[e]},
                     {"curl", d.curl.values[e]}});
  }
  j["edges"] = std::move(edges);
  (void)k;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

std::optional<Subcommand> subcommand_from(const std::string& name) {
  if (name == "build") return Subcommand::build;
  if (name == "nerve") return Subcommand::nerve;
  if (name == "covering") return Subcommand::covering;
  if (name == "nash") return Subcommand::nash;
  if (name == "decompose") return Subcommand::decompose;
  if (name == "check") return Subcommand::check;
  return std::nullopt;
}

namespace {

void write_file(const fs::path& path, const std::string& content,
                PipelineResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw InputError("failed writing " + path.string());
  result.files.push_back(path.string());
}

}  // namespace

PipelineResult run_pipeline(const GameDocument& doc, const RunConfig& cfg,
                            Subcommand cmd) {
  PipelineResult result;
  const double tol = cfg.tolerance_overridden
                         ? cfg.tolerance
                         : doc.tolerance.value_or(cfg.tolerance);
  if (tol <= 0.0) throw InputError("tolerance must be positive");

  const Game game = doc.to_game();
  const SituationComplex k =
      SituationComplex::build(game, doc.mixed_sets(tol), tol);

  const fs::path out_dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    throw InputError("cannot create output directory " + out_dir.string());

  const bool want_json = cfg.format != RunConfig::Format::dot;
  const bool want_dot = cfg.format != RunConfig::Format::json;

  SolverOptions solver;
  solver.residual_tol = cfg.solver_residual;

  auto emit_build = [&] {
    write_file(out_dir / "complex.json", export_complex_json(k), result);
  };

  std::vector<Nerve> locals;
  Nerve global;
  bool nerves_ready = false;
  auto make_nerves = [&] {
    if (nerves_ready) return;
    locals = all_local_nerves(k, cfg.threads);
    global = global_nerve(k, locals);
    nerves_ready = true;
  };

  auto emit_nerve = [&] {
    make_nerves();
    if (want_json)
      write_file(out_dir / "nerve.json", export_nerve_json(locals, global),
                 result);
    if (want_dot) {
      std::string local_dot;
      for (const Nerve& local : locals) local_dot += export_nerve_dot(local);
      write_file(out_dir / "nerve_local.dot", local_dot, result);
      write_file(out_dir / "nerve_global.dot", export_nerve_dot(global),
                 result);
    }
  };

  auto emit_covering = [&]() -> CoveringReport {
    const CoveringComplex covering = build_covering(k, tol);
    const CoveringReport report = verify_covering(covering, k);
    write_file(out_dir / "covering.json",
               export_covering_json(covering, report), result);
    return report;
  };

  auto emit_nash = [&](const CoveringReport& covering_report) {
    const std::vector<int> nash = nash_simplices(k, tol);
    write_file(out_dir / "nash.json",
               export_nash_json(k, nash, degree_table(k, tol),
                                covering_report),
               result);
    return nash;
  };

  auto emit_decompose = [&] {
    make_nerves();
    const FlowComplex fc = FlowComplex::build(k, global);
    const Cochain w = game_flow(k, fc);
    const FlowDecomposition d = decompose(fc, w, solver);
    const Classification cls = classify(fc, w, d);
    write_file(out_dir / "decomposition.json",
               export_decomposition_json(k, fc, w, d, cls), result);
    write_file(out_dir / "boundary1.triplets.txt",
               export_matrix_triplets(fc.boundary_matrix(1)), result);
    write_file(out_dir / "boundary2.triplets.txt",
               export_matrix_triplets(fc.boundary_matrix(2)), result);
    return cls;
  };

  switch (cmd) {
    case Subcommand::build: {
      emit_build();
      result.summary = "complex: " + std::to_string(k.facet_count()) +
                       " facets, " + std::to_string(k.vertex_count()) +
                       " vertices, " + std::to_string(k.simplex_count()) +
                       " simplices, chi=" +
                       std::to_string(k.euler_characteristic());
      break;
    }
    case Subcommand::nerve: {
      emit_nerve();
      result.summary = "nerve: " + std::to_string(locals.size()) +
                       " local nerves, global on " +
                       std::to_string(global.vertices.size()) +
                       " vertices with " + std::to_string(global.edges.size()) +
                       " flow edges";
      break;
    }
    case Subcommand::covering: {
      const CoveringReport report = emit_covering();
      result.summary = std::string("covering: verification ") +
                       (report.pass() ? "PASS" : "FAIL");
      break;
    }
    case Subcommand::nash: {
      const CoveringComplex covering = build_covering(k, tol);
      const CoveringReport report = verify_covering(covering, k);
      const std::vector<int> nash = emit_nash(report);
      std::string labels;
      for (int label : nash)
        labels += (labels.empty() ? "" : ",") + std::to_string(label);
      result.summary = "nash: " + std::to_string(nash.size()) +
                       " equilibrium facet(s) [" + labels + "]";
      break;
    }
    case Subcommand::decompose: {
      const Classification cls = emit_decompose();
      result.summary = std::string("decomposition: ") + to_string(cls.kind) +
                       " (|g|=" + format_double(cls.gradient_norm) +
                       ", |h|=" + format_double(cls.harmonic_norm) +
                       ", |c|=" + format_double(cls.curl_norm) + ")";
      break;
    }
    case Subcommand::check: {
      emit_build();
      emit_nerve();
      const CoveringReport covering_report = emit_covering();
      emit_nash(covering_report);
      emit_decompose();

      const std::vector<CheckItem> items = run_invariant_suite(doc, cfg);
      int failed = 0;
      std::string lines;
      ordered_json jitems = ordered_json::array();
      for (const CheckItem& item : items) {
        if (!item.pass) ++failed;
        lines += (item.pass ? "ok " : "FAIL ") + item.name;
        if (!item.pass && !item.detail.empty()) lines += ": " + item.detail;
        lines += "\n";
        jitems.push_back({{"name", item.name},
                          {"pass", item.pass},
                          {"detail", item.detail}});
      }
      ordered_json j;
      j["schema"] = "sgc-check/1";
      j["items"] = std::move(jitems);
      j["failed"] = failed;
      write_file(out_dir / "check.json", j.dump(2) + "\n", result);

      result.summary =
          lines + (failed == 0
                       ? "check: all " + std::to_string(items.size()) +
                             " invariants hold"
                       : "check: " + std::to_string(failed) + " of " +
                             std::to_string(items.size()) +
                             " invariants failed");
      result.exit_code = failed == 0 ? 0 : 5;
      break;
    }
  }
  return result;
}

}  // namespace sgc
