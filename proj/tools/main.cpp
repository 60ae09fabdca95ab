#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/frequent.hpp"
#include "assocmine/linkpred.hpp"
#include "assocmine/sha256.hpp"
#include "assocmine/significance.hpp"
#include "assocmine/similarity_split.hpp"
#include "assocmine/strength_split.hpp"
#include "assocmine/synthgen.hpp"
#include "report.hpp"

namespace {

using namespace assocmine;
using nlohmann::json;

// Flag combinations the parser cannot reject on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string out_stem(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string();
}

std::string header_line(const std::string& manifest_name) {
  return "# manifest: " + manifest_name;
}

void prepend(std::vector<std::string>& lines, std::string line) {
  lines.insert(lines.begin(), std::move(line));
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& field : split_on(s, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + ": '" + field + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void validate_params(const SignificanceParams& params) {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// mine

struct MineOpts {
  std::string edges, attrs, out;
  double alpha = 0.01, size_support = 0.01;
  std::uint64_t seed = 0;
  int threads = 1;
};

int cmd_mine(const MineOpts& opt) {
  SignificanceParams params;
  params.alpha = opt.alpha;
  params.size_support = opt.size_support;
  validate_params(params);

  const AttributedGraph g = load_graph(opt.edges, opt.attrs);
  if (g.duplicate_edges_dropped() > 0)
    std::cerr << "warning: " << g.duplicate_edges_dropped()
              << " duplicate edge(s) collapsed\n";

  report::Manifest manifest;
  manifest.subcommand = "mine";
  manifest.parameters = {{"edges", opt.edges},
                         {"attrs", opt.attrs},
                         {"alpha", opt.alpha},
                         {"size_support", opt.size_support},
                         {"out", opt.out}};
  manifest.input_digests = {{opt.edges, sha256_file_hex(opt.edges)},
                            {opt.attrs, sha256_file_hex(opt.attrs)}};
  manifest.seed = opt.seed;
  manifest.threads = opt.threads;
  const std::string stem = out_stem(opt.out);
  const std::string header = header_line(manifest.write(stem));

  AssociationGraph ag = AssociationGraph::init(g, params, {opt.seed, opt.threads});
  std::vector<std::string> log_lines;
  TransformHooks hooks;
  hooks.on_split = [&](const AssociationGraph& state, const SplitEvent& ev) {
    json j;
    j["iteration"] = state.stats().iterations;
    j["phase"] = ev.phase == SplitPhase::kSimilarity ? "similarity" : "strength";
    j["cluster"] = ev.cluster;
    j["size"] = ev.cluster_size;
    j["score"] = ev.score;
    if (ev.attribute >= 0)
      j["attribute"] = state.source().attribute_names()[static_cast<std::size_t>(ev.attribute)];
    j["committed"] = ev.committed;
    j["parts"] = ev.parts;
    j["part_sizes"] = ev.part_sizes;
    log_lines.push_back(j.dump());
  };
  const TransformStats stats = transform(ag, hooks);

  const auto significant = ag.significant_associations();
  auto assoc_lines = report::association_lines(significant, g.attribute_names());
  prepend(assoc_lines, header);
  report::write_lines(opt.out, assoc_lines);

  auto clusters = report::cluster_lines(ag);
  prepend(clusters, header);
  report::write_lines(stem + ".clusters.csv", clusters);

  auto ancestry = report::ancestry_lines(ag);
  prepend(ancestry, header);
  report::write_lines(stem + ".ancestry.csv", ancestry);

  prepend(log_lines, header);
  report::write_lines(stem + ".log.jsonl", log_lines);

  std::cerr << "clusters: " << ag.clusters().size()
            << ", significant associations: " << significant.size()
            << ", similarity splits: " << stats.similarity_splits
            << ", strength splits: " << stats.strength_splits
            << ", pruned: " << stats.pruned_associations << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// frequent

struct FrequentOpts {
  std::string edges, attrs, out;
  double sigma = 0.001;
};

int cmd_frequent(const FrequentOpts& opt) {
  if (!(opt.sigma > 0.0 && opt.sigma < 1.0))
    throw UsageError("freq-support must be in (0,1)");
  const AttributedGraph g = load_graph(opt.edges, opt.attrs);

  report::Manifest manifest;
  manifest.subcommand = "frequent";
  manifest.parameters = {{"edges", opt.edges},
                         {"attrs", opt.attrs},
                         {"freq_support", opt.sigma},
                         {"out", opt.out}};
  manifest.input_digests = {{opt.edges, sha256_file_hex(opt.edges)},
                            {opt.attrs, sha256_file_hex(opt.attrs)}};
  const std::string header = header_line(manifest.write(out_stem(opt.out)));

  const auto freqs = enumerate_associations(g);
  const auto entries = frequent_associations(freqs, opt.sigma, g.edge_count());
  auto lines = report::frequent_lines(entries, g.attribute_names());
  prepend(lines, header);
  report::write_lines(opt.out, lines);
  std::cerr << "frequent associations: " << entries.size() << " (of "
            << freqs.size() << " distinct)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diff

struct DiffOpts {
  std::string significant, frequent, out;
  int top_k = 15;
};

struct NamedSignature {
  std::vector<std::string> ones;
  std::vector<std::string> wildcards;
};

NamedSignature parse_signature_names(const json& arr) {
  NamedSignature sig;
  for (const auto& item : arr) {
    std::string name = item.get<std::string>();
    if (name.size() >= 3 && name.ends_with("(*)")) {
      sig.wildcards.push_back(name.substr(0, name.size() - 3));
    } else {
      sig.ones.push_back(std::move(name));
    }
  }
  return sig;
}

int cmd_diff(const DiffOpts& opt) {
  if (opt.top_k < 1) throw UsageError("top-k must be >= 1");

  std::ifstream sig_in(opt.significant);
  if (!sig_in)
    throw std::runtime_error("cannot open significant associations: " + opt.significant);
  std::vector<json> significant;
  std::string line;
  while (std::getline(sig_in, line)) {
    if (line.empty() || line[0] == '#') continue;
    significant.push_back(json::parse(line));
  }

  std::ifstream freq_in(opt.frequent);
  if (!freq_in)
    throw std::runtime_error("cannot open frequent associations: " + opt.frequent);
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> top;
  bool header_seen = false;
  while (std::getline(freq_in, line) && top.size() < static_cast<std::size_t>(opt.top_k)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    const auto fields = csv_split(line);
    if (fields.size() != 3)
      throw std::runtime_error("malformed frequent association row: " + line);
    top.emplace_back(split_on(fields[0], '|'), split_on(fields[1], '|'));
  }

  report::Manifest manifest;
  manifest.subcommand = "diff";
  manifest.parameters = {{"significant", opt.significant},
                         {"frequent", opt.frequent},
                         {"top_k", opt.top_k},
                         {"out", opt.out}};
  manifest.input_digests = {{opt.significant, sha256_file_hex(opt.significant)},
                            {opt.frequent, sha256_file_hex(opt.frequent)}};
  const std::string header = header_line(manifest.write(out_stem(opt.out)));

  std::vector<std::string> lines{header};
  std::size_t unmatched = 0;
  for (auto& entry : significant) {
    const NamedSignature a = parse_signature_names(entry.at("sig_a"));
    const NamedSignature b = parse_signature_names(entry.at("sig_b"));
    bool matched = false;
    for (const auto& [exact_a, exact_b] : top) {
      if (wildcard_match_names(a.ones, a.wildcards, b.ones, b.wildcards, exact_a,
                               exact_b)) {
        matched = true;
        break;
      }
    }
    entry["matched"] = matched;
    if (!matched) ++unmatched;
    lines.push_back(entry.dump());
  }
  report::write_lines(opt.out, lines);
  std::cerr << "significant minus frequent: " << unmatched << " of "
            << significant.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// predict

struct PredictOpts {
  std::string base, future, attrs, out;
  std::string mode = "significant";
  double tau = 0.5;
  double alpha = 0.01, size_support = 0.01;
  int neg_ratio = 5;
  std::uint64_t seed = 0;
  int threads = 1;
};

int cmd_predict(const PredictOpts& opt) {
  PredictConfig cfg;
  if (opt.mode == "significant")
    cfg.mode = PredictMode::kSignificant;
  else if (opt.mode == "frequent")
    cfg.mode = PredictMode::kFrequent;
  else if (opt.mode == "jaccard")
    cfg.mode = PredictMode::kJaccard;
  else
    throw UsageError("mode must be significant, frequent or jaccard");
  if (!(opt.tau >= 0.0 && opt.tau <= 1.0)) throw UsageError("tau must be in [0,1]");
  if (opt.neg_ratio < 1) throw UsageError("neg-ratio must be >= 1");
  cfg.tau = opt.tau;
  cfg.negative_ratio = opt.neg_ratio;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.params.alpha = opt.alpha;
  cfg.params.size_support = opt.size_support;
  validate_params(cfg.params);

  const AttributedGraph base = load_graph(opt.base, opt.attrs);
  const auto future = load_edge_set(opt.future, base);

  report::Manifest manifest;
  manifest.subcommand = "predict";
  manifest.parameters = {{"base", opt.base},       {"future", opt.future},
                         {"attrs", opt.attrs},     {"mode", opt.mode},
                         {"tau", opt.tau},         {"neg_ratio", opt.neg_ratio},
                         {"alpha", opt.alpha},     {"size_support", opt.size_support},
                         {"out", opt.out}};
  manifest.input_digests = {{opt.base, sha256_file_hex(opt.base)},
                            {opt.future, sha256_file_hex(opt.future)},
                            {opt.attrs, sha256_file_hex(opt.attrs)}};
  manifest.seed = opt.seed;
  manifest.threads = opt.threads;
  const std::string header = header_line(manifest.write(out_stem(opt.out)));

  const PredictOutcome outcome = run_link_prediction(base, future, cfg);
  auto lines = report::roc_lines(outcome.roc);
  prepend(lines, header);
  report::write_lines(opt.out, lines);
  std::cerr << "positives: " << outcome.positives << ", negatives: "
            << outcome.negatives << ", auc: " << outcome.roc.auc << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
  std::uint32_t n = 1000;
  std::uint32_t l = 5;
  std::string mu = "0.6";
  std::string theta = "0.5,0.2,0.2,0.5";
  double density = 0.0;  // 0: use --scale as given
  double scale = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_prefix = "graph";
};

int cmd_generate(const GenerateOpts& opt) {
  MagConfig cfg;
  cfg.n = opt.n;
  cfg.l = opt.l;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;

  auto mu = parse_double_list(opt.mu, "mu");
  if (mu.size() == 1) mu.assign(opt.l, mu[0]);
  if (mu.size() != opt.l) throw UsageError("mu needs 1 or l values");
  cfg.mu = std::move(mu);

  const auto t = parse_double_list(opt.theta, "theta");
  if (t.size() != 4) throw UsageError("theta needs 4 values (row-major 2x2)");
  cfg.theta.assign(opt.l, {{{t[0], t[1]}, {t[2], t[3]}}});

  try {
    cfg.scale = opt.density > 0.0 ? calibrate_scale(cfg, opt.density) : opt.scale;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  report::Manifest manifest;
  manifest.subcommand = "generate";
  manifest.parameters = {{"n", opt.n},         {"l", opt.l},
                         {"mu", opt.mu},       {"theta", opt.theta},
                         {"density", opt.density}, {"scale", cfg.scale},
                         {"out_prefix", opt.out_prefix}};
  manifest.seed = opt.seed;
  manifest.threads = opt.threads;
  const std::string header = header_line(manifest.write(opt.out_prefix));

  const GeneratedGraph result = generate(cfg);
  save_graph(result.graph, opt.out_prefix + ".edges.tsv",
             opt.out_prefix + ".attrs.tsv", {header.substr(2)});

  json echo;
  echo["n"] = cfg.n;
  echo["l"] = cfg.l;
  echo["mu"] = cfg.mu;
  json theta_rows = json::array();
  for (const auto& m : cfg.theta)
    theta_rows.push_back({{m[0][0], m[0][1]}, {m[1][0], m[1][1]}});
  echo["theta"] = theta_rows;
  echo["scale"] = cfg.scale;
  echo["seed"] = cfg.seed;
  echo["edges"] = result.graph.edge_count();
  echo["density"] =
      result.graph.node_count() >= 2 ? result.graph.density() : 0.0;
  echo["clamped_pairs"] = result.clamped_pairs;
  report::write_lines(opt.out_prefix + ".config.json", {echo.dump(2)});

  if (result.clamped_pairs > 0)
    std::cerr << "warning: " << result.clamped_pairs
              << " pair probabilities clamped to 1\n";
  std::cerr << "generated " << result.graph.node_count() << " nodes, "
            << result.graph.edge_count() << " edges\n";
  return 0;
}

// ---------------------------------------------------------------------------
// stats

struct StatsOpts {
  std::string edges, attrs, out, format = "csv";
};

int cmd_stats(const StatsOpts& opt) {
  if (opt.format != "csv" && opt.format != "json")
    throw UsageError("format must be csv or json");
  const AttributedGraph g = load_graph(opt.edges, opt.attrs);
  const double density = g.node_count() >= 2 ? g.density() : 0.0;

  report::Manifest manifest;
  manifest.subcommand = "stats";
  manifest.parameters = {{"edges", opt.edges},
                         {"attrs", opt.attrs},
                         {"format", opt.format},
                         {"out", opt.out}};
  manifest.input_digests = {{opt.edges, sha256_file_hex(opt.edges)},
                            {opt.attrs, sha256_file_hex(opt.attrs)}};

  std::vector<std::string> lines;
  if (opt.format == "csv") {
    lines.push_back("nodes,edges,density,attributes");
    lines.push_back(std::to_string(g.node_count()) + "," +
                    std::to_string(g.edge_count()) + "," +
                    report::format_double(density) + "," +
                    std::to_string(g.attribute_count()));
  } else {
    json j;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    j["density"] = density;
    j["attributes"] = g.attribute_count();
    lines.push_back(j.dump());
  }

  if (opt.out.empty()) {
    std::cout << "# manifest: " << manifest.to_json().dump() << "\n";
    for (const auto& l : lines) std::cout << l << "\n";
  } else {
    prepend(lines, header_line(manifest.write(out_stem(opt.out))));
    report::write_lines(opt.out, lines);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mining of statistically significant attribute associations in "
               "node-attributed graphs"};
  app.require_subcommand(1);

  MineOpts mine;
  auto* mine_cmd = app.add_subcommand(
      "mine", "Transform a graph and report significant associations");
  mine_cmd->add_option("--edges", mine.edges, "edge file (TSV)")->required();
  mine_cmd->add_option("--attrs", mine.attrs, "attribute file (TSV)")->required();
  mine_cmd->add_option("--alpha", mine.alpha, "significance level");
  mine_cmd->add_option("--size-support", mine.size_support,
                       "minimum cluster-size fraction");
  mine_cmd->add_option("--seed", mine.seed, "partitioning seed");
  mine_cmd->add_option("--threads", mine.threads, "worker threads")
      ->check(CLI::Range(1, 1024));
  mine_cmd->add_option("--out", mine.out, "associations output (JSON lines)")
      ->required();

  FrequentOpts freq;
  auto* freq_cmd =
      app.add_subcommand("frequent", "Mine frequent attribute associations");
  freq_cmd->add_option("--edges", freq.edges, "edge file (TSV)")->required();
  freq_cmd->add_option("--attrs", freq.attrs, "attribute file (TSV)")->required();
  freq_cmd->add_option("--freq-support", freq.sigma, "frequency fraction of |E|");
  freq_cmd->add_option("--out", freq.out, "frequent associations output (CSV)")
      ->required();

  DiffOpts diff;
  auto* diff_cmd = app.add_subcommand(
      "diff", "Significant associations minus top-k frequent ones");
  diff_cmd->add_option("--significant", diff.significant,
                       "mine output (JSON lines)")->required();
  diff_cmd->add_option("--frequent", diff.frequent, "frequent output (CSV)")
      ->required();
  diff_cmd->add_option("--top-k", diff.top_k, "how many frequent rows to match");
  diff_cmd->add_option("--out", diff.out, "diff output (JSON lines)")->required();

  PredictOpts predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Score unconnected pairs and report ROC/AUC");
  predict_cmd->add_option("--base", predict.base, "base snapshot edge file")
      ->required();
  predict_cmd->add_option("--future", predict.future, "later snapshot edge file")
      ->required();
  predict_cmd->add_option("--attrs", predict.attrs, "attribute file")->required();
  predict_cmd->add_option("--mode", predict.mode,
                          "significant | frequent | jaccard");
  predict_cmd->add_option("--tau", predict.tau, "structure/attribute mix");
  predict_cmd->add_option("--neg-ratio", predict.neg_ratio,
                          "negatives per positive");
  predict_cmd->add_option("--alpha", predict.alpha, "significance level");
  predict_cmd->add_option("--size-support", predict.size_support,
                          "minimum cluster-size fraction");
  predict_cmd->add_option("--seed", predict.seed, "sampling seed");
  predict_cmd->add_option("--threads", predict.threads, "worker threads")
      ->check(CLI::Range(1, 1024));
  predict_cmd->add_option("--out", predict.out, "ROC output (CSV)")->required();

  GenerateOpts gen;
  auto* gen_cmd =
      app.add_subcommand("generate", "Generate a synthetic attributed graph");
  gen_cmd->add_option("--n", gen.n, "node count")->check(CLI::Range(1, 1 << 24));
  gen_cmd->add_option("--l", gen.l, "attribute count")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--mu", gen.mu, "attribute-1 probability (value or list)");
  gen_cmd->add_option("--theta", gen.theta, "2x2 affinity, row-major");
  gen_cmd->add_option("--density", gen.density,
                      "target density (calibrates the scale)");
  gen_cmd->add_option("--scale", gen.scale, "explicit probability scale");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--threads", gen.threads, "worker threads")
      ->check(CLI::Range(1, 1024));
  gen_cmd->add_option("--out-prefix", gen.out_prefix, "output path prefix");

  StatsOpts stats;
  auto* stats_cmd = app.add_subcommand("stats", "Node/edge/density table");
  stats_cmd->add_option("--edges", stats.edges, "edge file (TSV)")->required();
  stats_cmd->add_option("--attrs", stats.attrs, "attribute file (TSV)")->required();
  stats_cmd->add_option("--format", stats.format, "csv | json");
  stats_cmd->add_option("--out", stats.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine);
    if (freq_cmd->parsed()) return cmd_frequent(freq);
    if (diff_cmd->parsed()) return cmd_diff(diff);
    if (predict_cmd->parsed()) return cmd_predict(predict);
    if (gen_cmd->parsed()) return cmd_generate(gen);
    if (stats_cmd->parsed()) return cmd_stats(stats);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
