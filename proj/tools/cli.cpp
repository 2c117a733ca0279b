// Copyright 2026 The pcm-weights Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string_view>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pcmw/error.hpp"
#include "pcmw/forest.hpp"
#include "pcmw/graph.hpp"
#include "pcmw/lls.hpp"
#include "pcmw/pcm.hpp"
#include "pcmw/pcm_io.hpp"
#include "pcmw/verify.hpp"

namespace pcmw::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Thrown by command bodies to leave with a specific exit code after the
// message has been written.
struct Exit {
  int code;
};

enum class OutputMode { kHuman, kJson };

struct CommonOptions {
  std::string input;
  std::string format;
  std::string output = "human";
  int threads = 0;
  std::uint64_t max_trees = 1'000'000;
  std::string normalization = "prod1";
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("PCM_WEIGHTS_THREADS")) {
    unsigned value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) {
      return value;
    }
  }
  return 1;
}

OutputMode output_mode(const CommonOptions& o) {
  return o.output == "json" ? OutputMode::kJson : OutputMode::kHuman;
}

Normalization normalization(const CommonOptions& o) {
  return *parse_normalization(o.normalization);
}

PcmFormat resolve_format(const std::string& flag, const std::filesystem::path& path,
                         std::optional<PcmFormat> fallback = std::nullopt) {
  if (!flag.empty()) return *parse_format(flag);
  if (auto f = format_from_extension(path)) return *f;
  if (fallback) return *fallback;
  throw Error(ErrorCode::kParseError,
              "cannot infer format of '" + path.string() + "'; pass --format");
}

IncompletePCM load_input(const CommonOptions& o) {
  if (o.input.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "--input is required");
  }
  return read_pcm(o.input, resolve_format(o.format, o.input));
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string vec(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) s += ", ";
    s += num(v[k]);
  }
  return s + ")";
}

Json json_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

double max_rel_diff(const WeightVector& a, const WeightVector& b) {
  const WeightVector pa = renormalize(a, Normalization::kProductOne);
  const WeightVector pb = renormalize(b, Normalization::kProductOne);
  double worst = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    worst = std::max(worst, std::abs(pa[k] - pb[k]) / pb[k]);
  }
  return worst;
}

// Parses "a..b" or "a".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text,
                                                const std::string& flag) {
  auto parse_one = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::kInvalidParameters,
                  flag + " expects N or A..B, got '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_one(text);
    return {v, v};
  }
  const std::string_view s(text);
  const auto lo = parse_one(s.substr(0, dots));
  const auto hi = parse_one(s.substr(dots + 2));
  if (lo > hi) {
    throw Error(ErrorCode::kInvalidParameters, flag + " range is inverted");
  }
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() ||
        !std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidParameters,
                  flag + " expects a comma separated list of values >= 0");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return values;
}

void enforce_cap(const Context& ctx, const CommonOptions& o, std::uint64_t count) {
  if (count > o.max_trees) {
    if (output_mode(o) == OutputMode::kJson) {
      ctx.out << Json{{"S", count}, {"error", "tree cap exceeded"}}.dump() << '\n';
    } else {
      ctx.out << "S = " << count << '\n';
    }
    ctx.err << "error: " << count << " spanning trees exceed --max-trees "
            << o.max_trees << '\n';
    throw Exit{kTreeCapExceeded};
  }
}

// --- solve -----------------------------------------------------------------

struct SolveOptions {
  std::string method = "lls";
};

void cmd_solve(const Context& ctx, const CommonOptions& o, const SolveOptions& s) {
  const IncompletePCM pcm = load_input(o);
  const ComparisonGraph g = build_graph(pcm);
  require_connected(g);
  const Normalization norm = normalization(o);
  const bool want_lls = s.method != "trees";
  const bool want_trees = s.method != "lls";

  std::optional<WeightVector> lls;
  std::optional<WeightVector> trees;
  std::uint64_t tree_count = 0;
  if (want_lls) lls = solve_lls(pcm, norm);
  if (want_trees) {
    enforce_cap(ctx, o, count_spanning_trees(g));
    const TreeWeightSet set = accumulate_tree_weights(
        pcm, all_trees(pcm), {.threads = resolve_threads(o.threads)});
    tree_count = set.tree_count;
    trees = geometric_mean(set, norm);
  }

  if (output_mode(o) == OutputMode::kJson) {
    Json doc;
    doc["n"] = pcm.size();
    doc["m"] = g.edge_count();
    doc["normalization"] = to_string(norm);
    doc["method"] = s.method;
    if (lls) {
      doc["lls"] = {{"weights", json_array(lls->values())},
                    {"objective", lls_objective(pcm, *lls)}};
    }
    if (trees) {
      doc["trees"] = {{"weights", json_array(trees->values())},
                      {"objective", lls_objective(pcm, *trees)},
                      {"S", tree_count}};
    }
    if (lls && trees) doc["max_rel_diff"] = max_rel_diff(*lls, *trees);
    ctx.out << doc.dump() << '\n';
    return;
  }
  ctx.out << "n = " << pcm.size() << ", m = " << g.edge_count()
          << ", normalization = " << to_string(norm) << '\n';
  if (lls) {
    ctx.out << "lls weights:   " << vec(lls->values()) << '\n'
            << "lls objective: " << num(lls_objective(pcm, *lls)) << '\n';
  }
  if (trees) {
    ctx.out << "tree weights:  " << vec(trees->values()) << "  (S = " << tree_count
            << ")\n"
            << "tree objective: " << num(lls_objective(pcm, *trees)) << '\n';
  }
  if (lls && trees) {
    ctx.out << "max relative difference: " << num(max_rel_diff(*lls, *trees)) << '\n';
  }
}

// --- trees -----------------------------------------------------------------

struct TreesOptions {
  bool enumerate = false;
};

void cmd_trees_count(const Context& ctx, const CommonOptions& o, const TreesOptions& t) {
  const IncompletePCM pcm = load_input(o);
  const ComparisonGraph g = build_graph(pcm);
  const std::uint64_t count = count_spanning_trees(g);
  std::optional<std::uint64_t> enumerated;
  if (t.enumerate && count > 0) {
    enforce_cap(ctx, o, count);
    SpanningTreeEnumerator trees(g);
    while (trees.next()) {
    }
    enumerated = trees.produced();
  }
  if (output_mode(o) == OutputMode::kJson) {
    Json doc{{"S", count}};
    if (enumerated) doc["enumerated"] = *enumerated;
    ctx.out << doc.dump() << '\n';
  } else {
    ctx.out << "S = " << count << '\n';
    if (enumerated) {
      ctx.out << "enumerated = " << *enumerated
              << (*enumerated == count ? " (agrees)" : " (MISMATCH)") << '\n';
    }
  }
  if (count == 0) require_connected(g);
  if (enumerated && *enumerated != count) throw Exit{kVerificationFailed};
}

void cmd_trees_list(const Context& ctx, const CommonOptions& o) {
  const IncompletePCM pcm = load_input(o);
  const ComparisonGraph g = build_graph(pcm);
  require_connected(g);
  const std::uint64_t count = count_spanning_trees(g);
  enforce_cap(ctx, o, count);
  const bool json = output_mode(o) == OutputMode::kJson;
  if (json) {
    ctx.out << Json{{"S", count}}.dump() << '\n';
  } else {
    ctx.out << "S = " << count << '\n';
  }
  SpanningTreeEnumerator trees(g);
  std::uint64_t index = 0;
  while (auto tree = trees.next()) {
    ++index;
    if (json) {
      Json edges = Json::array();
      for (const Edge& e : tree->edges()) edges.push_back({e.u + 1, e.v + 1});
      ctx.out << Json{{"index", index}, {"edges", std::move(edges)}}.dump() << '\n';
    } else {
      ctx.out << index << ':';
      for (const Edge& e : tree->edges()) ctx.out << ' ' << e.u + 1 << '-' << e.v + 1;
      ctx.out << '\n';
    }
  }
}

// --- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string n = "3..7";
  std::string extra_edges = "0..5";
  std::string sigma = "0,0.1,0.5,1.0";
  std::size_t count = 1000;
};

void cmd_verify(const Context& ctx, const CommonOptions& o, const VerifyOptions& v) {
  const Tolerances tol{.theorem4 = o.tol};
  const unsigned threads = resolve_threads(o.threads);
  std::vector<VerificationReport> reports;
  if (!o.input.empty()) {
    const IncompletePCM pcm = load_input(o);
    require_connected(build_graph(pcm));
    reports.push_back(verify_instance(pcm, o.input, o.seed, tol, threads));
  } else {
    CorpusSpec spec;
    std::tie(spec.n_min, spec.n_max) = parse_range(v.n, "--n");
    std::tie(spec.extra_min, spec.extra_max) = parse_range(v.extra_edges, "--extra-edges");
    spec.sigmas = parse_list(v.sigma, "--sigma");
    spec.count = v.count;
    spec.seed = o.seed;
    reports = verify_corpus(spec, tol, threads);
  }
  std::size_t passed = 0;
  for (const auto& r : reports) {
    ctx.out << to_json(r).dump() << '\n';
    if (r.passed) ++passed;
  }
  if (output_mode(o) == OutputMode::kHuman) {
    ctx.out << "verified " << reports.size() << " instance(s): " << passed
            << " passed, " << reports.size() - passed << " failed\n";
  }
  if (passed != reports.size()) throw Exit{kVerificationFailed};
}

// --- bench -----------------------------------------------------------------

struct BenchOptions {
  std::string family = "complete";
  std::string n = "4..8";
  double sigma = 0.5;
};

struct BenchRecord {
  std::size_t n;
  std::size_t m;
  std::uint64_t tree_count;
  double lls_seconds;
  double enumeration_seconds;
  double aggregation_seconds;
  std::uint64_t trees_visited;
  std::size_t system_size;
  double max_rel_diff;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void cmd_bench(const Context& ctx, const CommonOptions& o, const BenchOptions& b) {
  const auto [n_min, n_max] = parse_range(b.n, "--n");
  if (n_min < 2) throw Error(ErrorCode::kInvalidParameters, "--n must be >= 2");
  const unsigned threads = resolve_threads(o.threads);
  const bool json = output_mode(o) == OutputMode::kJson;
  if (!json) {
    ctx.out << fmt::format("family = {}\n{:>4} {:>5} {:>12} {:>12} {:>12} {:>12} {:>10}\n",
                           b.family, "n", "m", "S", "lls_s", "enum_s", "aggr_s",
                           "rel_diff");
  }
  std::optional<std::size_t> crossover;
  bool all_agree = true;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::size_t complete_extra = n * (n - 1) / 2 - (n - 1);
    std::size_t extra = 0;
    if (b.family == "complete") extra = complete_extra;
    if (b.family == "sparse") extra = std::min(n, complete_extra);
    const GeneratedInstance inst =
        gen_random_pcm({n, extra, b.sigma, splitmix64(o.seed + n)});
    const ComparisonGraph g = build_graph(inst.pcm);
    const std::uint64_t count = count_spanning_trees(g);
    enforce_cap(ctx, o, count);

    BenchRecord rec{n, g.edge_count(), count, 0, 0, 0, 0, n - 1, 0};
    auto start = Clock::now();
    const WeightVector lls = solve_lls(inst.pcm, Normalization::kProductOne);
    rec.lls_seconds = seconds_since(start);

    start = Clock::now();
    SpanningTreeEnumerator trees(g);
    while (trees.next()) {
    }
    rec.enumeration_seconds = seconds_since(start);
    rec.trees_visited = trees.produced();

    start = Clock::now();
    const TreeWeightSet set =
        accumulate_tree_weights(inst.pcm, all_trees(inst.pcm), {.threads = threads});
    const WeightVector geo = geometric_mean(set, Normalization::kProductOne);
    rec.aggregation_seconds = seconds_since(start);
    rec.max_rel_diff = max_rel_diff(lls, geo);

    const bool agree = rec.max_rel_diff <= o.tol && rec.trees_visited == count &&
                       set.tree_count == count;
    all_agree = all_agree && agree;
    if (!crossover && rec.aggregation_seconds > rec.lls_seconds) crossover = n;

    if (json) {
      ctx.out << Json{{"family", b.family},
                      {"n", rec.n},
                      {"m", rec.m},
                      {"S", rec.tree_count},
                      {"lls_time", rec.lls_seconds},
                      {"enumeration_time", rec.enumeration_seconds},
                      {"aggregation_time", rec.aggregation_seconds},
                      {"trees_visited", rec.trees_visited},
                      {"linear_system_size", rec.system_size},
                      {"max_rel_diff", rec.max_rel_diff},
                      {"agree", agree}}
                     .dump()
              << '\n';
    } else {
      ctx.out << fmt::format("{:>4} {:>5} {:>12} {:>12.3e} {:>12.3e} {:>12.3e} {:>10.2e}\n",
                             rec.n, rec.m, rec.tree_count, rec.lls_seconds,
                             rec.enumeration_seconds, rec.aggregation_seconds,
                             rec.max_rel_diff);
    }
  }
  if (!json) {
    if (crossover) {
      ctx.out << "tree aggregation slower than the Laplacian solve from n = "
              << *crossover << " on this machine\n";
    } else {
      ctx.out << "tree aggregation never slower than the Laplacian solve in this range\n";
    }
  }
  if (!all_agree) {
    ctx.err << "error: pipelines disagree beyond --tol " << o.tol << '\n';
    throw Exit{kVerificationFailed};
  }
}

// --- gen -------------------------------------------------------------------

struct GenOptions {
  std::size_t n = 0;
  std::size_t extra_edges = 0;
  double sigma = 0.0;
  std::string path;
};

void cmd_gen(const Context& ctx, const CommonOptions& o, const GenOptions& g) {
  const GeneratedInstance inst = gen_random_pcm({g.n, g.extra_edges, g.sigma, o.seed});
  const PcmFormat format = resolve_format(o.format, g.path, PcmFormat::kJson);
  write_pcm(inst.pcm, g.path, format);
  if (output_mode(o) == OutputMode::kJson) {
    ctx.out << Json{{"path", g.path},
                    {"n", inst.pcm.size()},
                    {"m", inst.pcm.comparison_count()}}
                   .dump()
            << '\n';
  } else {
    ctx.out << "wrote " << g.path << " (n = " << inst.pcm.size()
            << ", m = " << inst.pcm.comparison_count() << ")\n";
  }
}

void add_input_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-i,--input", o.input, "Input matrix file");
  cmd->add_option("--format", o.format, "Input format (default: by extension)")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_output_option(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--output", o.output, "Output mode")
      ->check(CLI::IsMember({"human", "json"}));
}

void add_threads_option(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--threads", o.threads,
                  "Worker threads (default: $PCM_WEIGHTS_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

void add_cap_option(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--max-trees", o.max_trees, "Refuse to enumerate more trees than this");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Priority weights from (in)complete pairwise comparison matrices",
               "pcm-weights"};
  app.require_subcommand(1);
  CommonOptions common;
  SolveOptions solve_opts;
  TreesOptions trees_opts;
  VerifyOptions verify_opts;
  BenchOptions bench_opts;
  GenOptions gen_opts;

  auto* solve = app.add_subcommand("solve", "Compute the weight vector");
  add_input_options(solve, common);
  add_output_option(solve, common);
  add_threads_option(solve, common);
  add_cap_option(solve, common);
  solve->add_option("--normalization", common.normalization, "Weight normalization")
      ->check(CLI::IsMember({"first1", "sum1", "prod1"}));
  solve->add_option("--method", solve_opts.method, "Weighting pipeline")
      ->check(CLI::IsMember({"lls", "trees", "both"}));

  auto* trees = app.add_subcommand("trees", "Count or list spanning trees");
  trees->require_subcommand(1);
  auto* trees_count = trees->add_subcommand("count", "Print the spanning tree count");
  add_input_options(trees_count, common);
  add_output_option(trees_count, common);
  add_cap_option(trees_count, common);
  trees_count->add_flag("--enumerate", trees_opts.enumerate,
                        "Also enumerate and compare with the determinant count");
  auto* trees_list = trees->add_subcommand("list", "Stream every spanning tree");
  add_input_options(trees_list, common);
  add_output_option(trees_list, common);
  add_cap_option(trees_list, common);

  auto* verify = app.add_subcommand("verify", "Check both pipelines agree");
  add_input_options(verify, common);
  add_output_option(verify, common);
  add_threads_option(verify, common);
  verify->add_option("--tol", common.tol, "Relative tolerance between pipelines");
  verify->add_option("--seed", common.seed, "Corpus seed");
  verify->add_option("--n", verify_opts.n, "Node count range, N or A..B");
  verify->add_option("--extra-edges", verify_opts.extra_edges, "Extra edge range");
  verify->add_option("--sigma", verify_opts.sigma, "Comma separated noise levels");
  verify->add_option("--count", verify_opts.count, "Number of corpus instances");

  auto* bench = app.add_subcommand("bench", "Time both pipelines");
  add_output_option(bench, common);
  add_threads_option(bench, common);
  add_cap_option(bench, common);
  bench->add_option("--family", bench_opts.family, "Instance family")
      ->check(CLI::IsMember({"complete", "tree", "sparse"}));
  bench->add_option("--n", bench_opts.n, "Node count range, N or A..B");
  bench->add_option("--sigma", bench_opts.sigma, "Noise level")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", common.seed, "Instance seed");
  bench->add_option("--tol", common.tol, "Required agreement between pipelines");

  auto* gen = app.add_subcommand("gen", "Write a random connected instance");
  gen->add_option("--n", gen_opts.n, "Node count")->required();
  gen->add_option("--extra-edges", gen_opts.extra_edges, "Edges beyond a spanning tree");
  gen->add_option("--sigma", gen_opts.sigma, "Log-normal noise level");
  gen->add_option("--seed", common.seed, "Generator seed");
  gen->add_option("-o", gen_opts.path, "Output path")->required();
  gen->add_option("--format", common.format, "Output format (default: by extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  add_output_option(gen, common);

  std::vector<const char*> argv{"pcm-weights"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const Context ctx{out, err};
  try {
    if (solve->parsed()) {
      cmd_solve(ctx, common, solve_opts);
    } else if (trees_count->parsed()) {
      cmd_trees_count(ctx, common, trees_opts);
    } else if (trees_list->parsed()) {
      cmd_trees_list(ctx, common);
    } else if (verify->parsed()) {
      cmd_verify(ctx, common, verify_opts);
    } else if (bench->parsed()) {
      cmd_bench(ctx, common, bench_opts);
    } else if (gen->parsed()) {
      cmd_gen(ctx, common, gen_opts);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const DisconnectedGraphError& e) {
    err << "error: " << e.what() << '\n';
    return kDisconnected;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace pcmw::cli
