// probtree: build probability trees from CSV, generate synthetic records,
// draw trees as DOT graphs and run the Monte Carlo convergence check.
//
// Exit codes: 0 success / record contained, 1 record not contained,
// 2 input or parse error, 3 build error, 4 invalid argument,
// 5 validation assertion failed.

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "probtree/error.hpp"
#include "probtree/export.hpp"
#include "probtree/ingest.hpp"
#include "probtree/sampler.hpp"
#include "probtree/stats.hpp"
#include "probtree/tree.hpp"

namespace {

using namespace probtree;

enum Exit : int {
  kOk = 0,
  kNotContained = 1,
  kInputError = 2,
  kBuildError = 3,
  kInvalidArgument = 4,
  kAssertionFailed = 5,
};

constexpr double kExpectedSlope = -0.5;
constexpr double kSlopeTolerance = 0.15;

int verbosity = 0;

void diag(int level, const std::string& message) {
  if (verbosity >= level) std::cerr << message << '\n';
}

// Thrown for failures that map directly onto an exit code.
struct CommandFailure {
  int exit_code;
  std::string message;
};

struct IngestFlags {
  std::vector<std::string> bins;
  std::string missing = "error";
  char delimiter = ',';

  void attach(CLI::App& cmd) {
    cmd.add_option("--bins", bins, "Equal-width binning COL=K (repeatable)");
    cmd.add_option("--missing", missing, "Missing-value policy")
        ->check(CLI::IsMember({"error", "drop-row"}));
    cmd.add_option("--delimiter", delimiter, "CSV field delimiter");
  }

  IngestOptions options() const {
    IngestOptions opts;
    opts.delimiter = delimiter;
    opts.missing_policy = missing == "drop-row" ? MissingPolicy::DropRow : MissingPolicy::Error;
    for (const auto& spec : bins) {
      const auto eq = spec.rfind('=');
      std::optional<std::int64_t> k;
      if (eq != std::string::npos) k = parse_integer(std::string_view(spec).substr(eq + 1));
      if (eq == std::string::npos || eq == 0 || !k || *k < 2 || *k > INT32_MAX) {
        throw CommandFailure{kInvalidArgument, "invalid --bins '" + spec + "', expected COL=K with K >= 2"};
      }
      opts.bin_spec[spec.substr(0, eq)] = static_cast<int>(*k);
    }
    return opts;
  }
};

struct TreeSource {
  std::string csv;
  std::string tree;
  IngestFlags ingest;

  void attach(CLI::App& cmd) {
    auto* csv_opt = cmd.add_option("--csv", csv, "Build the tree from this CSV file");
    auto* tree_opt = cmd.add_option("--tree", tree, "Tree JSON file");
    csv_opt->excludes(tree_opt);
    tree_opt->excludes(csv_opt);
    ingest.attach(cmd);
  }

  CategoricalTable load_table() const {
    try {
      return read_csv(csv, ingest.options());
    } catch (const Error& e) {
      throw CommandFailure{kInputError, e.what()};
    }
  }

  ProbabilityTree load() const {
    if (csv.empty() == tree.empty()) {
      throw CommandFailure{kInvalidArgument, "exactly one of --csv or --tree is required"};
    }
    if (!csv.empty()) {
      const CategoricalTable table = load_table();
      try {
        return build_tree(table);
      } catch (const Error& e) {
        throw CommandFailure{kBuildError, e.what()};
      }
    }
    try {
      return from_json(read_text_file(tree));
    } catch (const Error& e) {
      throw CommandFailure{kInputError, e.what()};
    }
  }
};

void write_output(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  try {
    write_text_file(path, contents);
  } catch (const Error& e) {
    throw CommandFailure{kInputError, e.what()};
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, end);
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string join_record(const Record& record) {
  std::string out;
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i > 0) out += ',';
    out += record[i].to_string();
  }
  return out;
}

// Interprets comma-separated tokens with the value kinds of the tree's columns.
Record parse_record(const ProbabilityTree& tree, const std::string& text) {
  std::vector<std::string> tokens;
  if (!text.empty()) {
    auto rows = split_csv(text, ',');
    if (rows.size() > 1) throw CommandFailure{kInputError, "record must be a single line"};
    if (!rows.empty()) tokens = std::move(rows.front());
  }
  if (tokens.size() > tree.depth()) {
    throw CommandFailure{kInputError, "record has " + std::to_string(tokens.size()) +
                                          " values but the tree has depth " +
                                          std::to_string(tree.depth())};
  }
  const auto kinds = tree.column_kinds();
  Record record;
  for (std::size_t i = 0; i < tokens.size(); ++i) record.push_back(parse_value(tokens[i], kinds[i]));
  return record;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  auto rows = split_csv(text, ',');
  if (rows.size() != 1) throw CommandFailure{kInvalidArgument, "invalid --sizes"};
  for (const auto& token : rows.front()) {
    auto v = parse_integer(token);
    if (!v || *v <= 0) throw CommandFailure{kInvalidArgument, "invalid size '" + token + "'"};
    sizes.push_back(static_cast<std::size_t>(*v));
  }
  return sizes;
}

// --- commands ---------------------------------------------------------------

struct BuildArgs {
  std::string csv;
  std::string out;
  IngestFlags ingest;
  bool deterministic = false;
};

int cmd_build(const BuildArgs& args) {
  CategoricalTable table;
  try {
    table = read_csv(args.csv, args.ingest.options());
  } catch (const Error& e) {
    throw CommandFailure{kInputError, e.what()};
  }
  diag(2, "ingested " + std::to_string(table.row_count()) + " rows");

  std::optional<ProbabilityTree> tree;
  try {
    tree = build_tree(table);
  } catch (const Error& e) {
    throw CommandFailure{kBuildError, e.what()};
  }

  TreeMetadata meta;
  meta.source_rows = table.row_count();
  if (!args.deterministic) meta.build_timestamp = utc_timestamp();
  write_output(args.out, to_json(*tree, meta));

  if (verbosity >= 1) {
    std::string cols;
    for (const auto& c : tree->columns()) cols += (cols.empty() ? "" : ",") + c;
    std::cerr << "columns=" << cols << " rows=" << table.row_count()
              << " depth=" << tree->depth() << " node_count=" << tree->node_count() << '\n';
  }
  return kOk;
}

struct GenerateArgs {
  TreeSource source;
  std::int64_t n = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string meta;
  bool verify = false;
};

int cmd_generate(const GenerateArgs& args) {
  if (args.n <= 0) throw CommandFailure{kInvalidArgument, "-n must be a positive integer"};
  ProbabilityTree tree = args.source.load();
  Generator gen(tree, args.seed);
  const CategoricalTable records = gen.get_records(static_cast<std::size_t>(args.n));
  if (args.verify) {
    for (const auto& row : records.rows()) {
      if (!tree.oracle(row)) {
        throw CommandFailure{kAssertionFailed, "generated record not in tree: " + join_record(row)};
      }
    }
    diag(1, "verified " + std::to_string(records.row_count()) + " records");
  }
  write_output(args.out, format_csv(records));
  diag(1, "rng=" + std::string(kRngAlgorithm) + " seed=" + std::to_string(args.seed) +
              " n=" + std::to_string(args.n));
  if (!args.meta.empty()) {
    nlohmann::ordered_json m;
    m["rng_algorithm"] = std::string(kRngAlgorithm);
    m["seed"] = args.seed;
    m["n"] = args.n;
    m["columns"] = tree.columns();
    write_output(args.meta, m.dump(2) + "\n");
  }
  return kOk;
}

struct DrawArgs {
  TreeSource source;
  std::string out;
  bool single_root = false;
};

int cmd_draw(const DrawArgs& args) {
  const ProbabilityTree tree = args.source.load();
  write_output(args.out, to_dot(tree, DotOptions{args.single_root}));
  diag(1, std::to_string(tree.root().data.size()) + " components");
  return kOk;
}

struct ValidateArgs {
  TreeSource source;
  std::string sizes = "100,10000,1000000";
  std::size_t trials = 20;
  std::size_t column = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool assert_slope = false;
};

int cmd_validate(const ValidateArgs& args) {
  const std::vector<std::size_t> sizes = parse_sizes(args.sizes);
  const ProbabilityTree tree = args.source.load();
  ConvergenceReport report;
  try {
    report = convergence_study(tree, args.column, sizes, args.trials, args.seed);
  } catch (const Error& e) {
    throw CommandFailure{kInvalidArgument, e.what()};
  }
  for (std::size_t i = 0; i < report.sizes.size(); ++i) {
    diag(1, "n=" + std::to_string(report.sizes[i]) + " mean_l1=" + shortest(report.errors[i]));
  }
  if (!args.out.empty()) {
    std::filesystem::path json_path(args.out);
    std::filesystem::path csv_path = json_path;
    csv_path.replace_extension(".csv");
    if (csv_path == json_path) csv_path += ".csv";
    write_output(json_path.string(), report_to_json(report));
    write_output(csv_path.string(), report_to_csv(report));
  }

  if (report.fitted_slope) {
    std::cout << "slope=" << shortest(*report.fitted_slope) << '\n';
  } else {
    std::cout << "slope=undefined\n";
  }
  if (args.assert_slope) {
    if (!report.fitted_slope) {
      throw CommandFailure{kAssertionFailed,
                           "slope undefined: need >= 3 sizes and nonzero errors "
                           "(a tree without sampling variance has zero error)"};
    }
    if (std::abs(*report.fitted_slope - kExpectedSlope) > kSlopeTolerance) {
      throw CommandFailure{kAssertionFailed, "slope " + shortest(*report.fitted_slope) +
                                                 " outside -0.5 +/- 0.15"};
    }
  }
  return kOk;
}

struct OracleArgs {
  TreeSource source;
  std::string record;
};

int cmd_oracle(const OracleArgs& args) {
  const ProbabilityTree tree = args.source.load();
  const Record record = parse_record(tree, args.record);
  const bool contained = tree.oracle(record);
  std::cout << (contained ? "true" : "false") << " p=" << shortest(tree.record_probability(record))
            << '\n';
  return contained ? kOk : kNotContained;
}

int cmd_max_record(const TreeSource& source) {
  const ProbabilityTree tree = source.load();
  const MaxRecord best = tree.max_record();
  std::string probs;
  for (double p : best.probabilities) probs += (probs.empty() ? "" : ",") + fixed6(p);
  std::cout << join_record(best.values) << '\n' << probs << '\n';
  if (verbosity >= 1) {
    std::cout << "record_probability=" << shortest(tree.record_probability(best.values)) << '\n';
  }
  return kOk;
}

struct InfoArgs {
  TreeSource source;
  bool print_tree = false;
};

int cmd_info(const InfoArgs& args) {
  const ProbabilityTree tree = args.source.load();
  std::string cols;
  for (const auto& c : tree.columns()) cols += (cols.empty() ? "" : ",") + c;
  std::cout << "columns=" << cols << '\n'
            << "depth=" << tree.depth() << '\n'
            << "node_count=" << tree.node_count() << '\n'
            << "components=" << tree.root().data.size() << '\n';
  if (args.print_tree) std::cout << tree.print();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability trees over categorical tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-v", verbosity, "Increase diagnostic output (-v, -vv)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a tree from a CSV file");
  build_cmd->add_option("--csv", build.csv, "Input CSV")->required();
  build_cmd->add_option("--out", build.out, "Output tree JSON")->required();
  build_cmd->add_flag("--deterministic", build.deterministic, "Omit the build timestamp");
  build.ingest.attach(*build_cmd);

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Generate synthetic records");
  generate.source.attach(*generate_cmd);
  generate_cmd->add_option("-n", generate.n, "Number of records");
  generate_cmd->add_option("--seed", generate.seed, "Generator seed");
  generate_cmd->add_option("--out", generate.out, "Output CSV (stdout if omitted)");
  generate_cmd->add_option("--meta", generate.meta, "Write run metadata JSON here");
  generate_cmd->add_flag("--verify", generate.verify, "Check every record with the oracle");

  DrawArgs draw;
  auto* draw_cmd = app.add_subcommand("draw", "Emit the tree as a DOT graph");
  draw.source.attach(*draw_cmd);
  draw_cmd->add_option("--out", draw.out, "Output DOT file (stdout if omitted)");
  draw_cmd->add_flag("--single-root", draw.single_root, "Join components under one root vertex");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Monte Carlo convergence study");
  validate.source.attach(*validate_cmd);
  validate_cmd->add_option("--sizes", validate.sizes, "Comma-separated sample sizes");
  validate_cmd->add_option("--trials", validate.trials, "Trials per size");
  validate_cmd->add_option("--column", validate.column, "Column index to study");
  validate_cmd->add_option("--seed", validate.seed, "Base seed");
  validate_cmd->add_option("--out", validate.out, "Report JSON path; CSV goes next to it");
  validate_cmd->add_flag("--assert-slope", validate.assert_slope,
                         "Exit 5 unless the slope is within -0.5 +/- 0.15");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Check whether a record prefix is in the tree");
  oracle.source.attach(*oracle_cmd);
  oracle_cmd->add_option("record", oracle.record, "Comma-separated values")->required();

  TreeSource max_source;
  auto* max_cmd = app.add_subcommand("max-record", "Greedy most probable record");
  max_source.attach(*max_cmd);

  InfoArgs info;
  auto* info_cmd = app.add_subcommand("info", "Summarize a tree");
  info.source.attach(*info_cmd);
  info_cmd->add_flag("--print-tree", info.print_tree, "Print the tree in pre-order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidArgument;
  }

  try {
    if (*build_cmd) return cmd_build(build);
    if (*generate_cmd) return cmd_generate(generate);
    if (*draw_cmd) return cmd_draw(draw);
    if (*validate_cmd) return cmd_validate(validate);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*max_cmd) return cmd_max_record(max_source);
    if (*info_cmd) return cmd_info(info);
  } catch (const CommandFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInvalidArgument;
}
