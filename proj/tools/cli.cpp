#include "cli.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cohoforge/cohomology.hpp"
#include "cohoforge/errors.hpp"
#include "cohoforge/group_spec.hpp"
#include "cohoforge/scenarios.hpp"

namespace cohoforge {

namespace {

struct CliConfig {
  std::uint32_t p = 2;
  std::optional<std::size_t> max_degree;
  std::optional<std::string> strategy;
  std::string format = "text";
  bool extended = false;
  std::size_t threads = 1;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
};

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class Command {
 public:
  Command(const CliConfig& config, std::ostream& out) : config_(config), out_(out) {
    if (!is_prime(config.p)) throw std::invalid_argument("--p " + std::to_string(config.p) + " is not prime");
    if (config.max_degree && *config.max_degree < 1) throw std::invalid_argument("--max-degree must be at least 1");
    if (!config.no_cache) options_.cache = std::make_shared<ResolutionCache>(cache_directory(config.cache_dir));
    options_.threads = std::max<std::size_t>(1, config.threads);
    options_.extended = config.extended;
  }

  const ScenarioOptions& options() const { return options_; }
  std::size_t degree(std::size_t fallback) const { return config_.max_degree.value_or(fallback); }

  ResolutionPtr resolution(const GroupPtr& g, std::size_t length) const {
    if (!config_.strategy) return obtain_resolution(options_, g, config_.p, length);
    const auto s = parse_strategy(*config_.strategy);
    if (options_.cache) return options_.cache->get(g, config_.p, length, s);
    return build_resolution(g, config_.p, length, s);
  }

  /// Emits a report; `lines` is the text-mode rendering of report.result.
  void emit(const ScenarioReport& report, const std::vector<std::string>& lines) const {
    if (config_.format == "json") {
      out_ << to_json(report).dump(2) << "\n";
      return;
    }
    out_ << to_text(report);
    for (const auto& l : lines) out_ << "  " << l << "\n";
  }

 private:
  const CliConfig& config_;
  ScenarioOptions options_;
  std::ostream& out_;
};

void finish(ScenarioReport& report, Clock::time_point start) {
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string identity_text(const std::pair<std::string, bool>& id) {
  return id.first + ": " + (id.second ? "true" : "false");
}

int cmd_dims(const Command& cmd, const CliConfig& config, const std::string& spec) {
  const auto start = Clock::now();
  const std::size_t n = cmd.degree(4);
  auto g = realize(spec);
  auto res = cmd.resolution(g, n + 1);
  const auto dims = cohomology_dims(*res, n);
  ScenarioReport report;
  report.scenario = "dims";
  report.params = {{"group", spec}, {"p", config.p}, {"max_degree", n}, {"strategy", to_string(res->strategy())}};
  report.result = {{"order", g->order()}, {"dims", dims}};
  finish(report, start);
  cmd.emit(report, {"dims: " + format_dims(dims)});
  return kExitOk;
}

int cmd_fingerprint(const Command& cmd, const CliConfig& config, const std::string& spec) {
  const auto start = Clock::now();
  const std::size_t n = cmd.degree(4);
  auto g = realize(spec);
  auto res = cmd.resolution(g, n + 1);
  const auto fp = ring_fingerprint(res, n);
  ScenarioReport report;
  report.scenario = "fingerprint";
  report.params = {{"group", spec}, {"p", config.p}, {"max_degree", n}, {"strategy", to_string(res->strategy())}};
  Json identities = Json::array();
  std::vector<std::string> lines{"dims: " + format_dims(fp.dims), "dec_dims: " + format_dims(fp.dec_dims)};
  for (const auto& id : fp.identities) {
    identities.push_back({{"identity", id.first}, {"holds", id.second}});
    lines.push_back(identity_text(id));
  }
  report.result = {{"dims", fp.dims}, {"dec_dims", fp.dec_dims}, {"identities", identities}};
  finish(report, start);
  cmd.emit(report, lines);
  return kExitOk;
}

int cmd_inflate(const Command& cmd, const CliConfig& config, const std::string& source_spec,
                const std::string& target_spec, const std::string& map, std::size_t degree) {
  const auto start = Clock::now();
  auto source = realize(source_spec);
  auto target = realize(target_spec);
  auto phi = parse_generator_map(source, target, map);
  if (!phi.is_surjective()) throw std::invalid_argument("the generator map is not surjective");
  auto rs = cmd.resolution(source, degree + 1);
  auto rt = cmd.resolution(target, degree + 1);
  auto source_ladder = dec_ladder(rs, degree);
  auto target_ladder = dec_ladder(rt, degree);
  ScenarioReport report;
  report.scenario = "inflate";
  report.params = {{"source", source_spec}, {"target", target_spec}, {"map", map}, {"degree", degree}, {"p", config.p}};
  Json classes = Json::array();
  std::vector<std::string> lines;
  const auto basis = cocycle_basis(rt, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto image = inflation(phi, rs, rt, basis[i]);
    const bool vanishes = image.is_zero();
    const bool decomposable = is_fully_decomposable(image, source_ladder);
    const bool was_decomposable = is_fully_decomposable(basis[i], target_ladder);
    classes.push_back({{"index", i},
                       {"vanishes", vanishes},
                       {"decomposable", decomposable},
                       {"target_decomposable", was_decomposable}});
    lines.push_back("class " + std::to_string(i) + ": " + (vanishes ? "vanishes" : "nonzero") + ", " +
                    (decomposable ? "decomposable" : "not decomposable") + " (in the target: " +
                    (was_decomposable ? "decomposable" : "not decomposable") + ")");
  }
  if (basis.empty()) lines.push_back("H^" + std::to_string(degree) + " of the target is 0");
  report.result = {{"classes", classes}};
  finish(report, start);
  cmd.emit(report, lines);
  return kExitOk;
}

std::string status_name(DegreeOneStatus s) {
  switch (s) {
    case DegreeOneStatus::generated:
      return "generated";
    case DegreeOneStatus::not_generated:
      return "not_generated";
    case DegreeOneStatus::prime_does_not_divide_order:
      return "prime_does_not_divide_order";
  }
  return "unknown";
}

int cmd_classify(const Command& cmd, const CliConfig& config, const std::string& spec) {
  const auto start = Clock::now();
  auto g = realize(spec);
  const auto verdict = degree_one_classifier(g, config.p);
  ScenarioReport report;
  report.scenario = "classify";
  report.params = {{"group", spec}, {"p", config.p}};
  report.result = {{"generated_in_degree_one", verdict.generated_in_degree_one},
                   {"status", status_name(verdict.status)},
                   {"reason", verdict.reason}};
  if (verdict.witness) report.result["complement_order"] = verdict.witness->order();
  finish(report, start);
  cmd.emit(report, {std::string("generated in degree one: ") + (verdict.generated_in_degree_one ? "true" : "false"),
                    "reason: " + verdict.reason});
  return kExitOk;
}

std::vector<std::string> census_lines(const ScenarioReport& report) {
  std::vector<std::string> lines;
  for (const auto& row : report.result) {
    std::string line = row["group"].get<std::string>() + " dims " + format_dims(row["dims"].get<std::vector<std::size_t>>()) + " dec " +
                       format_dims(row["dec_dims"].get<std::vector<std::size_t>>());
    if (!row["witness"].is_null()) line += " witness " + std::to_string(row["witness"].get<std::size_t>());
    lines.push_back(line);
  }
  return lines;
}

int cmd_report(const Command& cmd, const ScenarioReport& report) {
  cmd.emit(report, report.scenario == "census" ? census_lines(report) : std::vector<std::string>{});
  return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  CLI::App app{"Mod-p cohomology of finite groups: resolutions, cup products, inflation"};
  app.name("cohoforge");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--p", config.p, "prime field F_p")->capture_default_str();
  app.add_option("--max-degree", config.max_degree, "highest cohomological degree");
  app.add_option("--strategy", config.strategy, "resolution strategy")
      ->check(CLI::IsMember({"minimal", "greedy"}));
  app.add_option("--format", config.format, "output format")->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--extended", config.extended, "allow the order-729 tier");
  app.add_option("--threads", config.threads, "worker threads")->capture_default_str();
  app.add_option("--cache-dir", config.cache_dir, "resolution cache directory (default $COHOFORGE_CACHE)");
  app.add_flag("--no-cache", config.no_cache, "do not read or write the resolution cache");

  std::string spec, target, map;
  std::size_t degree = 4;
  std::string scenario;
  ScenarioParams sp;

  auto* dims = app.add_subcommand("dims", "dims of H^0..H^N");
  dims->add_option("group", spec, "group spec")->required();
  auto* fingerprint = app.add_subcommand("fingerprint", "dims, Dec dims and degree-one identities");
  fingerprint->add_option("group", spec, "group spec")->required();
  auto* inflate = app.add_subcommand("inflate", "inflate H^degree(target) along a surjection source -> target");
  inflate->add_option("source", spec, "source group spec")->required();
  inflate->add_option("target", target, "target group spec")->required();
  inflate->add_option("--map", map, "generator map, e.g. \"g->g,h->h\"; unlisted names map to namesakes");
  inflate->add_option("--degree", degree, "cohomological degree")->capture_default_str();
  auto* classify = app.add_subcommand("classify", "is H*(G, F_p) generated in degree one");
  classify->add_option("group", spec, "group spec")->required();
  auto* census = app.add_subcommand("census", "degree-one classifier against Dec ladders over the catalog");
  auto* repro = app.add_subcommand("repro", "run a reproduction scenario");
  repro->add_option("scenario", scenario, "scenario id")->required()->check(CLI::IsMember(scenario_ids()));
  repro->add_option("--n", sp.n, "tower level");
  repro->add_option("--d", sp.d, "rank of the kernel");
  repro->add_option("--k", sp.k, "twist exponent for odd p");

  std::ostringstream buffer;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    Command cmd(config, buffer);
    int code = kExitOk;
    if (*dims) {
      code = cmd_dims(cmd, config, spec);
    } else if (*fingerprint) {
      code = cmd_fingerprint(cmd, config, spec);
    } else if (*inflate) {
      code = cmd_inflate(cmd, config, spec, target, map, degree);
    } else if (*classify) {
      code = cmd_classify(cmd, config, spec);
    } else if (*census) {
      code = cmd_report(cmd, scenario_census(config.p, cmd.degree(5), cmd.options()));
    } else if (*repro) {
      sp.p = app.get_option("--p")->count() ? std::optional<std::uint32_t>(config.p) : std::nullopt;
      sp.max_degree = config.max_degree;
      code = cmd_report(cmd, run_scenario(scenario, sp, cmd.options()));
    }
    out << buffer.str();
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const RealizeError& e) {
    err << "realize error: " << e.what() << "\n";
    return kExitRealize;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace cohoforge
