// Command-line front end: feasibility tables, the generating-set search,
// structural verification of graph files, Kautz graph generation, and the
// group catalog listing.
//
// Exit codes: 0 success / verified; 1 verification failed; 2 usage or
// parse error; 3 infeasible parameters; 4 no groups available.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moorecay/catalog.hpp"
#include "moorecay/feasibility.hpp"
#include "moorecay/group.hpp"
#include "moorecay/mixed_graph.hpp"
#include "moorecay/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoGroups = 4;

std::optional<std::string> env_string(const char* name) {
  const char* value = std::getenv(name);
  if (value && *value) return std::string(value);
  return std::nullopt;
}

int cmd_feasible(long long max_order) {
  for (const moorecay::FeasibleParams& p : moorecay::enumerate_feasible(max_order)) {
    std::cout << p.n << ' ' << p.r << ' ' << p.z << ' ' << p.c << ' ';
    if (p.splits.empty()) {
      std::cout << '-';
    } else {
      for (size_t i = 0; i < p.splits.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << p.splits[i];
      }
    }
    std::cout << '\n';
  }
  return kExitOk;
}

struct SearchArgs {
  long long order = 0;
  long long r = -1, z = -1;
  std::string group_dir;
  bool ingested_only = false;
  bool assume_complete = false;
  moorecay::SearchOptions options;
  std::string out_path;
  std::string format = "plain";
};

int cmd_search(const SearchArgs& args) {
  long long r = args.r, z = args.z;
  if (args.order > 0) {
    bool found = false;
    for (const auto& p : moorecay::enumerate_feasible(args.order))
      if (p.n == args.order) {
        r = p.r;
        z = p.z;
        found = true;
        break;
      }
    if (!found) {
      std::cerr << "order " << args.order << " is not Bosak-feasible\n";
      return kExitInfeasible;
    }
  } else {
    if (!moorecay::bosak_feasible(r, z)) {
      std::cerr << "parameters r=" << r << " z=" << z << " not Bosak-feasible\n";
      return kExitInfeasible;
    }
  }
  const long long n = moorecay::moore_bound_mixed(r, z);

  std::vector<std::string> warnings;
  std::vector<moorecay::Group> ingested;
  if (!args.group_dir.empty()) ingested = moorecay::scan_group_dir(args.group_dir, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';

  moorecay::Catalog catalog;
  if (args.ingested_only) {
    for (moorecay::Group& g : ingested)
      if (g.order() == n) catalog.groups.push_back(std::move(g));
    catalog.complete = false;
  } else {
    catalog = moorecay::catalog_for_order(static_cast<int>(n), ingested);
  }
  if (catalog.groups.empty()) {
    std::cerr << "no groups available at order " << n << '\n';
    return kExitNoGroups;
  }

  moorecay::FeasibleParams params;
  params.r = r;
  params.z = z;
  params.n = n;
  params.c = *moorecay::bosak_feasible(r, z);
  params.splits = moorecay::index_two_split(r, z);

  moorecay::SearchOptions options = args.options;
  options.catalog_complete = catalog.complete || args.assume_complete;
  if (!options.catalog_complete)
    std::cerr << "warning: group list at order " << n
              << " is possibly incomplete; results are a lower bound\n";

  moorecay::SearchRun run = moorecay::run_search(params, catalog.groups, options);
  std::string rendered =
      args.format == "records" ? moorecay::render_records(run) : moorecay::render_plain(run);
  if (args.out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(args.out_path);
    if (!out) {
      std::cerr << "cannot write " << args.out_path << '\n';
      return kExitUsage;
    }
    out << rendered;
    std::cout << moorecay::summary_line(run) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return kExitUsage;
  }
  moorecay::MixedGraph graph = moorecay::read_graph(in);
  moorecay::MooreReport rep = moorecay::verify_moore(graph);
  auto flag = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::cout << "order " << graph.n() << '\n';
  std::cout << "degrees " << flag(rep.degrees_ok) << " (r=" << rep.r << " z_out=" << rep.z_out
            << " z_in=" << rep.z_in << ")\n";
  std::cout << "moore-order " << flag(rep.order_ok) << '\n';
  std::cout << "unique-paths " << flag(rep.unique_path_ok) << '\n';
  std::cout << "undirected-girth " << flag(rep.girth_ok) << '\n';
  std::cout << "directed-triangles " << flag(rep.triangle_ok) << '\n';
  std::cout << "diameter ";
  if (rep.diameter == moorecay::kUnreachable)
    std::cout << "unreachable FAIL\n";
  else
    std::cout << rep.diameter << ' ' << flag(rep.diameter == 2) << '\n';
  std::cout << "verdict " << (rep.verdict ? "true" : "false") << '\n';
  return rep.verdict ? kExitOk : kExitVerdictFalse;
}

int cmd_kautz(int d, const std::string& out_path) {
  moorecay::MixedGraph graph = moorecay::kautz(d);
  if (out_path.empty()) {
    moorecay::write_graph(graph, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kExitUsage;
    }
    moorecay::write_graph(graph, out);
  }
  return kExitOk;
}

int cmd_catalog(long long order, const std::string& group_dir) {
  std::vector<std::string> warnings;
  std::vector<moorecay::Group> ingested;
  if (!group_dir.empty()) ingested = moorecay::scan_group_dir(group_dir, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';

  moorecay::Catalog catalog = moorecay::catalog_for_order(static_cast<int>(order), ingested);
  for (const moorecay::Group& g : catalog.groups) {
    std::cout << g.name() << " abelian=" << (g.abelian() ? "yes" : "no")
              << " index2=" << moorecay::index_two_subgroups(g).size();
    std::cout << " aut=";
    try {
      std::cout << moorecay::automorphism_group(g).size();
    } catch (const moorecay::CapExceededError&) {
      std::cout << '?';
    }
    std::cout << '\n';
  }
  std::cout << catalog.groups.size() << " group(s), "
            << (catalog.complete ? "complete" : "possibly incomplete") << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed Moore Cayley graph search tools"};
  app.require_subcommand(1);

  // feasible
  auto* feasible = app.add_subcommand("feasible", "list admissible (n, r, z, c, s) up to an order");
  long long max_order = 0;
  feasible->add_option("--max-order", max_order, "largest order to include")->required();

  // search
  SearchArgs sargs;
  auto* search = app.add_subcommand("search", "hunt generating sets at one feasible order");
  auto* order_opt = search->add_option("--order", sargs.order, "Moore order n");
  auto* r_opt = search->add_option("--r", sargs.r, "undirected degree");
  auto* z_opt = search->add_option("--z", sargs.z, "directed degree");
  r_opt->needs(z_opt);
  z_opt->needs(r_opt);
  order_opt->excludes(r_opt);
  search->add_option("--groups", sargs.group_dir, "directory of *.gtab / *.gperm files");
  search->add_flag("--ingested-only", sargs.ingested_only,
                   "search only groups from --groups, skipping built-ins");
  search->add_flag("--assume-complete", sargs.assume_complete,
                   "treat the supplied group list as the complete classification");
  search->add_option("--jobs", sargs.options.jobs, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--budget", sargs.options.budget_seconds,
                     "per-group time budget in seconds (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  search->add_flag("--dedup-stabilizer", sargs.options.dedup_stabilizer,
                   "also reduce directed parts by the stabilizer of S1");
  search->add_option("--out", sargs.out_path, "write results to a file");
  search->add_option("--format", sargs.format, "output format")
      ->check(CLI::IsMember({"plain", "records"}));

  // verify
  auto* verify = app.add_subcommand("verify", "check a graph file for the Moore properties");
  std::string verify_path;
  verify->add_option("file", verify_path, "graph file")->required();

  // kautz
  auto* kautz_cmd = app.add_subcommand("kautz", "emit a Kautz graph file");
  int kautz_d = 0;
  std::string kautz_out;
  kautz_cmd->add_option("--d", kautz_d, "degree parameter, at least 2")->required();
  kautz_cmd->add_option("--out", kautz_out, "output file (default stdout)");

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "list known groups of an order");
  long long catalog_order = 0;
  std::string catalog_dir;
  catalog_cmd->add_option("--order", catalog_order, "group order")->required();
  catalog_cmd->add_option("--groups", catalog_dir, "directory of *.gtab / *.gperm files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // environment defaults; explicit flags win
  if (auto dir = env_string("MOORECAY_GROUP_DIR")) {
    if (sargs.group_dir.empty()) sargs.group_dir = *dir;
    if (catalog_dir.empty()) catalog_dir = *dir;
  }
  if (auto jobs = env_string("MOORECAY_JOBS")) {
    if (search->count("--jobs") == 0) {
      try {
        sargs.options.jobs = std::max(1, std::stoi(*jobs));
      } catch (...) {
        std::cerr << "bad MOORECAY_JOBS value '" << *jobs << "'\n";
        return kExitUsage;
      }
    }
  }

  try {
    if (app.got_subcommand(feasible)) return cmd_feasible(max_order);
    if (app.got_subcommand(search)) {
      if (sargs.order <= 0 && (sargs.r < 0 || sargs.z < 0)) {
        std::cerr << "search needs --order or both --r and --z\n";
        return kExitUsage;
      }
      return cmd_search(sargs);
    }
    if (app.got_subcommand(verify)) return cmd_verify(verify_path);
    if (app.got_subcommand(kautz_cmd)) {
      if (kautz_d < 2) {
        std::cerr << "kautz needs --d at least 2\n";
        return kExitUsage;
      }
      return cmd_kautz(kautz_d, kautz_out);
    }
    if (app.got_subcommand(catalog_cmd)) return cmd_catalog(catalog_order, catalog_dir);
  } catch (const moorecay::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const moorecay::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
