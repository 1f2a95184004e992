#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grl/cli/cli.hpp"
#include "grl/error.hpp"
#include "grl/parallel.hpp"
#include "report.hpp"

namespace grl::cli {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int max_threads() {
#ifdef _OPENMP
  return thread_limit() > 0 ? thread_limit() : omp_get_max_threads();
#else
  return 1;
#endif
}

ordered_json envelope(const Report& rep, const Common& common) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = rep.command;
  if (!common.no_meta) j["meta"] = {{"version", kVersion}, {"timestamp", utc_now()}, {"threads", max_threads()}};
  j["params"] = rep.params;
  j["result"] = rep.result;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["value"] = c.value;
    if (!c.threshold.is_null()) e["threshold"] = c.threshold;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["pass"] = rep.pass();
  return j;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("GRL_THREADS")) set_thread_limit(std::atoi(env));

  CLI::App app{"Green-function rigidity verification toolkit", "grl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;
  app.add_option("--out", common.out, "write the JSON report here (default stdout)");
  app.add_option("--csv", common.csv, "write per-sample CSV data here");
  app.add_flag("--no-meta", common.no_meta, "omit version, timestamp and thread count");
  app.add_option("--seed", common.seed, "seed for every randomized sweep");
  // Allow the global options after the subcommand too.
  app.fallthrough();

  Runner runner;
  add_mesh(app, common, runner);
  add_green(app, common, runner);
  add_rigidity(app, common, runner);
  add_ode(app, common, runner);
  add_pde(app, common, runner);
  add_moving_plane(app, common, runner);
  add_kelvin(app, common, runner);
  add_suite(app, common, runner);

  std::vector<std::string> argv_store = args;
  argv_store.insert(argv_store.begin(), "grl");
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (!runner) {
    err << app.help();
    return 2;
  }

  Report rep;
  try {
    runner(rep);
    emit(envelope(rep, common).dump(2) + "\n", common.out, out);
    if (!common.csv.empty()) emit(rep.csv, common.csv, out);
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (residual " << e.residual() << ")\n";
    return 1;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return rep.pass() ? 0 : 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace grl::cli
