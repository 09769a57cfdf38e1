#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "grl/error.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kSpecError = 2, kNotFound = 3, kSizeLimit = 4 };

int fail(int code, const std::string& what) {
  std::cerr << "grl: error: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace grl::cli;

  CLI::App app{"Counting, blow-up and removal experiments for equations over finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for generated sets (overrides the input file)");
  app.add_option("--jobs", opts.jobs, "Parallel sweep trials")->check(CLI::PositiveNumber);
  std::string format = "json";
  app.add_option("--format", format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-arcs", opts.max_arcs, "Cap on blow-up arcs");
  app.add_option("--max-copies", opts.max_copies, "Cap on copies enumerated for hitting sets");

  std::string path;
  std::function<Result()> run;
  std::string name;

  auto* count = app.add_subcommand("count", "Count solutions of an instance");
  count->add_option("spec", path, "Instance file")->required();
  count->callback([&] { run = [&] { return cmd_count(path, opts); }; });

  auto* represent = app.add_subcommand("represent", "Find or check a graph representation");
  represent->add_option("spec", path, "System file, optionally with a graph and tree")->required();
  represent->callback([&] { run = [&] { return cmd_represent(path, opts); }; });

  auto* verify = app.add_subcommand("verify", "Compare blow-up copies against N x solutions");
  verify->add_option("spec", path, "Instance file")->required();
  verify->callback([&] { run = [&] { return cmd_verify(path, opts); }; });

  auto* removal = app.add_subcommand("removal", "Remove elements until no solution is left");
  bool exact = false, pipeline = false;
  std::string sweep;
  removal->add_option("spec", path, "Instance file");
  auto* exact_flag = removal->add_flag("--exact", exact, "Minimum removal by branch and bound");
  auto* pipeline_flag =
      removal->add_flag("--pipeline", pipeline, "Hitting set plus pigeonhole reduction (default)");
  auto* sweep_opt = removal->add_option("--sweep", sweep, "Run the sweep described in a config");
  exact_flag->excludes(pipeline_flag)->excludes(sweep_opt);
  pipeline_flag->excludes(sweep_opt);
  removal->callback([&] {
    if (!sweep.empty()) {
      run = [&] { return cmd_removal(sweep, RemovalMode::kSweep, opts); };
      return;
    }
    if (path.empty()) throw CLI::RequiredError("spec");
    const auto mode = exact ? RemovalMode::kExact : RemovalMode::kPipeline;
    run = [&, mode] { return cmd_removal(path, mode, opts); };
  });

  auto* apps = app.add_subcommand("app", "Product-free, small-doubling and commuting-pair removal");
  apps->require_subcommand(1);
  for (const char* which : {"product-free", "doubling", "commuting"}) {
    auto* sub = apps->add_subcommand(which, std::string("The ") + which + " application");
    sub->add_option("spec", path, "Application file: group and sets")->required();
    sub->callback([&, which] {
      run = [&, which] { return cmd_app(which, path, opts); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSpecError;
  }
  if (*seed_opt) opts.seed = seed;
  opts.format = format == "csv" ? Format::kCsv : Format::kJson;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto result = run();
    emit(std::cout, result, opts.format);
  } catch (const grl::SizeLimit& e) {
    return fail(kSizeLimit, e.what());
  } catch (const grl::NotFound& e) {
    return fail(kNotFound, e.what());
  } catch (const grl::Error& e) {
    return fail(kSpecError, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kSpecError, e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, e.what());
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "grl: done in " << ms << " ms\n";
  return kOk;
}
