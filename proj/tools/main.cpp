#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "cradle/errors.hpp"
#include "output.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kValidation = 2, kComputeCap = 3, kIo = 4 };

struct Invocation {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Invocation& inv) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--config", inv.config, "run configuration file")->required();
  sub->add_option("--out", inv.out, "output directory (default: output.dir)");
  sub->add_option("--override", inv.overrides, "section.key=value, repeatable");
  return sub;
}

int run(const std::string& command, const Invocation& inv) {
  using namespace cradle::cli;
  const auto rc = load_config(inv.config, inv.overrides);
  const std::string out = inv.out.empty() ? rc.output.dir : inv.out;
  if (out.empty()) throw ConfigError("output.dir", 0, "no output directory: pass --out or set output.dir");

  const auto caps = ComputeCaps::from_environment();
  Written files;
  if (command == "spectrum") files = cmd_spectrum(rc, out, caps);
  else if (command == "evolve") files = cmd_evolve(rc, out, caps);
  else if (command == "tune") files = cmd_tune(rc, out, caps);
  else files = cmd_oracle(rc, out, caps);
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-excitation transport on hopping chains"};
  app.require_subcommand(1);
  Invocation inv;
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "eigenvalues and mode overlaps"},
      {"evolve", "site-probability grid"},
      {"tune", "edge-coupling optimisation"},
      {"oracle", "Bose-Hubbard comparison"},
  };
  for (const auto& [name, help] : commands) add_command(app, name, help, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, inv);
  } catch (const cradle::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kValidation;
  } catch (const cradle::cli::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const cradle::TooLargeError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kComputeCap;
  } catch (const cradle::NotFreeFermionError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kValidation;
  } catch (const cradle::PreconditionError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}
