// Command-line front end:
//   pkepler <mode> --config <path> [--out <path>]
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O failure.

#include <cstdio>
#include <string>

#include "pkepler/config.hpp"
#include "pkepler/csv.hpp"
#include "pkepler/errors.hpp"
#include "pkepler/run.hpp"

namespace {

int usage() {
  std::fprintf(stderr,
               "usage: pkepler <simulate|closed-form|compare|conserve-report> "
               "--config <path> [--out <path>]\n");
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  const std::string mode = argv[1];
  std::string config_path, out_path;
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_path = argv[++i];
    } else if (arg == "--out" && i + 1 < argc) {
      out_path = argv[++i];
    } else {
      std::fprintf(stderr, "error: unknown argument '%s'\n", arg.c_str());
      return 2;
    }
  }
  if (config_path.empty()) return usage();

  try {
    pkepler::RunConfig cfg = pkepler::load_config_file(config_path);
    {
      // The subcommand must agree with the config's mode key.
      using pkepler::RunMode;
      const RunMode want = mode == "simulate"          ? RunMode::simulate
                           : mode == "closed-form"     ? RunMode::closed_form
                           : mode == "compare"         ? RunMode::compare
                           : mode == "conserve-report" ? RunMode::conserve_report
                                                       : static_cast<RunMode>(-1);
      if (want == static_cast<RunMode>(-1)) {
        std::fprintf(stderr, "error: unknown mode '%s'\n", mode.c_str());
        return 2;
      }
      if (want != cfg.mode) {
        std::fprintf(stderr,
                     "error: config mode does not match the '%s' subcommand\n",
                     mode.c_str());
        return 2;
      }
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    const pkepler::RunResult res = pkepler::run(cfg);
    if (res.max_deviation)
      std::printf("max_deviation=%s\n",
                  pkepler::format_g17(*res.max_deviation).c_str());
    if (res.max_drift)
      std::printf("max_drift=%s\n",
                  pkepler::format_g17(*res.max_drift).c_str());
    return 0;
  } catch (const pkepler::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pkepler::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const pkepler::numerical_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
