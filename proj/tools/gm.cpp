#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gm/driver.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitValue = 0;
constexpr int kExitBlame = 1;
constexpr int kExitTypeError = 2;
constexpr int kExitLimit = 3;
constexpr int kExitUsage = 4;

std::string span_str(gm::Span s) {
  return std::to_string(s.line) + ":" + std::to_string(s.col);
}

std::string status_name(gm::RunOutcome::Status s) {
  using S = gm::RunOutcome::Status;
  switch (s) {
    case S::Value: return "value";
    case S::Blame: return "blame";
    case S::TypeError: return "type_error";
    case S::Limit: return "step_limit";
    case S::ParseError: return "parse_error";
    case S::Stuck: return "stuck";
  }
  return "unknown";
}

int outcome_exit(const gm::RunOutcome& out) {
  using S = gm::RunOutcome::Status;
  switch (out.status) {
    case S::Value: return kExitValue;
    case S::Blame: return kExitBlame;
    case S::TypeError: return kExitTypeError;
    case S::Limit: return kExitLimit;
    case S::ParseError:
    case S::Stuck: return kExitUsage;
  }
  return kExitUsage;
}

json outcome_json(const gm::RunOutcome& out) {
  json j;
  j["status"] = status_name(out.status);
  using S = gm::RunOutcome::Status;
  switch (out.status) {
    case S::Value:
      if (!out.value.empty()) j["value"] = out.value;
      if (!out.type.empty()) j["type"] = out.type;
      break;
    case S::Blame:
      j["blame_label"] = out.blame_label;
      j["blame_span"] = span_str(out.blame_span);
      break;
    case S::TypeError:
    case S::ParseError:
      j["message"] = out.message;
      j["span"] = span_str(out.error_span);
      break;
    case S::Limit:
      break;
    case S::Stuck:
      j["message"] = out.message;
      break;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradual metaprogramming interpreter"};
  app.require_subcommand(1);

  std::string file;
  bool static_mode = false;
  std::string mode = "naive";
  bool trace = false;
  bool check_steps = false;
  bool emit_cc = false;
  long step_limit = -1;
  bool as_json = false;

  auto add_common = [&](CLI::App* sub, bool runnable) {
    sub->add_option("file", file, "program file")->required();
    sub->add_flag("--static", static_mode,
                  "use the static language (no ? types)");
    sub->add_flag("--json", as_json, "machine-readable output");
    if (runnable) {
      sub->add_option("--mode", mode, "evaluation mode")
          ->check(CLI::IsMember({"naive", "space-efficient"}));
      sub->add_flag("--trace", trace, "print each machine state to stderr");
      sub->add_flag("--check-steps", check_steps,
                    "re-typecheck the state after every step");
      sub->add_flag("--emit-cc", emit_cc,
                    "also print the elaborated cast-calculus term");
      sub->add_option("--step-limit", step_limit, "maximum number of steps");
    }
  };

  CLI::App* run = app.add_subcommand("run", "evaluate a program");
  CLI::App* check = app.add_subcommand("check", "typecheck a program");
  CLI::App* elab =
      app.add_subcommand("elab", "elaborate to the cast calculus");
  add_common(run, true);
  add_common(check, false);
  add_common(elab, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : kExitUsage;
  }

  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot open " << file << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::string src = ss.str();

  gm::RunOutcome out;
  if (check->parsed()) {
    out = gm::check_source(src, static_mode);
    if (as_json) {
      std::cout << outcome_json(out).dump() << "\n";
    } else if (out.status == gm::RunOutcome::Status::Value) {
      std::cout << out.type << "\n";
    } else {
      std::cerr << status_name(out.status) << " at " << span_str(out.error_span)
                << ": " << out.message << "\n";
    }
    return outcome_exit(out);
  }

  if (elab->parsed()) {
    if (static_mode) {
      std::cerr << "elab applies to the gradual pipeline only\n";
      return kExitUsage;
    }
    out = gm::elab_source(src);
    if (as_json) {
      json j = outcome_json(out);
      if (out.status == gm::RunOutcome::Status::Value)
        j["elaborated"] = out.elaborated;
      std::cout << j.dump() << "\n";
    } else if (out.status == gm::RunOutcome::Status::Value) {
      std::cout << out.elaborated << "\n";
    } else {
      std::cerr << status_name(out.status) << " at " << span_str(out.error_span)
                << ": " << out.message << "\n";
    }
    return outcome_exit(out);
  }

  gm::RunOpts opts;
  opts.static_mode = static_mode;
  opts.space_efficient = mode == "space-efficient";
  opts.trace = trace;
  opts.check_steps = check_steps;
  if (const char* env = std::getenv("GM_STEP_LIMIT"))
    opts.step_limit = std::atol(env);
  if (step_limit >= 0) opts.step_limit = step_limit;

  out = gm::run_source(src, opts);
  if (emit_cc && !out.elaborated.empty())
    std::cerr << out.elaborated << "\n";
  if (as_json) {
    json j = outcome_json(out);
    j["steps"] = out.steps;
    if (!opts.static_mode) {
      j["max_adjacent_casts"] = out.max_adjacent_casts;
      if (opts.space_efficient) j["max_hyper_height"] = out.max_hyper_height;
    }
    std::cout << j.dump() << "\n";
    return outcome_exit(out);
  }
  switch (out.status) {
    case gm::RunOutcome::Status::Value:
      std::cout << out.value << "\n";
      break;
    case gm::RunOutcome::Status::Blame:
      std::cout << "blame L" << out.blame_label << " at "
                << span_str(out.blame_span) << "\n";
      break;
    case gm::RunOutcome::Status::Limit:
      std::cerr << "step limit exceeded after " << out.steps << " steps\n";
      break;
    case gm::RunOutcome::Status::TypeError:
    case gm::RunOutcome::Status::ParseError:
      std::cerr << status_name(out.status) << " at " << span_str(out.error_span)
                << ": " << out.message << "\n";
      break;
    case gm::RunOutcome::Status::Stuck:
      std::cerr << "internal error: " << out.message << "\n";
      break;
  }
  return outcome_exit(out);
}
