#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cap/engine.hpp"
#include "cap/errors.hpp"
#include "cap/match.hpp"
#include "cap/parser.hpp"
#include "cap/typecheck.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitTypeError = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cap::validation_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cap::EngineKind engine_kind(const std::string& flag) {
  std::string choice = flag;
  if (choice.empty()) {
    if (const char* env = std::getenv("CAPC_ENGINE")) choice = env;
  }
  if (choice.empty() || choice == "automata") return cap::EngineKind::Automata;
  if (choice == "naive") return cap::EngineKind::Naive;
  throw cap::validation_error("unknown engine '" + choice + "' (naive|automata)");
}

json stats_json(const cap::GfpStats& s) {
  return json{{"universe", s.size_u},
              {"iterations", s.iterations},
              {"invalidations", s.invalidations}};
}

std::string stats_text(const cap::GfpStats& s) {
  return "universe=" + std::to_string(s.size_u) + " iterations=" + std::to_string(s.iterations) +
         " invalidations=" + std::to_string(s.invalidations);
}

std::string path_text(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

int emit_error(bool as_json, const std::string& kind, const std::vector<int>& path,
               const std::string& message, int code) {
  if (as_json) {
    json j{{"ok", false},
           {"error", json{{"kind", kind}, {"path", path}, {"message", message}}}};
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "error[" << kind << "] at " << path_text(path) << ": " << message << "\n";
  }
  return code;
}

struct Common {
  std::string engine_flag;
  bool with_json = false;
  bool with_stats = false;
};

int run_check(const std::string& file, const std::string& ctx_file, const Common& c) {
  cap::Engine engine{engine_kind(c.engine_flag)};
  cap::TermRef term = cap::parse_term(read_file(file));
  cap::TypingContext gamma;
  if (!ctx_file.empty()) {
    gamma = cap::parse_context(read_file(ctx_file));
    for (const auto& [name, ty] : gamma)
      if (auto e = cap::check_sort(ty))
        throw cap::validation_error("context entry '" + name + "': " + e->message);
  }
  cap::TcResult r = cap::tc(gamma, term, engine);
  if (!r.ok())
    return emit_error(c.with_json, cap::to_string(r.error->kind), r.error->path,
                      r.error->message, kExitTypeError);
  if (c.with_json) {
    json j{{"ok", true}, {"type", cap::render_type(r.type)}};
    if (c.with_stats) j["stats"] = stats_json(engine.total);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << cap::render_type(r.type) << "\n";
    if (c.with_stats) std::cout << stats_text(engine.total) << "\n";
  }
  return kExitOk;
}

int run_eval(const std::string& file, int max_steps) {
  cap::TermRef term = cap::parse_term(read_file(file));
  cap::EvalResult r = cap::eval(term, max_steps);
  if (r.fuel_exhausted) {
    std::cout << "FuelExhausted\n";
    return kExitInternal;
  }
  std::cout << cap::render_term(r.term) << "\n";
  return kExitOk;
}

int run_relation(const std::string& ta, const std::string& tb, bool subtyping, const Common& c) {
  cap::Engine engine{engine_kind(c.engine_flag)};
  cap::TypeRef a = cap::parse_type(ta);
  cap::TypeRef b = cap::parse_type(tb);
  for (cap::TypeRef t : {a, b})
    if (auto e = cap::check_sort(t)) throw cap::validation_error(e->message);
  bool holds = subtyping ? engine.subtype(a, b) : engine.eqtype(a, b);
  if (c.with_json) {
    json j{{"ok", holds}};
    if (c.with_stats) j["stats"] = stats_json(engine.total);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (holds ? "true" : "false") << "\n";
    if (c.with_stats) std::cout << stats_text(engine.total) << "\n";
  }
  return holds ? kExitOk : kExitTypeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capc: type checker and evaluator for the calculus of applicative patterns"};
  app.require_subcommand(1);

  Common common;
  std::string file, ctx_file, type_a, type_b;
  int max_steps = 10000;

  auto add_common = [&](CLI::App* cmd, bool engine_flags) {
    if (engine_flags) {
      cmd->add_option("--engine", common.engine_flag, "relation engine (naive|automata)")
          ->check(CLI::IsMember({"naive", "automata"}));
      cmd->add_flag("--stats", common.with_stats, "print engine statistics");
    }
    cmd->add_flag("--json", common.with_json, "machine-readable output");
  };

  CLI::App* check = app.add_subcommand("check", "type-check a term file");
  check->add_option("file", file, "term file")->required();
  check->add_option("--ctx", ctx_file, "context file (name : Type per line)");
  add_common(check, true);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a term file to normal form");
  eval_cmd->add_option("file", file, "term file")->required();
  eval_cmd->add_option("--max-steps", max_steps, "reduction fuel (default 10000)");

  CLI::App* sub = app.add_subcommand("sub", "check subtyping between two types");
  sub->add_option("typeA", type_a, "left type")->required();
  sub->add_option("typeB", type_b, "right type")->required();
  add_common(sub, true);

  CLI::App* eq = app.add_subcommand("eq", "check equivalence between two types");
  eq->add_option("typeA", type_a, "left type")->required();
  eq->add_option("typeB", type_b, "right type")->required();
  add_common(eq, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(file, ctx_file, common);
    if (eval_cmd->parsed()) return run_eval(file, max_steps);
    if (sub->parsed()) return run_relation(type_a, type_b, true, common);
    if (eq->parsed()) return run_relation(type_a, type_b, false, common);
  } catch (const cap::parse_error& e) {
    return emit_error(common.with_json, "ParseError", {}, e.what(), kExitParseError);
  } catch (const cap::validation_error& e) {
    return emit_error(common.with_json, "ValidationError", {}, e.what(), kExitParseError);
  } catch (const cap::internal_error& e) {
    return emit_error(common.with_json, "InternalError", {}, e.what(), kExitInternal);
  } catch (const std::exception& e) {
    return emit_error(common.with_json, "InternalError", {}, e.what(), kExitInternal);
  }
  return kExitParseError;
}
