// finsm: command-line front end for validating, running, determinizing,
// comparing and exporting finite automata stored as machine documents.
//
// Exit codes: 0 ok / accepted / equivalent, 1 rejected, 2 invalid as DFA,
// 3 not equivalent, 64 usage error, 65 bad input document, 74 output error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finsm/algorithms.hpp"
#include "finsm/persistence.hpp"
#include "finsm/service.hpp"
#include "finsm/simulation.hpp"
#include "finsm/tikz.hpp"

namespace {

using namespace finsm;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInvalidDfa = 2;
constexpr int kExitNotEquivalent = 3;
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;
constexpr int kExitIoErr = 74;

struct ExitWith {
  int code;
};

Machine load_machine(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "finsm: cannot read " << path << "\n";
    throw ExitWith{kExitDataErr};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize(buf.str());
  } catch (const Error& e) {
    std::cerr << "finsm: " << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    throw ExitWith{kExitDataErr};
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "finsm: cannot write " << path << "\n";
    throw ExitWith{kExitIoErr};
  }
}

MachineKind parse_kind(const std::string& kind) { return kind == "dfa" ? MachineKind::DFA : MachineKind::NFA; }

std::string state_set_text(const Machine& m, const StateSet& set) {
  std::string out = "{";
  for (StateId q : set) out += (out.size() > 1 ? ", " : "") + m.state_name(q);
  return out + "}";
}

std::string word_text(const Word& w) {
  bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
  std::string out;
  for (const auto& s : w) out += (out.empty() || single ? "" : " ") + s;
  return "\"" + out + "\"";
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

// Line-oriented simulate-mode session on stdin/stdout.
int run_repl(const Machine& m, MachineKind kind) {
  auto started = SimulationSession::start(m, kind);
  if (auto* err = std::get_if<ValidationError>(&started)) {
    std::cout << err->message << "\n";
    return kExitInvalidDfa;
  }
  auto session = std::get<SimulationSession>(std::move(started));

  auto show = [&](TapeId id) {
    const Tape& t = session.tape(id);
    std::cout << "tape " << id << " [";
    for (std::size_t i = 0; i <= t.symbols.size(); ++i) {
      if (i == t.ticker) std::cout << "|";
      if (i < t.symbols.size()) std::cout << t.symbols[i];
    }
    std::cout << "] active " << state_set_text(session.machine(), session.active_states(id)) << " "
              << (session.tape_status(id) == TapeStatus::Accepted ? "ACCEPT" : "REJECT") << "\n";
  };

  std::cout << "keys:";
  for (const auto& [key, sym] : session.keys()) std::cout << " " << key << "=" << sym;
  std::cout << "\n";

  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream in(line);
    std::string cmd;
    in >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "q") break;
    try {
      auto current = [&]() -> TapeId {
        if (!session.active_tape()) throw Error(ErrorCode::UnknownTape, "no tape selected");
        return *session.active_tape();
      };
      if (cmd == "add") {
        std::string text;
        in >> text;
        TapeId id = session.add_tape(split_chars(text));
        session.select_tape(id);
        show(id);
      } else if (cmd == "select") {
        TapeId id = 0;
        in >> id;
        session.select_tape(id);
        show(id);
      } else if (cmd == "delete") {
        TapeId id = 0;
        in >> id;
        session.delete_tape(id);
      } else if (cmd == "next") {
        session.advance_ticker(current());
        show(current());
      } else if (cmd == "prev") {
        session.rewind_ticker(current());
        show(current());
      } else if (cmd == "type") {
        std::string keys;
        in >> keys;
        for (char k : keys)
          if (!session.type_key(current(), k)) std::cout << "unmapped key '" << k << "'\n";
        show(current());
      } else if (cmd == "del") {
        session.delete_last_symbol(current());
        show(current());
      } else if (cmd == "list") {
        for (const auto& [id, t] : session.tapes()) show(id);
      } else if (cmd == "definition") {
        std::cout << format_definition(session.machine());
      } else {
        std::cout << "commands: add <symbols>, select <id>, delete <id>, next, prev, type <keys>, del, list, "
                     "definition, quit\n";
      }
    } catch (const Error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, simulate and export finite automata"};
  app.require_subcommand(1);

  std::string kind = "dfa";
  std::string file, file_b, out_path;

  auto* validate = app.add_subcommand("validate", "Check a machine against the DFA (or NFA) rules");
  validate->add_option("file", file, "Machine document")->required();
  validate->add_option("--kind", kind, "dfa or nfa")->check(CLI::IsMember({"dfa", "nfa"}));

  std::optional<std::string> tape_text;
  std::vector<std::string> tape_symbols;
  std::string run_kind = "nfa";
  bool show_trace = false;
  auto* run = app.add_subcommand("run", "Run a tape; prints ACCEPT or REJECT");
  run->add_option("file", file, "Machine document")->required();
  auto* tape_opt = run->add_option("--tape", tape_text, "Tape, one symbol per character (may be empty)");
  auto* symbol_opt = run->add_option("--symbol", tape_symbols, "Tape symbol (repeatable, for multi-character symbols)")
                         ->allow_extra_args(false);
  tape_opt->excludes(symbol_opt);
  run->add_option("--kind", run_kind, "dfa or nfa")->check(CLI::IsMember({"dfa", "nfa"}));
  run->add_flag("--trace", show_trace, "Print the active state set after each symbol");

  auto* determinize = app.add_subcommand("determinize", "Subset construction");
  determinize->add_option("file", file, "Machine document")->required();
  determinize->add_option("-o,--output", out_path, "Output document (default stdout)");

  std::size_t max_len = 10;
  auto* equiv = app.add_subcommand("equiv", "Compare two machines on all words up to a length");
  equiv->add_option("file_a", file, "First machine")->required();
  equiv->add_option("file_b", file_b, "Second machine")->required();
  equiv->add_option("--max-len", max_len, "Longest word compared")->check(CLI::Range(0, 64));

  std::optional<std::string> nonce;
  double grid = 0.0, scale = 1.0;
  auto* exp = app.add_subcommand("export", "Generate TikZ source");
  exp->add_option("file", file, "Machine document")->required();
  exp->add_option("--nonce", nonce, "Seed for node identifiers (default: random)");
  exp->add_option("--grid", grid, "Snap positions to this grid (0 = off)")->check(CLI::NonNegativeNumber);
  exp->add_option("--scale", scale, "Centimetres per canvas unit")->check(CLI::PositiveNumber);
  exp->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* definition = app.add_subcommand("definition", "Print the formal 5-tuple");
  definition->add_option("file", file, "Machine document")->required();

  std::string sim_kind = "nfa";
  auto* simulate = app.add_subcommand("simulate", "Interactive tape session on stdin");
  simulate->add_option("file", file, "Machine document")->required();
  simulate->add_option("--kind", sim_kind, "dfa or nfa")->check(CLI::IsMember({"dfa", "nfa"}));

  int port = 8040;
  std::string data_dir = "finsm-data";
  std::string cors = "*";
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", port, "Listening port")->envname("FINSM_PORT")->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", data_dir, "Machine store directory")->envname("FINSM_DATA_DIR");
  serve->add_option("--cors-origin", cors, "Allowed CORS origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) {
      Machine m = load_machine(file);
      if (parse_kind(kind) == MachineKind::NFA) {
        std::cout << "OK\n";
        return kExitOk;
      }
      auto v = validate_as_dfa(m);
      if (v.ok()) {
        std::cout << "OK\n";
        return kExitOk;
      }
      std::cout << v.error->message << "\n";
      return kExitInvalidDfa;
    }

    if (*run) {
      if (!tape_text && symbol_opt->count() == 0) {
        std::cerr << "finsm run: one of --tape or --symbol is required\n";
        return kExitUsage;
      }
      Word tape = tape_text ? split_chars(*tape_text) : Word(tape_symbols.begin(), tape_symbols.end());
      Machine m = load_machine(file);
      if (parse_kind(run_kind) == MachineKind::DFA) {
        auto v = validate_as_dfa(m);
        if (!v.ok()) {
          std::cout << v.error->message << "\n";
          return kExitInvalidDfa;
        }
      }
      AcceptanceResult result;
      try {
        result = run_tape(m, tape);
      } catch (const Error& e) {
        std::cerr << "finsm run: " << e.what() << "\n";
        return kExitUsage;
      }
      if (show_trace)
        for (const auto& set : result.trace) std::cout << state_set_text(m, set) << "\n";
      std::cout << (result.accepted ? "ACCEPT" : "REJECT") << "\n";
      return result.accepted ? kExitOk : kExitRejected;
    }

    if (*determinize) {
      write_output(out_path, serialize(subset_construction(load_machine(file))));
      return kExitOk;
    }

    if (*equiv) {
      Machine a = load_machine(file);
      Machine b = load_machine(file_b);
      auto r = equivalent_up_to(a, b, max_len);
      if (r.equivalent) {
        std::cout << "EQUIVALENT\n";
        return kExitOk;
      }
      std::cout << "COUNTEREXAMPLE " << word_text(*r.counterexample) << "\n";
      return kExitNotEquivalent;
    }

    if (*exp) {
      ExportOptions opts;
      opts.nonce = nonce;
      opts.grid_snap = grid;
      opts.scale = scale;
      write_output(out_path, export_tikz(load_machine(file), opts).source);
      return kExitOk;
    }

    if (*definition) {
      std::cout << format_definition(load_machine(file));
      return kExitOk;
    }

    if (*simulate) return run_repl(load_machine(file), parse_kind(sim_kind));

    if (*serve) {
      ServerOptions opts;
      opts.port = port;
      opts.cors_origin = cors;
      Service service(std::make_shared<FileStore>(data_dir));
      HttpServer server(service, opts);
      if (!server.bind()) {
        std::cerr << "finsm serve: cannot bind port " << port << "\n";
        return kExitIoErr;
      }
      std::cerr << "finsm: serving on port " << server.port() << ", data in " << data_dir << "\n";
      server.run();
      return kExitOk;
    }
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const Error& e) {
    std::cerr << "finsm: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? kExitIoErr : kExitUsage;
  }
  return kExitUsage;
}
