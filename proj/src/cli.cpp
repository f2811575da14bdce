#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "pgatt/cli.hpp"
#include "pgatt/extraction.hpp"
#include "pgatt/interaction.hpp"
#include "pgatt/machine.hpp"

namespace pgatt::cli {

namespace {

// Bad input the user can fix: unreadable files, malformed arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kBuiltinPrefix = "builtin:";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Term load_term(const std::string& path) {
  if (path.rfind(kBuiltinPrefix, 0) == 0) return builtin(path.substr(kBuiltinPrefix.size()));
  const std::string text = read_file(path);
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

std::uint64_t default_fuel() {
  const char* env = std::getenv("PGATT_FUEL");
  if (env == nullptr || *env == '\0') return kDefaultFuel;
  std::uint64_t v = 0;
  for (const char* p = env; *p != '\0'; ++p) {
    if (*p < '0' || *p > '9' || v > 1'000'000'000'000ull) {
      throw UsageError(std::string("PGATT_FUEL must be a natural number, got '") + env + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(*p - '0');
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t at = csv.find(',', begin);
    out.push_back(csv.substr(begin, at == std::string::npos ? std::string::npos : at - begin));
    if (at == std::string::npos) return out;
    begin = at + 1;
  }
}

void print_family(std::ostream& out, const Family& u) {
  if (u.is_empty()) {
    out << "final: {}\n";
    return;
  }
  out << "final:\n";
  std::istringstream lines(to_string(u));
  for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
}

int exit_for(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated:
      return kExitOk;
    case RunStatus::OutOfFuel:
      return kExitInconclusive;
    default:
      return kExitNegative;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instruction sequences over Turing tapes", "pgatt"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::function<int()> action;
  std::string file;
  std::string file2;
  std::uint64_t fuel = 0;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and print it back");
  parse_cmd->add_option("FILE", file, "Program file")->required();
  parse_cmd->callback([&] {
    action = [&] {
      out << print_term(load_term(file)) << "\n";
      return kExitOk;
    };
  });

  bool full = false;
  auto* norm_cmd = app.add_subcommand("normalize", "Print the canonical form of a program");
  norm_cmd->add_flag("--full", full, "Also resolve jump chains");
  norm_cmd->add_option("FILE", file, "Program file")->required();
  norm_cmd->callback([&] {
    action = [&] {
      const CanonicalSeq s = to_canonical(load_term(file));
      out << print_canonical(full ? resolve_jumps(s) : s) << "\n";
      return kExitOk;
    };
  });

  std::string mode;
  auto* eq_cmd = app.add_subcommand("eq", "Compare two programs");
  eq_cmd->add_option("--mode", mode, "structural, pga, behavioral or congruent")
      ->required()
      ->check(CLI::IsMember({"structural", "pga", "behavioral", "congruent"}));
  eq_cmd->add_option("FILE1", file, "First program")->required();
  eq_cmd->add_option("FILE2", file2, "Second program")->required();
  CongruenceWindow window;
  eq_cmd->add_option("--max-entry", window.max_entry, "Congruent mode: largest entry offset tried");
  eq_cmd->add_option("--max-halts", window.max_halts, "Congruent mode: most appended halts tried");
  eq_cmd->callback([&] {
    action = [&] {
      const Term a = load_term(file);
      const Term b = load_term(file2);
      bool same = false;
      std::optional<std::pair<std::uint64_t, std::size_t>> witness;
      if (mode == "structural") {
        same = structural_eq(a, b);
      } else if (mode == "pga") {
        same = pga_eq(a, b);
      } else if (mode == "behavioral") {
        same = behavioral_eq(a, b);
      } else {
        const CongruenceResult r = behavioral_congruent(a, b, window);
        same = r.congruent;
        witness = r.witness;
      }
      out << (same ? "true" : "false") << "\n";
      if (witness) out << "witness: l=" << witness->first << " n=" << witness->second << "\n";
      return same ? kExitOk : kExitNegative;
    };
  });

  auto* extract_cmd = app.add_subcommand("extract", "Print the thread a program produces");
  extract_cmd->add_option("FILE", file, "Program file")->required();
  extract_cmd->callback([&] {
    action = [&] {
      out << print_recursion_system(extract(load_term(file)));
      return kExitOk;
    };
  });

  std::string tapes;
  bool trace = false;
  auto* run_cmd = app.add_subcommand("run", "Run a program against a tape family");
  run_cmd->add_option("FILE", file, "Program file")->required();
  run_cmd->add_option("--tapes", tapes, "Tape family file")->required();
  auto* run_fuel = run_cmd->add_option("--fuel", fuel, "Step budget");
  run_cmd->add_flag("--trace", trace, "Print every step");
  run_cmd->callback([&] {
    action = [&] {
      const Term t = load_term(file);
      Family u;
      try {
        u = parse_family(read_file(tapes));
      } catch (const FamilyParseError& e) {
        throw UsageError(tapes + ": " + e.what());
      }
      const std::uint64_t budget = run_fuel->count() > 0 ? fuel : default_fuel();
      TraceSink sink;
      if (trace) sink = [&](const TraceEvent& e) { out << format_trace(e) << "\n"; };
      const RunOutcome o = run(extract(t), u, budget, sink);
      out << "status: " << to_string(o.status) << "\n";
      out << "steps: " << o.steps << "\n";
      if (o.stuck_on) out << "stuck on: " << to_string(*o.stuck_on) << "\n";
      print_family(out, o.final);
      return exit_for(o.status);
    };
  });

  auto* validate_cmd =
      app.add_subcommand("validate-tmp", "Check the single-tape Turing-machine program shape");
  validate_cmd->add_option("FILE", file, "Program file")->required();
  validate_cmd->callback([&] {
    action = [&] {
      const TmpReport r = validate_tmp(load_term(file));
      if (r.valid) {
        out << "valid\nblocks: " << r.blocks << "\n";
        return kExitOk;
      }
      out << "invalid\n";
      for (const auto& d : r.diagnostics) out << "  " << d << "\n";
      return kExitNegative;
    };
  });

  auto* compile_cmd = app.add_subcommand("compile-tm", "Compile a Turing machine to a program");
  compile_cmd->add_option("TMFILE", file, "Turing machine file")->required();
  compile_cmd->callback([&] {
    action = [&] {
      TmSpec m;
      try {
        m = parse_tm(read_file(file));
      } catch (const TmParseError& e) {
        throw UsageError(file + ": " + e.what());
      }
      out << print_term(compile_tm(m)) << "\n";
      return kExitOk;
    };
  });

  std::size_t k = 1;
  std::string csv;
  std::string expect;
  auto* compute_cmd = app.add_subcommand("compute", "Run a program as a k-tape computation");
  compute_cmd->add_option("FILE", file, "Program file")->required();
  compute_cmd->add_option("--k", k, "Number of tapes")->check(CLI::PositiveNumber);
  auto* args_opt = compute_cmd->add_option("--args", csv, "Comma-separated argument words");
  auto* compute_fuel = compute_cmd->add_option("--fuel", fuel, "Step budget");
  auto* expect_opt =
      compute_cmd->add_option("--expect", expect, "Expected output word, or 'undefined'");
  compute_cmd->callback([&] {
    action = [&] {
      const Term t = load_term(file);
      std::vector<std::string> words;
      if (args_opt->count() > 0) words = split_csv(csv);
      for (const auto& w : words) {
        if (w.find_first_not_of("01") != std::string::npos) {
          throw UsageError("argument words are over {0,1}: '" + w + "'");
        }
      }
      if (args_collide(words)) {
        err << "warning: a trailing empty argument yields the same tape as omitting it\n";
      }
      const std::uint64_t budget = compute_fuel->count() > 0 ? fuel : default_fuel();

      if (expect_opt->count() == 0) {
        const RunOutcome o = run(extract(t), initial_family(k, words), budget);
        out << "status: " << to_string(o.status) << "\n";
        out << "steps: " << o.steps << "\n";
        const TapeSlot* slot = o.final.find(Focus{static_cast<std::uint32_t>(k)});
        if (o.status == RunStatus::Terminated && slot != nullptr && slot->is_operative()) {
          out << "output: " << ctt(slot->state()) << "\n";
          out << "head: " << slot->state().head() << "\n";
        }
        print_family(out, o.final);
        return exit_for(o.status);
      }

      if (expect != "undefined" && expect.find_first_not_of("01") != std::string::npos) {
        throw UsageError("--expect takes a word over {0,1} or 'undefined'");
      }
      std::optional<std::string> expected;
      if (expect != "undefined") expected = expect;
      const ComputesVerdict v = computes_check(
          t, [&](const std::vector<std::string>&) { return expected; }, k, {words},
          std::nullopt, budget);
      const ComputesRecord& rec = v.records.front();
      out << "status: " << to_string(rec.run_status) << "\n";
      out << "steps: " << rec.steps << "\n";
      if (rec.output) out << "output: " << *rec.output << "\n";
      out << "expected: " << (rec.expected ? *rec.expected : std::string("undefined")) << "\n";
      out << "verdict: " << to_string(rec.status) << "\n";
      if (!rec.reason.empty()) out << "reason: " << rec.reason << "\n";
      switch (rec.status) {
        case ComputesRecord::Status::Pass:
          return kExitOk;
        case ComputesRecord::Status::Fail:
          return kExitNegative;
        case ComputesRecord::Status::Inconclusive:
          return kExitInconclusive;
      }
      return kExitNegative;
    };
  });

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
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ThreadParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace pgatt::cli
