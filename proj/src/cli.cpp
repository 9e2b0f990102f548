#include "linvol/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "linvol/classes.hpp"
#include "linvol/induct.hpp"
#include "linvol/rauzy.hpp"
#include "linvol/reduce.hpp"
#include "linvol/strata.hpp"
#include "linvol/suspend.hpp"

namespace linvol {

namespace {

constexpr const char* kVersion = "linvol 1.0.0 (schemas v1)";

int default_threads() {
  if (const char* env = std::getenv("LINVOL_THREADS")) {
    int v = std::atoi(env);
    if (v >= 0) return v;
  }
  return 0;
}

nlohmann::json witness_json(const GenPerm& gp, const DecompositionWitness& w) {
  nlohmann::json j;
  j["case"] = w.case_name();
  j["i1"] = w.i1;
  j["i2"] = w.i2;
  j["i3"] = w.i3;
  j["i4"] = w.i4;
  auto names = [&](const std::vector<LetterId>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (LetterId id : v) arr.push_back(gp.letter_name(id));
    return arr;
  };
  j["A"] = names(w.A);
  j["B"] = names(w.B);
  j["C"] = names(w.C);
  j["D"] = names(w.D);
  if (w.alpha0) j["alpha0"] = gp.letter_name(*w.alpha0);
  if (w.switched) j["switched"] = true;
  return j;
}

GenPerm load_word(const std::string& arg, const std::string& file) {
  if (arg.empty() && file.empty()) throw ParseError("no word given (argument or --file)");
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in.good()) throw ParseError("cannot read '" + file + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return GenPerm::parse(text);
  }
  return GenPerm::parse(arg);
}

std::vector<Rat> lambda_from_flag(const GenPerm& gp, const std::string& text) {
  std::vector<Rat> lambda;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string tok = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!tok.empty()) lambda.push_back(rat_parse(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(lambda.size()) != gp.d())
    throw ParseError("expected " + std::to_string(gp.d()) + " lengths, got " +
                     std::to_string(lambda.size()));
  return lambda;
}

std::vector<Rat> admissible_lambda_from_seed(const GenPerm& gp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() { return rng(); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto lambda = random_lambda(gp, draw);
    if (is_admissible(gp, lambda).admissible) return lambda;
  }
  auto dyn = is_dynamically_irreducible(gp);
  if (dyn.dynamically_irreducible && dyn.witness_lambda) return *dyn.witness_lambda;
  throw ParseError("no admissible lengths exist for this word");
}

int run_class(std::ostream& out, const GenPerm& gp, bool extended, const std::string& variant,
              std::size_t max_nodes, const std::string& format, bool count_only, int threads) {
  EnumOptions opts;
  opts.max_nodes = max_nodes;
  opts.threads = threads;
  opts.with_edges = !count_only && format == "dot";
  ClassGraph g = extended ? extended_class(gp, variant != "full", opts) : rauzy_class(gp, opts);
  if (count_only) {
    out << export_json(g, false) << "\n";
  } else if (format == "dot") {
    out << export_dot(g);
  } else {
    out << export_json(g, true) << "\n";
  }
  return g.closed ? 0 : 3;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"generalized permutations, linear involutions and their induction"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print version and schema revision");

  std::string perm, file, lambda_flag, format = "json", variant = "weak";
  std::size_t max_nodes = 2'000'000;
  int steps = 10'000;
  bool count_only = false, forward = false, want_polygon = false;
  int threads = default_threads();
  std::uint64_t seed = 0;
  bool has_seed = false;

  auto* check = app.add_subcommand("check", "validate a word and report its kind");
  check->add_option("perm", perm);
  check->add_option("-f,--file", file, "read the word from a file");

  auto* reduce = app.add_subcommand("reduce", "decomposition witness or null");
  reduce->add_option("perm", perm);
  reduce->add_option("-f,--file", file);

  auto* stratum = app.add_subcommand("stratum", "zero and pole orders of the suspension");
  stratum->add_option("perm", perm);
  stratum->add_option("-f,--file", file);

  auto* cls = app.add_subcommand("class", "forward closure under the induction moves");
  auto* xcls = app.add_subcommand("xclass", "closure under induction moves and the mirror");
  for (CLI::App* c : {cls, xcls}) {
    c->add_option("perm", perm);
    c->add_option("-f,--file", file);
    c->add_option("--max-nodes", max_nodes, "node budget");
    c->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
    c->add_flag("--count-only", count_only, "summary only");
    c->add_option("--parallel", threads, "worker threads (0 = serial)");
  }
  xcls->add_option("--variant", variant)->check(CLI::IsMember({"weak", "full"}));

  auto* attractor = app.add_subcommand("attractor", "component partition around a word");
  attractor->add_option("perm", perm);
  attractor->add_option("-f,--file", file);
  attractor->add_option("--max-nodes", max_nodes);
  attractor->add_flag("--forward", forward, "directed closure of the seed only");
  attractor->add_flag("--count-only", count_only, "omit the attractor node list");
  attractor->add_option("--parallel", threads);

  auto* induct = app.add_subcommand("induct", "induction trace as JSON lines");
  induct->add_option("perm", perm);
  induct->add_option("-f,--file", file);
  induct->add_option("--steps", steps);
  induct->add_option("--lambda", lambda_flag, "lengths num/den, comma separated");
  induct->add_option("--seed", seed, "random admissible lengths");

  auto* suspend = app.add_subcommand("suspend", "suspension data or \"none\"");
  suspend->add_option("perm", perm);
  suspend->add_option("-f,--file", file);
  suspend->add_flag("--polygon", want_polygon, "include the broken-line polygon");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  has_seed = induct->count("--seed") > 0;

  try {
    if (version) {
      out << kVersion << "\n";
      return 0;
    }
    if (check->parsed()) {
      GenPerm gp = load_word(perm, file);
      nlohmann::json j;
      j["input"] = gp.str();
      j["canonical"] = gp.canonical().str();
      j["valid"] = true;
      j["convention"] = gp.convention_ok();
      j["true_permutation"] = gp.is_true_permutation();
      if (gp.convention_ok()) {
        bool irr = !find_reduction(gp).has_value();
        j["irreducible"] = irr;
        j["strongly_irreducible"] = is_strongly_irreducible(gp);
        j["dynamically_irreducible"] =
            irr || is_dynamically_irreducible(gp).dynamically_irreducible;
        if (irr)
          j["stratum"] = signature(gp).str();
        else
          j["stratum"] = nullptr;
      }
      out << j.dump() << "\n";
      return 0;
    }
    if (reduce->parsed()) {
      GenPerm gp = load_word(perm, file);
      auto w = find_reduction(gp);
      if (!w) {
        out << "null\n";
      } else {
        out << witness_json(gp, *w).dump() << "\n";
      }
      return 0;
    }
    if (stratum->parsed()) {
      GenPerm gp = load_word(perm, file);
      out << signature(gp).json() << "\n";
      return 0;
    }
    if (cls->parsed())
      return run_class(out, load_word(perm, file), false, variant, max_nodes, format,
                       count_only, threads);
    if (xcls->parsed())
      return run_class(out, load_word(perm, file), true, variant, max_nodes, format,
                       count_only, threads);
    if (attractor->parsed()) {
      GenPerm gp = load_word(perm, file);
      EnumOptions opts;
      opts.max_nodes = max_nodes;
      opts.threads = threads;
      auto rep = attractor_report(gp, opts, forward);
      nlohmann::json j;
      j["seed"] = gp.canonical().str();
      j["total"] = rep.graph.nodes.size();
      j["attractor"] = rep.attractor;
      j["reducible_dyn"] = rep.reducible_dyn;
      j["reducible_nondyn"] = rep.reducible_nondyn;
      j["closed"] = rep.graph.closed;
      nlohmann::json dyn_nodes = nlohmann::json::array();
      nlohmann::json nondyn_nodes = nlohmann::json::array();
      nlohmann::json attractor_nodes = nlohmann::json::array();
      for (std::size_t i = 0; i < rep.graph.nodes.size(); ++i) {
        std::string node = GenPerm::from_key(rep.graph.nodes[i]).str();
        std::uint8_t f = rep.graph.flags[i];
        if (f & kFlagInAttractor) {
          if (!count_only) attractor_nodes.push_back(node);
        } else if (f & kFlagDynamicallyIrreducible) {
          dyn_nodes.push_back(node);
        } else {
          nondyn_nodes.push_back(node);
        }
      }
      j["transient_dyn"] = std::move(dyn_nodes);
      j["transient_nondyn"] = std::move(nondyn_nodes);
      if (!count_only) j["attractor_nodes"] = std::move(attractor_nodes);
      out << j.dump() << "\n";
      return rep.graph.closed ? 0 : 3;
    }
    if (induct->parsed()) {
      GenPerm gp = load_word(perm, file);
      std::vector<Rat> lambda;
      if (!lambda_flag.empty())
        lambda = lambda_from_flag(gp, lambda_flag);
      else if (has_seed)
        lambda = admissible_lambda_from_seed(gp, seed);
      else
        lambda = generic_lambda(gp);
      auto trace = iterate(LinearInvolution(gp, lambda), steps);
      out << trace_jsonl(trace);
      nlohmann::json j;
      switch (trace.termination) {
        case Termination::StepsExhausted: j["termination"] = "steps_exhausted"; break;
        case Termination::ConnectionLength0: j["termination"] = "connection_length_0"; break;
        case Termination::BothUndefined: j["termination"] = "both_undefined"; break;
      }
      if (trace.first_irreducible_index)
        j["first_irreducible_index"] = *trace.first_irreducible_index;
      else
        j["first_irreducible_index"] = nullptr;
      out << j.dump() << "\n";
      return 0;
    }
    if (suspend->parsed()) {
      GenPerm gp = load_word(perm, file);
      auto zeta = find_suspension(gp);
      if (!zeta) {
        out << "\"none\"\n";
        return 0;
      }
      if (want_polygon) {
        SuspensionData fixed = make_suitable(gp, *zeta);
        out << "{\"suspension\":" << suspension_json(gp, fixed)
            << ",\"polygon\":" << polygon_json(polygon(gp, fixed)) << "}\n";
      } else {
        out << suspension_json(gp, *zeta) << "\n";
      }
      return 0;
    }
    err << "usage error: expected a subcommand\n";
    out << app.help();
    return 1;
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace linvol
