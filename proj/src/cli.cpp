#include "canon/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "canon/catalog.hpp"
#include "canon/errors.hpp"
#include "canon/generator.hpp"
#include "canon/realization.hpp"
#include "canon/spectral.hpp"
#include "canon/transfer_graph.hpp"
#include "canon/transform.hpp"

namespace canon::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

struct Config {
  Format format = Format::Text;
  double tolerance = SpectralOptions{}.tolerance;
  std::size_t max_iterations = SpectralOptions{}.max_iterations;
  std::size_t node_budget = kDefaultNodeBudget;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  std::size_t charpoly_cap = SpectralOptions{}.charpoly_cap;
  unsigned workers = 1;
  std::string cache_path;

  SpectralOptions spectral() const {
    SpectralOptions o;
    o.tolerance = tolerance;
    o.max_iterations = max_iterations;
    o.node_budget = node_budget;
    o.charpoly_cap = charpoly_cap;
    return o;
  }
};

void add_format(CLI::App* cmd, Config& cfg, bool allow_csv) {
  std::map<std::string, Format> names{{"text", Format::Text}, {"json", Format::Json}};
  if (allow_csv) names.emplace("csv", Format::Csv);
  cmd->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(names));
}

void add_spectral_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--tolerance", cfg.tolerance, "Power-iteration tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", cfg.max_iterations, "Power-iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--node-budget", cfg.node_budget, "Maximum transfer-graph nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--charpoly-cap", cfg.charpoly_cap, "Largest component given an exact polynomial");
}

json flex_json(const Scheme& s, const FlexibilityResult& r) {
  json comps = json::array();
  for (const auto& c : r.per_component) {
    comps.push_back({{"component", c.component}, {"size", c.size}, {"eigenvalue", c.eigenvalue}});
  }
  json j{{"scheme", format_scheme(s)},
         {"lambda", r.lambda},
         {"lambda_display", format_lambda(r.lambda)},
         {"exact_hint", r.exact_hint ? json(*r.exact_hint) : json(nullptr)},
         {"nodes", r.nodes},
         {"edges", r.edges},
         {"scc_count", r.scc_count},
         {"iterations", r.iterations},
         {"tolerance_achieved", r.tolerance_achieved},
         {"components", comps}};
  j["charpoly"] = r.dominant_poly ? json(r.dominant_poly->to_string()) : json(nullptr);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flexibility of canonic schemes: counting, spectra, normalization, generation", "canon"};
  app.require_subcommand(1);
  Config cfg;
  if (const char* env = std::getenv(kCacheEnv)) cfg.cache_path = env;

  std::string scheme_text, other_text, melody_text, dump_path;
  bool raw = false;

  auto* flex = app.add_subcommand("flex", "Flexibility (dominant eigenvalue of the window graph)");
  flex->add_option("scheme", scheme_text, "Scheme, e.g. \"{(0,0)B, (1,3), (3,7)}\"")->required();
  flex->add_flag("--raw", raw, "Skip the time-gcd reduction");
  flex->add_option("--dump-graph", dump_path, "Write the window graph to this file (- for stdout)");
  flex->add_option("--cache", cfg.cache_path, "Flexibility cache file (JSON lines)");
  add_format(flex, cfg, false);
  add_spectral_flags(flex, cfg);

  int n = 0;
  bool use_oracle = false, series = false;
  auto* count = app.add_subcommand("count", "Exact number of valid n-note canons");
  count->add_option("scheme", scheme_text)->required();
  count->add_option("--n", n, "Melody length")->required()->check(CLI::NonNegativeNumber);
  count->add_flag("--oracle", use_oracle, "Use the depth-first oracle instead of the graph");
  count->add_flag("--series", series, "Print V_0..V_n");
  count->add_option("--node-budget", cfg.node_budget);
  count->add_option("--oracle-budget", cfg.oracle_budget);
  add_format(count, cfg, false);

  auto* validate_cmd = app.add_subcommand("validate", "Check a melody against a scheme");
  validate_cmd->add_option("scheme", scheme_text)->required();
  validate_cmd->add_option("melody", melody_text, "Notes as digits 0-6 or letters B..A")->required();
  add_format(validate_cmd, cfg, false);

  auto* normalize = app.add_subcommand("normalize", "Canonical representative of the equivalence class");
  normalize->add_option("scheme", scheme_text)->required();
  add_format(normalize, cfg, false);

  auto* equiv = app.add_subcommand("equiv", "Whether two schemes are equivalent");
  equiv->add_option("scheme", scheme_text)->required();
  equiv->add_option("other", other_text)->required();
  add_format(equiv, cfg, false);

  int max_t3 = 8;
  auto* table = app.add_subcommand("table", "Flexibility table of reduced 3-voice schemes");
  table->add_option("--max-t3", max_t3, "Largest t3")->check(CLI::Range(2, 64));
  table->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(table, cfg, true);
  add_spectral_flags(table, cfg);

  std::string input_path = "-";
  std::optional<std::string> reference_path;
  auto* diff = app.add_subcommand("diff", "Compare a table CSV with the reference values");
  diff->add_option("--input", input_path, "Table CSV ('-' for stdin)");
  diff->add_option("--reference", reference_path, "Reference CSV (default: embedded table)")->expected(0, 1);
  double diff_tol = kPrintTolerance;
  diff->add_option("--tolerance", diff_tol, "Absolute tolerance");
  add_format(diff, cfg, false);

  auto* charpoly = app.add_subcommand("charpoly", "Exact characteristic polynomials of small components");
  charpoly->add_option("scheme", scheme_text)->required();
  charpoly->add_option("--cap", cfg.charpoly_cap, "Largest component size");
  charpoly->add_flag("--raw", raw, "Skip the time-gcd reduction");
  add_format(charpoly, cfg, false);

  GenOptions gen;
  std::string prefix_text;
  std::string gen_format = "digits";
  auto* generate = app.add_subcommand("generate", "Random valid canon");
  generate->add_option("scheme", scheme_text)->required();
  generate->add_option("--length", gen.length, "Number of notes")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("--prefix", prefix_text, "Fixed opening notes");
  generate->add_flag("--avoid-parallels", gen.avoid_parallel_perfects, "Avoid parallel octaves and fifths");
  generate->add_option("--max-retries", gen.max_retries, "Backtrack cap");
  generate->add_option("--format", gen_format, "digits | letters | csv | json")
      ->check(CLI::IsMember({"digits", "letters", "csv", "json"}));

  auto* continuations = app.add_subcommand("continuations", "Legal next notes after a prefix");
  continuations->add_option("scheme", scheme_text)->required();
  continuations->add_option("prefix", prefix_text)->required();
  add_format(continuations, cfg, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (flex->parsed()) {
      const auto s = parse_scheme(scheme_text);
      auto opts = cfg.spectral();
      opts.reduce_time_gcd = !raw;
      if (!cfg.cache_path.empty() && dump_path.empty() && cfg.format == Format::Text) {
        const auto e = cached_flexibility(s, cfg.cache_path, opts);
        out << "lambda=" << format_lambda(e.lambda) << "\n";
        return kExitOk;
      }
      FlexibilityResult r;
      if (!dump_path.empty() && s.size() > 1) {
        const auto g = build_graph(raw ? s : time_reduced(s), opts.node_budget);
        if (dump_path == "-") {
          write_graph_dump(out, g);
        } else {
          std::ofstream dump(dump_path);
          if (!dump) throw DomainError("cannot write " + dump_path);
          write_graph_dump(dump, g);
        }
        r = flexibility(g, opts);
      } else {
        r = flexibility(s, opts);
      }
      if (cfg.format == Format::Json) {
        out << flex_json(s, r).dump(2) << "\n";
      } else {
        out << "lambda=" << format_lambda(r.lambda) << "\n";
        if (r.exact_hint) out << "exact=" << *r.exact_hint << "\n";
        out << "nodes=" << r.nodes << " edges=" << r.edges << " sccs=" << r.scc_count << "\n";
      }
      return kExitOk;
    }

    if (count->parsed()) {
      const auto s = parse_scheme(scheme_text);
      std::vector<std::string> values;
      if (use_oracle) {
        for (auto v : count_valid_oracle_series(s, n, cfg.oracle_budget)) values.push_back(std::to_string(v));
      } else if (span(s) == 0) {
        for (int k = 0; k <= n; ++k) values.push_back(count_valid(s, k).str());
      } else {
        for (const auto& v : count_valid_fast_series(build_graph(s, cfg.node_budget), n)) values.push_back(v.str());
      }
      if (!series) values = {values.back()};
      if (cfg.format == Format::Json) {
        json j{{"scheme", format_scheme(s)}, {"n", n}};
        if (series) {
          j["series"] = values;
        } else {
          j["count"] = values.back();
        }
        out << j.dump(2) << "\n";
      } else {
        for (const auto& v : values) out << v << "\n";
      }
      return kExitOk;
    }

    if (validate_cmd->parsed()) {
      const auto s = parse_scheme(scheme_text);
      const auto m = parse_melody(melody_text);
      const auto violations = validate(s, m);
      if (cfg.format == Format::Json) {
        json arr = json::array();
        for (const auto& v : violations) {
          arr.push_back({{"time", v.time}, {"upper", v.upper + 1}, {"lower", v.lower + 1}, {"kind", to_string(v.kind)}});
        }
        out << json{{"valid", violations.empty()}, {"violations", arr}}.dump(2) << "\n";
      } else if (violations.empty()) {
        out << "valid\n";
      } else {
        for (const auto& v : violations) {
          out << "t=" << v.time << " voices " << v.upper + 1 << "/" << v.lower + 1 << ": " << to_string(v.kind) << "\n";
        }
      }
      return violations.empty() ? kExitOk : kExitDomain;
    }

    if (normalize->parsed()) {
      const auto s = parse_scheme(scheme_text);
      const auto cf = canonical_form(s);
      if (cfg.format == Format::Json) {
        json steps = json::array();
        for (const auto& t : cf.steps) steps.push_back(to_string(t));
        out << json{{"scheme", format_scheme(s)}, {"canonical", format_scheme(cf.scheme)}, {"steps", steps}}.dump(2)
            << "\n";
      } else {
        out << format_scheme(cf.scheme) << "\n";
        for (const auto& t : cf.steps) out << "  " << to_string(t) << "\n";
      }
      return kExitOk;
    }

    if (equiv->parsed()) {
      const auto a = canonical_key(parse_scheme(scheme_text));
      const auto b = canonical_key(parse_scheme(other_text));
      if (cfg.format == Format::Json) {
        out << json{{"equivalent", a == b}, {"canonical", {a, b}}}.dump(2) << "\n";
      } else {
        out << (a == b ? "equivalent" : "not equivalent") << "\n" << a << "\n" << b << "\n";
      }
      return kExitOk;
    }

    if (table->parsed()) {
      const auto rows = compute_table(max_t3, cfg.workers, cfg.spectral());
      if (cfg.format == Format::Json) {
        write_table_json(out, rows);
      } else if (cfg.format == Format::Csv) {
        write_table_csv(out, rows);
      } else {
        for (const auto& r : rows) {
          out << r.t2 << " " << r.t3 << " " << to_string(r.bass) << " p3=" << r.p3.value() << "  "
              << (r.error ? "error: " + *r.error : format_lambda(r.lambda)) << "\n";
        }
      }
      for (const auto& r : rows) {
        if (r.error) err << "row " << to_string(key_of(r)) << ": " << *r.error << "\n";
      }
      return kExitOk;
    }

    if (diff->parsed()) {
      std::vector<CatalogRow> rows;
      if (input_path == "-") {
        rows = read_table_csv(in);
      } else {
        std::ifstream f(input_path);
        if (!f) throw DomainError("cannot read " + input_path);
        rows = read_table_csv(f);
      }
      std::vector<ReferenceEntry> reference = reference_table();
      if (reference_path && !reference_path->empty()) {
        std::ifstream f(*reference_path);
        if (!f) throw DomainError("cannot read " + *reference_path);
        reference.clear();
        for (const auto& r : read_table_csv(f)) reference.push_back({key_of(r), r.lambda});
      }
      const auto report = reference_diff(rows, reference, diff_tol);
      if (cfg.format == Format::Json) {
        json mm = json::array(), missing = json::array();
        for (const auto& m : report.mismatches) {
          mm.push_back({{"key", to_string(m.key)}, {"computed", m.computed}, {"printed", m.printed}});
        }
        for (const auto& k : report.missing) missing.push_back(to_string(k));
        out << json{{"ok", report.ok()}, {"mismatches", mm}, {"missing", missing}, {"failed", report.failed.size()}}.dump(2)
            << "\n";
      } else {
        write_diff_report(out, report);
      }
      return report.ok() ? kExitOk : kExitDomain;
    }

    if (charpoly->parsed()) {
      auto s = parse_scheme(scheme_text);
      if (s.size() == 1) throw DomainError("single-voice schemes have no transfer graph");
      if (!raw) s = time_reduced(s);
      const auto graph = build_graph(s, cfg.node_budget);
      const auto scc = scc_decompose(graph);
      json arr = json::array();
      for (std::size_t c = 0; c < scc.size(); ++c) {
        if (!scc.is_nontrivial(graph, c)) continue;
        const auto size = scc.components[c].size();
        const auto eig = component_eigenvalue(graph, scc, c, cfg.spectral());
        std::optional<CharPoly> poly;
        if (size <= cfg.charpoly_cap) poly = char_poly(graph, scc, c, cfg.charpoly_cap);
        if (cfg.format == Format::Json) {
          arr.push_back({{"component", c},
                         {"size", size},
                         {"eigenvalue", eig.value},
                         {"charpoly", poly ? json(poly->to_string()) : json(nullptr)}});
        } else {
          out << "component " << c << " size=" << size << " eigenvalue=" << format_lambda(eig.value)
              << " charpoly=" << (poly ? poly->to_string() : std::string("(over cap)")) << "\n";
        }
      }
      if (cfg.format == Format::Json) out << arr.dump(2) << "\n";
      return kExitOk;
    }

    if (generate->parsed()) {
      const auto s = parse_scheme(scheme_text);
      const auto prefix = parse_melody(prefix_text);
      const auto m = random_canon(s, prefix, gen);
      if (gen_format == "letters") {
        out << melody_letters(m) << "\n";
      } else if (gen_format == "csv") {
        write_realization_csv(out, s, m);
      } else if (gen_format == "json") {
        out << json{{"scheme", format_scheme(s)}, {"seed", gen.seed}, {"melody", melody_digits(m)},
                    {"letters", melody_letters(m)}}.dump(2)
            << "\n";
      } else {
        out << melody_digits(m) << "\n";
      }
      return kExitOk;
    }

    if (continuations->parsed()) {
      const auto s = parse_scheme(scheme_text);
      const auto next = valid_continuations(s, parse_melody(prefix_text));
      if (cfg.format == Format::Json) {
        json arr = json::array();
        for (auto p : next) arr.push_back(p.value());
        out << arr.dump() << "\n";
      } else {
        out << melody_digits(next) << "\n";
      }
      return kExitOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitDomain;
}

}  // namespace canon::cli
