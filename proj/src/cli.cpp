#include "alttrace/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "alttrace/algebra_checks.hpp"
#include "alttrace/curve_oracle.hpp"
#include "alttrace/errors.hpp"
#include "alttrace/group_oracle.hpp"
#include "alttrace/version.hpp"

namespace alttrace {

using json = nlohmann::ordered_json;

namespace {

// A command result: either a table (columns + rows) or a flat record.
struct Document {
  explicit Document(std::string cmd) : command(std::move(cmd)) {}
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json record = json::object();
  bool is_table = true;
  bool pass = true;
};

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

std::string header(const std::string& command, const std::string& config) {
  return std::string(kToolName) + " " + kVersion + " " + command + " " + config;
}

std::string render(const Document& doc, const std::string& config, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j;
    j["generator"] = header(doc.command, config);
    if (doc.is_table) {
      json rows = json::array();
      for (const auto& r : doc.rows) {
        json row;
        for (std::size_t i = 0; i < doc.columns.size(); ++i) row[doc.columns[i]] = r[i];
        rows.push_back(row);
      }
      j["rows"] = rows;
    } else {
      for (const auto& [k, v] : doc.record.items()) j[k] = v;
    }
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# " << header(doc.command, config) << '\n';
  if (doc.is_table) {
    for (std::size_t i = 0; i < doc.columns.size(); ++i) os << (i ? "," : "") << doc.columns[i];
    os << '\n';
    for (const auto& r : doc.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << '\n';
    }
  } else {
    os << "key,value\n";
    for (const auto& [k, v] : doc.record.items()) os << k << ',' << csv_cell(v) << '\n';
  }
  return os.str();
}

std::string coeff_list(const std::vector<std::uint32_t>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

std::string partition_string(const Partition& lambda) {
  std::string s;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? "." : "") + std::to_string(lambda[i]);
  return s;
}

// ------------------------------------------------------------------ commands

Document field_doc(std::uint32_t p, int d) {
  const FieldPtr field = build_field(p, d);
  Document doc{"field"};
  doc.is_table = false;
  const auto& desc = field->descriptor();
  doc.record["p"] = desc.p;
  doc.record["d"] = desc.d;
  doc.record["order"] = field->order();
  doc.record["modulus"] = coeff_list(desc.modulus);
  doc.record["generator_is_x"] = desc.generator_is_x;
  doc.record["zech_tables"] = field->has_tables();
  doc.record["canonical"] = desc.canonical();
  return doc;
}

Document traces_doc(const TraceTable& table) {
  Document doc{"traces"};
  doc.columns = {"t_index", "numerator", "denominator", "trace"};
  const auto values = table.integer_traces();
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    doc.rows.push_back({i, e.numerator.get_str(), e.denominator.get_str(), values[i]});
  }
  return doc;
}

Document moments_doc(const MomentReport& report) {
  Document doc{"moments"};
  doc.columns = {"degree", "size", "regime", "twist", "M1", "M2", "M3", "M4",
                 "M1_target", "M2_target", "M3_target", "M4_target", "m3_deviation"};
  for (const auto& r : report.rows) {
    std::vector<json> row{r.degree, r.size, to_string(r.regime.regime), to_string(r.regime.twist)};
    for (const auto& m : r.moments) row.push_back(m.get_str());
    for (const auto& m : r.targets) row.push_back(m.get_str());
    row.push_back(r.m3_deviation);
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

Document identity_doc(std::uint64_t q) {
  const auto split = verify_identity_split(q);
  const auto grouped = verify_identity_grouped(q);
  const auto deriv = verify_derivative_steps(q);
  Document doc{"identity"};
  doc.is_table = false;
  auto& r = doc.record;
  r["q"] = q;
  r["p"] = split.p;
  r["f"] = split.f;
  r["split_holds"] = split.holds;
  r["split_mismatch"] = split.mismatch;
  r["lhs_terms"] = split.lhs_terms;
  r["homogeneous"] = split.homogeneous;
  std::string pf;
  for (const auto& h : grouped.p_f) pf += (pf.empty() ? "" : " ") + coeff_list(h);
  r["P_f"] = pf;
  r["grouped_holds"] = grouped.base.holds;
  r["grouped_mismatch"] = grouped.base.mismatch;
  r["irreducible"] = grouped.all_irreducible;
  r["descends"] = grouped.descends;
  r["matches_enumeration"] = grouped.matches_enumeration;
  r["degree_sum"] = grouped.degree_sum;
  r["P_degree"] = deriv.degree;
  r["P_leading"] = deriv.leading_coefficient;
  r["P_vanishes_on_Fq"] = deriv.vanishes_on_fq;
  r["derivative_form"] = deriv.derivative_form_ok;
  r["derivative_vanishes"] = deriv.derivative_vanishes;
  r["double_roots"] = deriv.double_roots;
  r["factorization"] = deriv.factorization_ok;
  doc.pass = split.holds && split.homogeneous && grouped.ok() && deriv.ok();
  r["verdict"] = doc.pass ? "PASS" : "FAIL";
  return doc;
}

Document wild_doc(std::uint64_t q, int choice) {
  const auto w = wild_inertia_span(q, choice);
  Document doc{"wild"};
  doc.is_table = false;
  auto& r = doc.record;
  r["q"] = q;
  r["field"] = w.field.canonical();
  r["zeta_log"] = w.zeta_log;
  r["span_dimension"] = w.span_dimension;
  r["expected_dimension"] = 2 * w.f;
  std::string basis;
  for (auto b : w.basis) basis += (basis.empty() ? "" : " ") + std::to_string(b);
  r["basis"] = basis;
  r["trace_zero"] = w.trace_zero;
  r["roots_in_decomposition"] = w.roots_in_decomposition;
  r["decomposition_in_span"] = w.decomposition_in_span;
  r["direct_sum"] = w.direct_sum;
  doc.pass = w.ok();
  r["verdict"] = doc.pass ? "PASS" : "FAIL";
  return doc;
}

Document groupstats_doc(int m) {
  const GroupStats stats = build_stats(m);
  Document doc{"groupstats"};
  doc.columns = {"kind", "regime", "twist", "key", "value"};
  const std::vector<std::pair<Regime, Twist>> cases{
      {Regime::Alt, Twist::Plain}, {Regime::OddCoset, Twist::Sgn}, {Regime::Sym, Twist::Plain}};
  for (auto [regime, twist] : cases) {
    for (int k = 1; k <= 4; ++k) {
      doc.rows.push_back({"moment", to_string(regime), to_string(twist), k,
                          exact_moment(stats, regime, twist, k).get_str()});
    }
    for (const auto& [v, pr] : spectrum(stats, regime, twist).probability) {
      doc.rows.push_back({"spectrum", to_string(regime), to_string(twist), v, pr.get_str()});
    }
  }
  for (const auto& c : stats.classes) {
    doc.rows.push_back({"class", c.sign == 1 ? "alt" : "odd-coset", "plain",
                        partition_string(c.cycle_type), c.size.get_str()});
  }
  return doc;
}

Document curves_doc(const CurveCount& counts) {
  Document doc{"curves"};
  doc.columns = {"t_index", "count"};
  for (std::size_t i = 0; i < counts.counts.size(); ++i) doc.rows.push_back({i, counts.counts[i]});
  return doc;
}

Document modified_doc(const std::vector<ModifiedMomentReport>& reports) {
  Document doc{"modified-moment"};
  doc.columns = {"degree", "size", "modified", "direct", "difference", "bound", "within_bound",
                 "fiber_sum_ok"};
  for (const auto& r : reports) {
    doc.rows.push_back({r.degree, r.size, r.modified.get_str(), r.direct.get_str(),
                        r.difference.get_str(), r.bound, r.within_bound, r.fiber_sum_ok});
    doc.pass = doc.pass && r.within_bound && r.fiber_sum_ok;
  }
  return doc;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

// ------------------------------------------------------------ option wiring

struct Binder {
  // (option, copy field from parsed config into merged config)
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&, RunConfig&)>>> entries;

  template <typename T>
  void add(CLI::App* app, const std::string& name, T RunConfig::*member, RunConfig& cfg,
           const std::string& help) {
    auto* opt = app->add_option(name, cfg.*member, help)->capture_default_str();
    entries.emplace_back(opt, [member](RunConfig& dst, RunConfig& src) { dst.*member = src.*member; });
  }
};

void add_params(CLI::App* app, RunConfig& cfg, Binder& b) {
  auto bind = [&](const std::string& name, auto proj, const std::string& help) {
    auto* opt = app->add_option(name, proj(cfg), help)->capture_default_str();
    b.entries.emplace_back(opt, [proj](RunConfig& dst, RunConfig& src) { proj(dst) = proj(src); });
  };
  bind("--p", [](RunConfig& c) -> std::uint32_t& { return c.params.p; }, "characteristic");
  bind("--f", [](RunConfig& c) -> int& { return c.params.f; }, "q = p^f");
  bind("--f0", [](RunConfig& c) -> int& { return c.params.f0; }, "base field k = F_{p^f0}");
  bind("--psi", [](RunConfig& c) -> std::uint64_t& { return c.params.psi_multiplier; },
       "additive character multiplier (packed index in k)");
  b.add(app, "--budget", &RunConfig::budget, cfg, "largest field size for trace tables");
  b.add(app, "--threads", &RunConfig::threads, cfg, "worker threads");
  b.add(app, "--format", &RunConfig::format, cfg, "csv or json");
  b.add(app, "--cache-dir", &RunConfig::cache_dir, cfg, "trace cache directory (env ALTTRACE_CACHE_DIR)");
}

void add_tolerances(CLI::App* app, RunConfig& cfg, Binder& b) {
  auto bind = [&](const std::string& name, auto proj, const std::string& help) {
    auto* opt = app->add_option(name, proj(cfg), help)->capture_default_str();
    b.entries.emplace_back(opt, [proj](RunConfig& dst, RunConfig& src) { proj(dst) = proj(src); });
  };
  bind("--tv-max", [](RunConfig& c) -> double& { return c.tolerances.tv_max; }, "TV threshold");
  bind("--tv-min-field", [](RunConfig& c) -> std::uint64_t& { return c.tolerances.tv_min_field; },
       "field size from which the TV threshold applies");
  bind("--m3-max", [](RunConfig& c) -> double& { return c.tolerances.m3_max; }, "M3 threshold");
  bind("--m3-min-field", [](RunConfig& c) -> std::uint64_t& { return c.tolerances.m3_min_field; },
       "field size from which the M3 threshold applies");
  b.add(app, "--curve-budget", &RunConfig::curve_budget, cfg, "largest field size for curve counts");
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot read config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------- RunConfig

void RunConfig::validate() const {
  params.validate();
  const std::uint64_t q = params.q();
  if (q % 2 == 0) throw std::invalid_argument("q must be odd");
  if (max_degree < 1) throw std::invalid_argument("max degree must be >= 1");
  if (budget == 0 || curve_budget == 0) throw std::invalid_argument("budgets must be positive");
  if (threads == 0) throw std::invalid_argument("threads must be positive");
  if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
  if (!(tolerances.tv_max >= 0) || !(tolerances.m3_max >= 0)) {
    throw std::invalid_argument("tolerances must be nonnegative");
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << params.canonical() << " max_degree=" << max_degree << " budget=" << budget
     << " curve_budget=" << curve_budget << " tv_max=" << tolerances.tv_max
     << " tv_min_field=" << tolerances.tv_min_field << " m3_max=" << tolerances.m3_max
     << " m3_min_field=" << tolerances.m3_min_field;
  return os.str();
}

std::string RunConfig::to_json() const {
  json j;
  j["p"] = params.p;
  j["f"] = params.f;
  j["f0"] = params.f0;
  j["psi"] = params.psi_multiplier;
  j["max_degree"] = max_degree;
  j["budget"] = budget;
  j["curve_budget"] = curve_budget;
  j["cache_dir"] = cache_dir;
  j["threads"] = threads;
  j["format"] = format;
  j["tolerances"] = {{"tv_max", tolerances.tv_max},
                     {"tv_min_field", tolerances.tv_min_field},
                     {"m3_max", tolerances.m3_max},
                     {"m3_min_field", tolerances.m3_min_field}};
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "generator") continue;
      if (key == "p") c.params.p = v.get<std::uint32_t>();
      else if (key == "f") c.params.f = v.get<int>();
      else if (key == "f0") c.params.f0 = v.get<int>();
      else if (key == "psi") c.params.psi_multiplier = v.get<std::uint64_t>();
      else if (key == "max_degree") c.max_degree = v.get<int>();
      else if (key == "budget") c.budget = v.get<std::uint64_t>();
      else if (key == "curve_budget") c.curve_budget = v.get<std::uint64_t>();
      else if (key == "cache_dir") c.cache_dir = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "tolerances") {
        for (const auto& [tk, tv] : v.items()) {
          if (tk == "tv_max") c.tolerances.tv_max = tv.get<double>();
          else if (tk == "tv_min_field") c.tolerances.tv_min_field = tv.get<std::uint64_t>();
          else if (tk == "m3_max") c.tolerances.m3_max = tv.get<double>();
          else if (tk == "m3_min_field") c.tolerances.m3_min_field = tv.get<std::uint64_t>();
          else throw std::invalid_argument("config: unknown tolerance " + tk);
        }
      } else {
        throw std::invalid_argument("config: unknown key " + key);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

// ------------------------------------------------------------------ run_cli

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact trace statistics for the local systems G(k, 2q-1, psi)", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);

  RunConfig cfg;
  Binder binder;
  std::string config_path;
  int degree = 1;
  int field_degree = 1;
  std::uint64_t q_arg = 0;
  int choice = 0;
  int m_arg = 0;
  std::string out_dir;

  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run config; flags override it");
  };

  auto* field = app.add_subcommand("field", "describe F_{p^d}");
  field->add_option("--p", cfg.params.p, "characteristic")->required();
  field->add_option("--d", field_degree, "degree")->capture_default_str();
  field->add_option("--format", cfg.format, "csv or json")->capture_default_str();

  auto* traces = app.add_subcommand("traces", "normalized traces T(t) over one extension");
  add_params(traces, cfg, binder);
  traces->add_option("--degree", degree, "extension degree over k")->required();
  with_config(traces);

  auto* moments = app.add_subcommand("moments", "empirical moments M1..M4 by degree");
  add_params(moments, cfg, binder);
  binder.add(moments, "--max-degree", &RunConfig::max_degree, cfg, "largest extension degree");
  with_config(moments);

  auto* identity = app.add_subcommand("identity", "polynomial identity in split and grouped form");
  identity->add_option("--q", q_arg, "odd prime power")->required();
  identity->add_option("--format", cfg.format, "csv or json")->capture_default_str();

  auto* wild = app.add_subcommand("wild", "F_p-span of the (2q-2)-th roots of unity");
  wild->add_option("--q", q_arg, "odd prime power")->required();
  wild->add_option("--choice", choice, "which primitive root, by discrete log")->capture_default_str();
  wild->add_option("--format", cfg.format, "csv or json")->capture_default_str();

  auto* groupstats = app.add_subcommand("groupstats", "moments and spectra of Alt/Sym(m) on V");
  auto* m_opt = groupstats->add_option("--m", m_arg, "degree of the symmetric group");
  auto* gq_opt = groupstats->add_option("--q", q_arg, "use m = 2q");
  m_opt->excludes(gq_opt);
  groupstats->add_option("--format", cfg.format, "csv or json")->capture_default_str();

  auto* curves = app.add_subcommand("curves", "affine point counts N_L(t)");
  add_params(curves, cfg, binder);
  curves->add_option("--degree", degree, "extension degree over k")->required();
  binder.add(curves, "--curve-budget", &RunConfig::curve_budget, cfg, "largest field size");
  with_config(curves);

  auto* compare = app.add_subcommand("compare", "verdict against the group oracle");
  add_params(compare, cfg, binder);
  add_tolerances(compare, cfg, binder);
  binder.add(compare, "--max-degree", &RunConfig::max_degree, cfg, "largest extension degree");
  with_config(compare);

  auto* all = app.add_subcommand("all", "full pipeline into an output directory");
  add_params(all, cfg, binder);
  add_tolerances(all, cfg, binder);
  binder.add(all, "--max-degree", &RunConfig::max_degree, cfg, "largest extension degree");
  all->add_option("--out-dir", out_dir, "output directory")->required();
  with_config(all);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      RunConfig merged = RunConfig::from_json(read_text(config_path));
      for (const auto& [opt, copy] : binder.entries) {
        if (opt->count() > 0) copy(merged, cfg);
      }
      cfg = merged;
    }
    if (cfg.cache_dir.empty()) {
      if (const char* env = std::getenv(kCacheEnv)) cfg.cache_dir = env;
    }
    if (cfg.format != "csv" && cfg.format != "json") {
      throw std::invalid_argument("format must be csv or json");
    }
    std::optional<TraceCache> cache;
    if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
    const TraceCache* cache_ptr = cache ? &*cache : nullptr;
    const EngineOptions engine{cfg.budget};

    if (*field) {
      out << render(field_doc(cfg.params.p, field_degree),
                    "p=" + std::to_string(cfg.params.p) + " d=" + std::to_string(field_degree),
                    cfg.format);
      return kExitOk;
    }
    if (*identity) {
      const Document doc = identity_doc(q_arg);
      out << render(doc, "q=" + std::to_string(q_arg), cfg.format);
      if (!doc.pass) err << "identity check failed for q=" << q_arg << '\n';
      return doc.pass ? kExitOk : kExitFail;
    }
    if (*wild) {
      const Document doc = wild_doc(q_arg, choice);
      out << render(doc, "q=" + std::to_string(q_arg) + " choice=" + std::to_string(choice), cfg.format);
      return doc.pass ? kExitOk : kExitFail;
    }
    if (*groupstats) {
      const int m = m_arg > 0 ? m_arg : (q_arg > 0 ? static_cast<int>(2 * q_arg) : 6);
      out << render(groupstats_doc(m), "m=" + std::to_string(m), cfg.format);
      return kExitOk;
    }

    cfg.validate();
    const std::string config = cfg.canonical();
    if (*traces) {
      const TraceTable table = load_or_compute(cfg.params, degree, cfg.threads, cache_ptr, engine);
      out << render(traces_doc(table), config + " degree=" + std::to_string(degree), cfg.format);
      return kExitOk;
    }
    if (*moments) {
      out << render(moments_doc(moment_scan(cfg.params, cfg.max_degree, cfg.threads, cache_ptr, engine)),
                    config, cfg.format);
      return kExitOk;
    }
    if (*curves) {
      const CurveCount counts = count_points(cfg.params, degree, cfg.threads, {cfg.curve_budget});
      out << render(curves_doc(counts), config + " degree=" + std::to_string(degree), cfg.format);
      return kExitOk;
    }
    if (*compare) {
      const VerdictReport report =
          verdict(cfg.params, cfg.max_degree, cfg.tolerances, cache_ptr, cfg.threads, engine);
      out << verdict_json(report, header("compare", config));
      err << verdict_table(report);
      return report.pass ? kExitOk : kExitFail;
    }
    if (*all) {
      namespace fs = std::filesystem;
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      const std::string fmt = "csv";
      json cfg_json = json::parse(cfg.to_json());
      json with_gen;
      with_gen["generator"] = header("all", config);
      for (const auto& [k, v] : cfg_json.items()) {
        if (k != "threads" && k != "cache_dir") with_gen[k] = v;
      }
      write_file(dir / "config.json", with_gen.dump(2) + "\n");

      const std::uint64_t q = cfg.params.q();
      bool pass = true;
      // traces and fields
      Document fields{"fields"};
      fields.columns = {"degree", "field"};
      std::vector<TraceTable> tables;
      for (int d = 1; d <= cfg.max_degree; ++d) {
        tables.push_back(load_or_compute(cfg.params, d, cfg.threads, cache_ptr, engine));
        const std::string cfg_d = config + " degree=" + std::to_string(d);
        write_file(dir / ("traces_D" + std::to_string(d) + ".csv"),
                   render(traces_doc(tables.back()), cfg_d, fmt));
        fields.rows.push_back({d, tables.back().field.canonical()});
      }
      write_file(dir / "fields.csv", render(fields, config, fmt));

      MomentReport mr;
      mr.params = cfg.params;
      for (const auto& t : tables) mr.rows.push_back(moment_row(t));
      write_file(dir / "moments.csv", render(moments_doc(mr), config, fmt));

      const Document id = identity_doc(q);
      write_file(dir / "identity.csv", render(id, "q=" + std::to_string(q), fmt));
      const Document wi = wild_doc(q, 0);
      write_file(dir / "wild.csv", render(wi, "q=" + std::to_string(q) + " choice=0", fmt));
      write_file(dir / "groupstats.csv",
                 render(groupstats_doc(static_cast<int>(2 * q)), "m=" + std::to_string(2 * q), fmt));
      pass = pass && id.pass && wi.pass;

      std::vector<ModifiedMomentReport> modified;
      for (int d = 1; d <= cfg.max_degree; ++d) {
        const std::uint64_t size = tables[d - 1].size();
        if (size > cfg.curve_budget) break;
        const CurveCount counts = count_points(cfg.params, d, cfg.threads, {cfg.curve_budget});
        write_file(dir / ("curves_D" + std::to_string(d) + ".csv"),
                   render(curves_doc(counts), config + " degree=" + std::to_string(d), fmt));
        modified.push_back(modified_third_moment(cfg.params, d, counts, tables[d - 1]));
      }
      const Document mod = modified_doc(modified);
      write_file(dir / "modified_moment.csv", render(mod, config, fmt));
      pass = pass && mod.pass;

      const VerdictReport report =
          verdict(cfg.params, cfg.max_degree, cfg.tolerances, cache_ptr, cfg.threads, engine);
      write_file(dir / "verdict.json", verdict_json(report, header("compare", config)));
      pass = pass && report.pass;
      std::string summary = "# " + header("all", config) + "\n" + verdict_table(report);
      summary += std::string("identity ") + (id.pass ? "PASS" : "FAIL") + "\n";
      summary += std::string("wild ") + (wi.pass ? "PASS" : "FAIL") + "\n";
      summary += std::string("modified moment ") + (mod.pass ? "PASS" : "FAIL") + "\n";
      summary += std::string("overall ") + (pass ? "PASS" : "FAIL") + "\n";
      write_file(dir / "summary.txt", summary);
      out << summary;
      return pass ? kExitOk : kExitFail;
    }
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitFail;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return kExitFail;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace alttrace
