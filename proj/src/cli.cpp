#include "csg/cli.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "csg/core_model.hpp"
#include "csg/ehrhart.hpp"
#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/formula.hpp"
#include "csg/game_io.hpp"
#include "csg/polytope.hpp"
#include "csg/subcases.hpp"
#include "csg/verify.hpp"

namespace csg {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path cache_root() {
  if (const char* dir = std::getenv(kCacheEnvVar); dir && *dir)
    return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "csg";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "csg";
  return fs::temp_directory_path() / "csg-cache";
}

ResultCache::ResultCache(fs::path root, bool enabled) : root_(std::move(root)), enabled_(enabled) {}

std::string ResultCache::key(const std::string& command, const json& parameters) const {
  return command + "|" + parameters.dump() + "|" + kEngineVersion;
}

fs::path ResultCache::file_for(const std::string& key) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(key) << ".json";
  return root_ / name.str();
}

std::optional<json> ResultCache::load(const std::string& key) const {
  if (!enabled_)
    return std::nullopt;
  std::ifstream in(file_for(key));
  if (!in)
    return std::nullopt;
  try {
    json entry = json::parse(in);
    if (entry.at("key") != key)
      return std::nullopt;
    return entry.at("value");
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const json& value) const {
  if (!enabled_)
    return;
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec)
    return;
  const fs::path target = file_for(key);
  const fs::path temp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  json entry{{"created_at", std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count())},
             {"key", key},
             {"value", value}};
  {
    std::ofstream out(temp, std::ios::binary);
    out << entry.dump() << '\n';
    if (!out) {
      fs::remove(temp, ec);
      return;
    }
  }
  fs::rename(temp, target, ec);
  if (ec)
    fs::remove(temp, ec);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos)
    return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"')
      quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

namespace {

struct Output {
  std::string text;
  json value;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        s += (i ? "," : "") + csv_field(cells[i]);
      s += "\r\n";
    };
    line(columns);
    for (const auto& row : rows)
      line(row);
    return s;
  }

  json records() const {
    json out = json::array();
    for (const auto& row : rows) {
      json record = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i)
        record[columns[i]] = row[i];
      out.push_back(record);
    }
    return out;
  }
};

std::string str(long v) { return std::to_string(v); }

json periodic_json(const PeriodicNumber& p) {
  json entries = json::array();
  for (const auto& e : p.entries())
    entries.push_back(to_string(e));
  return entries;
}

json quasi_polynomial_json(const QuasiPolynomial& q) {
  json coefficients = json::array();
  for (int power = q.degree(); power >= 0; --power)
    coefficients.push_back({{"power", str(power)}, {"value", periodic_json(q.coefficient(power))}});
  return {{"coefficients", coefficients},
          {"degree", str(q.degree())},
          {"period", str(q.period())},
          {"text", q.to_string()}};
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos)
      throw InvalidInput("");
    std::size_t used = 0;
    const long from = std::stol(text.substr(0, dots), &used);
    if (used != dots)
      throw InvalidInput("");
    const std::string rest = text.substr(dots + 2);
    const long to = std::stol(rest, &used);
    if (used != rest.size() || from > to)
      throw InvalidInput("");
    return {from, to};
  } catch (const std::exception&) {
    throw InvalidInput("sample range must look like a..b with a <= b, got '" + text + "'");
  }
}

struct Globals {
  std::string format = "text";
  std::string out_file;
  bool no_cache = false;
  int jobs = 1;
};

class Runner {
 public:
  Runner(const Globals& g, std::ostream& err)
      : globals_(g), err_(err), cache_(cache_root(), !g.no_cache) {
    enum_.jobs = g.jobs;
  }

  bool json_format() const { return globals_.format == "json"; }

  Output enumerate(int n, std::optional<int> t, std::optional<int> r, bool list) {
    if (!t && r)
      throw InvalidInput("--r needs --t");
    if (list)
      return enumerate_list(n, t, r);
    json params{{"n", n}, {"r", r ? json(*r) : json()}, {"t", t ? json(*t) : json()}};
    json value = cache_.get_or_compute("enumerate-count", params, [&] {
      const BigInt count = t ? count_typed(n, *t, r, enum_) : count_all_games(n, enum_);
      json v{{"count", to_string(count)}, {"n", str(n)}};
      if (t)
        v["t"] = str(*t);
      if (r)
        v["r"] = str(*r);
      return v;
    });
    return {value["count"].get<std::string>() + "\n", value};
  }

  Output tabulate(int n, const std::string& engine) {
    json value = cache_.get_or_compute("tabulate", {{"engine", engine}, {"n", n}}, [&] {
      const Tabulation tab = engine == "antichain" ? tabulate_games(n, enum_) : tabulate_typed(n, enum_);
      json rows = json::array();
      for (const auto& [tr, count] : tab.counts())
        rows.push_back({str(tr.first), str(tr.second), to_string(count)});
      return json{{"rows", rows}, {"total", to_string(tab.total())}};
    });
    Table table{{"n", "t", "r", "count"}, {}};
    for (const auto& row : value["rows"])
      table.rows.push_back({str(n), row[0], row[1], row[2]});
    return {table.csv(), {{"n", str(n)}, {"rows", table.records()}, {"total", value["total"]}}};
  }

  Output formula_list() {
    Table table{{"id", "parameters", "validity", "expression"}, {}};
    for (const auto& info : formula_catalog()) {
      std::string params;
      for (const auto& p : info.parameters)
        params += (params.empty() ? "" : " ") + p;
      table.rows.push_back({info.id, params, info.range(), info.expression});
    }
    return {table.csv(), table.records()};
  }

  Output formula_eval(const std::string& id, long n, long t, long r) {
    const BigInt v = catalog_eval(id, {n, t, r});
    const auto& info = formula_info(id);
    json value{{"id", id}, {"value", to_string(v)}};
    for (const auto& p : info.parameters)
      value[p] = str(p == "n" ? n : p == "t" ? t : r);
    return {to_string(v) + "\n", value};
  }

  Output formula_show(const std::string& id, bool latex) {
    const auto& info = formula_info(id);
    json value{{"expression", info.expression}, {"id", id}, {"validity", info.range()}};
    std::string text = info.expression;
    const auto ids = quasi_polynomial_ids();
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
      const QuasiPolynomial& q = catalog_quasi_polynomial(id);
      value["quasi_polynomial"] = quasi_polynomial_json(q);
      text = latex ? q.to_latex() : q.to_string();
    }
    return {text + "\n", value};
  }

  Output ilp(const std::string& model, int n, int t, int r, const std::string& emit) {
    if (model == "compact" && t != 2)
      throw InvalidInput("the compact model is for t = 2 only");
    const RationalLinearSystem system = model == "compact" ? build_compact_t2(n, r) : build_big_m(n, t, r);
    if (emit == "json")
      return {system.to_json().dump(2) + "\n", system.to_json()};
    if (emit == "lp")
      return {system.to_lp(), {{"lp", system.to_lp()}}};
    if (emit == "feasibility") {
      const Feasibility f = rational_feasibility(system);
      if (f == Feasibility::ResourceLimit)
        throw ResourceLimit("Fourier-Motzkin exceeded the constraint ceiling");
      const std::string verdict = f == Feasibility::Feasible ? "feasible" : "infeasible";
      return {verdict + "\n", {{"feasibility", verdict}, {"model", model}, {"n", str(n)}, {"r", str(r)}, {"t", str(t)}}};
    }
    json params{{"model", model}, {"n", n}, {"r", r}, {"t", t}};
    json value = cache_.get_or_compute("ilp-count", params, [&] {
      return json{{"count", to_string(count_lattice_points(system))},
                  {"model", model},
                  {"n", str(n)},
                  {"r", str(r)},
                  {"t", str(t)}};
    });
    return {value["count"].get<std::string>() + "\n", value};
  }

  Output subcases(int t, int r, bool list) {
    json tuples = cache_.get_or_compute("subcases", {{"r", r}, {"t", t}}, [&] {
      SubcaseOptions options;
      options.jobs = globals_.jobs;
      json v = json::array();
      for (const auto& tp : enumerate_subcases(t, r, options))
        v.push_back(tp.to_string());
      return v;
    });
    if (!list)
      return {str(static_cast<long>(tuples.size())) + "\n",
              {{"count", str(static_cast<long>(tuples.size()))}, {"r", str(r)}, {"t", str(t)}}};
    std::string text;
    json records = json::array();
    for (const auto& s : tuples) {
      text += s.get<std::string>() + "\n";
      records.push_back(parse_subcase_tuple(s.get<std::string>(), t, r).to_json());
    }
    return {text, records};
  }

  Output fit(int t, int r, int degree, std::optional<int> period, int max_period, const std::string& samples,
             const std::string& emit) {
    const auto [from, to] = parse_range(samples);
    json counts = cache_.get_or_compute("samples", {{"from", from}, {"r", r}, {"t", t}, {"to", to}}, [&] {
      SampleOptions options;
      options.jobs = globals_.jobs;
      const SampleSet set = sample_counts(t, r, from, to, options);
      json v = json::array();
      for (const auto& s : set.points())
        v.push_back({str(s.n), to_string(s.count)});
      return v;
    });
    SampleSet set;
    for (const auto& c : counts)
      set.add(std::stol(c[0].get<std::string>()), BigInt(c[1].get<std::string>()), Provenance::Enumeration);
    QuasiPolynomial q;
    int used_period = 0;
    if (period) {
      q = fit_quasi_polynomial(set, degree, *period);
      used_period = *period;
    } else {
      auto found = find_period(set, degree, max_period);
      if (!found)
        throw FitMismatch("no period up to " + str(max_period) + " fits the samples", to);
      q = found->polynomial;
      used_period = found->period;
    }
    json value = quasi_polynomial_json(q);
    value["fitted_period"] = str(used_period);
    value["samples"] = samples;
    value["r"] = str(r);
    value["t"] = str(t);
    if (emit == "json" || json_format())
      return {value.dump(2) + "\n", value};
    return {(emit == "latex" ? q.to_latex() : q.to_string()) + "\n", value};
  }

  Output maxr(int n, bool table) {
    if (!table) {
      const BigInt v = max_shift_minimal(n);
      return {to_string(v) + "\n", {{"maxr", to_string(v)}, {"n", str(n)}}};
    }
    Table t{{"n", "maxr"}, {}};
    for (int k = 1; k <= n; ++k)
      t.rows.push_back({str(k), to_string(max_shift_minimal(k))});
    return {t.csv(), t.records()};
  }

  std::pair<Output, bool> verify(const std::string& name) {
    VerifyOptions options;
    options.jobs = globals_.jobs;
    bool ok = true;
    std::string text;
    json reports = json::array();
    for (const Criterion* c : suite(name)) {
      const CheckReport report = run_criterion(*c, options);
      ok = ok && report.passed;
      text += report_line(report) + "\n";
      for (const auto& m : report.mismatches)
        text += "    - " + m + "\n";
      reports.push_back({{"checks", str(report.checks)},
                         {"id", str(report.id)},
                         {"mismatches", report.mismatches},
                         {"name", report.name},
                         {"passed", report.passed}});
      if (globals_.out_file.size() || json_format())
        err_ << report_line(report) << "\n";
    }
    return {{text, {{"passed", ok}, {"reports", reports}, {"suite", name}}}, ok};
  }

 private:
  Output enumerate_list(int n, std::optional<int> t, std::optional<int> r) {
    if (n > enum_.limits.classify_max_n)
      throw ResourceLimit("game listing is limited to n <= " + str(enum_.limits.classify_max_n));
    std::string text;
    json games = json::array();
    const int lo = t ? *t : 1;
    const int hi = t ? *t : n;
    for (int k = lo; k <= hi; ++k)
      enumerate_typed(n, k, r, [&](const TypedGame& g) {
        if (json_format())
          games.push_back(to_json(g));
        else
          text += to_text(g) + "\n";
      });
    return {text, games};
  }

  Globals globals_;
  std::ostream& err_;
  ResultCache cache_;
  EnumerationOptions enum_;
};

void emit(const Output& output, const Globals& g, std::ostream& out) {
  const std::string body = g.format == "json" ? output.value.dump(2) + "\n" : output.text;
  if (g.out_file.empty()) {
    out << body;
    return;
  }
  std::ofstream file(g.out_file, std::ios::binary);
  file << body;
  if (!file)
    throw InvalidInput("cannot write " + g.out_file);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"csg"};
  for (const auto& a : args)
    argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting complete simple games"};
  app.name("csg");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", g.out_file, "Write the result to FILE");
  app.add_flag("--no-cache", g.no_cache, "Bypass the result cache");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 1024));

  int n = 0;
  std::optional<int> t, r;
  bool list = false, count = false;

  auto* enumerate = app.add_subcommand("enumerate", "Count or list games");
  enumerate->add_option("--n", n)->required()->check(CLI::Range(1, 63));
  enumerate->add_option("--t", t)->check(CLI::PositiveNumber);
  enumerate->add_option("--r", r)->check(CLI::PositiveNumber);
  auto* list_flag = enumerate->add_flag("--list", list, "One game per line");
  enumerate->add_flag("--count", count, "Print the number of games")->excludes(list_flag);

  std::string engine = "typed";
  auto* tabulate = app.add_subcommand("tabulate", "cs(n,t,r) for all t and r");
  tabulate->add_option("--n", n)->required()->check(CLI::Range(1, 63));
  tabulate->add_option("--engine", engine)->check(CLI::IsMember({"typed", "antichain"}));

  auto* formula = app.add_subcommand("formula", "Closed forms and quasi-polynomials");
  formula->require_subcommand(1);
  auto* formula_list = formula->add_subcommand("list", "Catalog ids and validity ranges");
  std::string id;
  long fn = 0, ft = 0, fr = 0;
  auto* formula_eval = formula->add_subcommand("eval", "Evaluate a catalog entry");
  formula_eval->add_option("--id", id)->required();
  formula_eval->add_option("--n", fn);
  formula_eval->add_option("--t", ft);
  formula_eval->add_option("--r", fr);
  bool latex = false;
  auto* formula_show = formula->add_subcommand("show", "Print a catalog entry");
  formula_show->add_option("--id", id)->required();
  formula_show->add_flag("--latex", latex);

  std::string model = "bigm", ilp_emit = "count";
  int it = 2, ir = 1;
  auto* ilp = app.add_subcommand("ilp", "Integer models of a (t, r) class");
  ilp->add_option("--model", model)->check(CLI::IsMember({"bigm", "compact"}));
  ilp->add_option("--n", n)->required()->check(CLI::Range(1, 63));
  ilp->add_option("--t", it)->check(CLI::PositiveNumber);
  ilp->add_option("--r", ir)->check(CLI::PositiveNumber);
  ilp->add_option("--emit", ilp_emit)->check(CLI::IsMember({"count", "json", "lp", "feasibility"}));

  int st = 0, sr = 0;
  auto* subcases = app.add_subcommand("subcases", "Sub-case tuples of a (t, r) class");
  subcases->add_option("--t", st)->required()->check(CLI::PositiveNumber);
  subcases->add_option("--r", sr)->required()->check(CLI::PositiveNumber);
  auto* sub_list = subcases->add_flag("--list", list);
  subcases->add_flag("--count", count)->excludes(sub_list);

  int degree = 0, max_period = 12;
  std::optional<int> period;
  std::string samples, fit_emit = "pretty";
  auto* fit = app.add_subcommand("fit", "Interpolate a quasi-polynomial from enumeration");
  fit->add_option("--t", st)->required()->check(CLI::PositiveNumber);
  fit->add_option("--r", sr)->required()->check(CLI::PositiveNumber);
  fit->add_option("--degree", degree)->required()->check(CLI::NonNegativeNumber);
  fit->add_option("--period", period)->check(CLI::PositiveNumber);
  fit->add_option("--max-period", max_period, "Period search bound when --period is absent")
      ->check(CLI::PositiveNumber);
  fit->add_option("--samples", samples, "a..b")->required();
  fit->add_option("--emit", fit_emit)->check(CLI::IsMember({"pretty", "latex", "json"}));

  bool maxr_table = false;
  auto* maxr = app.add_subcommand("maxr", "Largest number of shift-minimal winning coalitions");
  maxr->add_option("--n", n)->required()->check(CLI::Range(1, 63));
  maxr->add_flag("--table", maxr_table, "Rows for 1..n");

  std::string suite_name = "all";
  auto* verify = app.add_subcommand("verify", "Run an acceptance bundle");
  verify->add_option("--suite", suite_name)->check(CLI::IsMember(suite_names()));

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();
  for (auto* sub : formula->get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    Runner run(g, err);
    Output output;
    int code = kExitOk;
    if (*enumerate) {
      output = run.enumerate(n, t, r, list);
    } else if (*tabulate) {
      output = run.tabulate(n, engine);
    } else if (*formula_list) {
      output = run.formula_list();
    } else if (*formula_eval) {
      output = run.formula_eval(id, fn, ft, fr);
    } else if (*formula_show) {
      output = run.formula_show(id, latex);
    } else if (*ilp) {
      output = run.ilp(model, n, it, ir, ilp_emit);
    } else if (*subcases) {
      output = run.subcases(st, sr, list);
    } else if (*fit) {
      output = run.fit(st, sr, degree, period, max_period, samples, fit_emit);
    } else if (*maxr) {
      output = run.maxr(n, maxr_table);
    } else if (*verify) {
      auto [o, ok] = run.verify(suite_name);
      output = o;
      code = ok ? kExitOk : kExitVerification;
    }
    emit(output, g, out);
    return code;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const FormulaDefect& e) {
    err << "formula defect: " << e.what() << "\n";
    return kExitVerification;
  } catch (const FitMismatch& e) {
    err << "fit mismatch: " << e.what() << "\n";
    return kExitVerification;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace csg
