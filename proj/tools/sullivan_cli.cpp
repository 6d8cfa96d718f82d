// Command-line driver: parses a model (file or built-in corpus), runs one
// command and emits a report. Exit codes: 0 success, Holds or HypothesisNotMet;
// 1 Fails, diagnostics or usage errors; 2 Undetermined.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "sullivan/corpus.hpp"
#include "sullivan/report.hpp"

using namespace sullivan;

namespace {

struct Input {
  std::string file;
  std::string corpus_id;
  std::string format = "table";
  std::size_t budget = CochainComplex::kDefaultBudget;
};

struct Loaded {
  std::optional<SullivanModel> model;
  std::string id;
  std::string path;
  std::string source;
  std::vector<Diagnostic> diagnostics;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Loaded load(const Input& in) {
  Loaded l;
  if (in.file.empty() == in.corpus_id.empty()) throw UsageError("exactly one of --model or --corpus is required");
  if (!in.corpus_id.empty()) {
    const auto& e = corpus_entry(in.corpus_id);
    l.id = e.id;
    l.path = e.id;
    l.source = e.source;
  } else {
    std::ifstream f(in.file, std::ios::binary);
    if (!f) throw UsageError("cannot read " + in.file);
    std::ostringstream ss;
    ss << f.rdbuf();
    l.path = in.file;
    l.id = std::filesystem::path(in.file).stem().string();
    l.source = ss.str();
  }
  auto res = parse_model(l.source);
  l.model = std::move(res.model);
  l.diagnostics = std::move(res.diagnostics);
  return l;
}

Format format_of(const Input& in) { return in.format == "json" ? Format::Json : Format::Table; }

Json envelope(const Loaded& l, Json bounds) {
  return {{"engine", {{"name", "sullivan"}, {"version", kEngineVersion}, {"bounds", std::move(bounds)}}}, {"model", l.id}};
}

int emit(const Json& doc, const Input& in, ExitCode code) {
  std::cout << emit_report(doc, format_of(in));
  return static_cast<int>(code);
}

int report_diagnostics(const Loaded& l) {
  for (const auto& d : l.diagnostics) std::cerr << d.format(l.path) << "\n";
  return static_cast<int>(ExitCode::Fails);
}

void add_input(CLI::App* cmd, Input& in) {
  auto* m = cmd->add_option("--model", in.file, "model file");
  auto* c = cmd->add_option("--corpus", in.corpus_id, "built-in corpus model id");
  m->excludes(c);
  cmd->add_option("--format", in.format, "output format")->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--budget", in.budget, "largest degree-piece basis computed");
}

CheckOptions check_options(const Input& in, int window_factor = 2) {
  CheckOptions o;
  o.ellipticity.budget = in.budget;
  o.ellipticity.window_factor = window_factor;
  return o;
}

Json corpus_run_entry(const CorpusEntry& e, const Input& in) {
  auto model = e.model();
  ReportOptions opts;
  opts.checks = check_options(in);
  auto rep = full_report(model, e.id, opts);
  Json checks = Json::object();
  bool consistent = true;
  for (const auto& c : kChecks) {
    std::string got = rep.doc["checks"][c.name]["conclusion"];
    std::string want = e.has_tag(c.name) ? "Holds" : "HypothesisNotMet";
    consistent = consistent && got == want;
    checks[c.name] = got;
  }
  return {{"id", e.id},
          {"summary", rep.doc["summary"]},
          {"checks", checks},
          {"tags_consistent", consistent},
          {"exit", static_cast<int>(rep.code)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on Sullivan minimal models over the rationals"};
  app.set_version_flag("--version", std::string("sullivan ") + kEngineVersion);
  app.require_subcommand(1);
  Input in;

  auto* validate_cmd = app.add_subcommand("validate", "check the minimal-model invariants");
  add_input(validate_cmd, in);

  std::optional<int> max_degree;
  auto* cohomology_cmd = app.add_subcommand("cohomology", "dim H^n and class representatives");
  add_input(cohomology_cmd, in);
  cohomology_cmd->add_option("--max-degree", max_degree, "largest degree");

  auto* bigraded_cmd = app.add_subcommand("bigraded", "word-length bigraded cohomology of (LV, d_k)");
  add_input(bigraded_cmd, in);
  bigraded_cmd->add_option("--max-degree", max_degree, "largest degree");

  std::optional<int> page_r, max_total;
  auto* page_cmd = app.add_subcommand("page", "one page E_r of the word-length spectral sequence");
  add_input(page_cmd, in);
  page_cmd->add_option("--r", page_r, "page index (default k)");
  page_cmd->add_option("--max-total", max_total, "largest total degree");

  auto* einfty_cmd = app.add_subcommand("einfty", "E_infinity and its convergence to H");
  add_input(einfty_cmd, in);
  einfty_cmd->add_option("--max-total", max_total, "largest total degree");

  auto* toomer_cmd = app.add_subcommand("toomer", "Toomer invariant against the closed-form e");
  add_input(toomer_cmd, in);
  toomer_cmd->add_option("--max-total", max_total, "bound used when the model is not elliptic");

  std::string class_expr;
  auto* e0_cmd = app.add_subcommand("e0", "e0 of one class, or the e0 spectrum");
  add_input(e0_cmd, in);
  e0_cmd->add_option("--class", class_expr, "cocycle representing a nonzero class");
  e0_cmd->add_option("--max-total", max_total, "bound used when the model is not elliptic");

  int window_factor = 2;
  auto* elliptic_cmd = app.add_subcommand("elliptic", "window-certified ellipticity verdict");
  add_input(elliptic_cmd, in);
  elliptic_cmd->add_option("--window", window_factor, "window factor F in max(F*N, N + max degree)")
      ->check(CLI::PositiveNumber);

  std::vector<std::pair<CLI::App*, const NamedCheck*>> check_cmds;
  for (const auto& c : kChecks) {
    auto* cmd = app.add_subcommand(c.name, std::string("run the ") + c.name + " check");
    add_input(cmd, in);
    cmd->add_option("--window", window_factor, "window factor")->check(CLI::PositiveNumber);
    check_cmds.emplace_back(cmd, &c);
  }

  auto* report_cmd = app.add_subcommand("report", "every table and verdict");
  add_input(report_cmd, in);
  report_cmd->add_option("--max-degree", max_degree, "largest cohomology degree");
  report_cmd->add_option("--max-total", max_total, "largest total degree for pages");

  std::string filter;
  auto* corpus_cmd = app.add_subcommand("corpus", "built-in models");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "list corpus models");
  list_cmd->add_option("--filter", filter, "only models with this tag");
  list_cmd->add_option("--format", in.format, "output format")->check(CLI::IsMember({"table", "json"}));
  auto* run_cmd = corpus_cmd->add_subcommand("run", "report summary and check verdicts per model");
  run_cmd->add_option("--filter", filter, "only models with this tag");
  run_cmd->add_option("--format", in.format, "output format")->check(CLI::IsMember({"table", "json"}));
  run_cmd->add_option("--budget", in.budget, "largest degree-piece basis computed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (corpus_cmd->parsed()) {
      std::vector<const CorpusEntry*> picked;
      for (const auto& e : corpus())
        if (filter.empty() || e.has_tag(filter)) picked.push_back(&e);
      Json doc = Json::object();
      if (list_cmd->parsed()) {
        Json rows = Json::array();
        for (const auto* e : picked) {
          std::string tags;
          for (const auto& t : e->tags) tags += (tags.empty() ? "" : ",") + t;
          rows.push_back({{"id", e->id}, {"description", e->description}, {"tags", tags}});
        }
        doc["models"] = rows;
        return emit(doc, in, ExitCode::Ok);
      }
      std::vector<std::future<Json>> jobs;
      for (const auto* e : picked) jobs.push_back(std::async(std::launch::async, corpus_run_entry, std::cref(*e), std::cref(in)));
      Json rows = Json::array();
      ExitCode code = ExitCode::Ok;
      for (auto& j : jobs) {
        Json row = j.get();
        code = combine(code, static_cast<ExitCode>(row["exit"].get<int>()));
        if (!row["tags_consistent"].get<bool>()) code = combine(code, ExitCode::Fails);
        rows.push_back(std::move(row));
      }
      doc["engine"] = {{"name", "sullivan"}, {"version", kEngineVersion}};
      doc["models"] = rows;
      return emit(doc, in, code);
    }

    Loaded l = load(in);
    if (validate_cmd->parsed()) {
      Json doc = envelope(l, Json::object());
      if (!l.model) {
        report_diagnostics(l);
        doc["validate"] = {{"valid", false}, {"diagnostics", diagnostics_json(l.diagnostics)}};
        return emit(doc, in, ExitCode::Fails);
      }
      doc["validate"] = validation_json(*l.model);
      doc["invariants"] = invariants_json(*l.model);
      return emit(doc, in, ExitCode::Ok);
    }
    if (!l.model) return report_diagnostics(l);
    const SullivanModel& model = *l.model;
    const int bound = default_bound(model);

    if (report_cmd->parsed()) {
      ReportOptions opts;
      opts.max_degree = max_degree;
      opts.max_total = max_total;
      opts.checks = check_options(in);
      auto rep = full_report(model, l.id, opts);
      return emit(rep.doc, in, rep.code);
    }

    for (const auto& [cmd, check] : check_cmds) {
      if (!cmd->parsed()) continue;
      auto opts = check_options(in, window_factor);
      auto tv = check->run(model, opts);
      Json doc = envelope(l, {{"window_factor", window_factor}, {"basis_budget", in.budget}});
      doc[check->name] = theorem_json(tv, model);
      return emit(doc, in, exit_code(tv.conclusion));
    }

    CochainComplex cx(model, in.budget);
    SpectralSequence ss(cx);

    if (elliptic_cmd->parsed()) {
      auto v = ellipticity_verdict(cx, check_options(in, window_factor).ellipticity);
      Json doc = envelope(l, {{"window_factor", window_factor}, {"window", v.window}, {"basis_budget", in.budget}});
      doc["elliptic"] = ellipticity_json(model.algebra, v);
      return emit(doc, in, exit_code(v.status));
    }
    if (cohomology_cmd->parsed() || bigraded_cmd->parsed()) {
      int deg = max_degree.value_or(bound);
      Json doc = envelope(l, {{"max_degree", deg}});
      if (cohomology_cmd->parsed())
        doc["cohomology"] = cohomology_json(cx, deg);
      else
        doc["bigraded"] = bigraded_json(model, deg, in.budget);
      return emit(doc, in, ExitCode::Ok);
    }
    if (page_cmd->parsed()) {
      int tot = max_total.value_or(bound);
      int r = page_r.value_or(invariants(model).k.value_or(2));
      if (r < 1) throw UsageError("--r must be at least 1");
      Json doc = envelope(l, {{"max_total", tot}});
      doc["page"] = page_json(ss, r, tot);
      return emit(doc, in, ExitCode::Ok);
    }
    if (einfty_cmd->parsed()) {
      int tot = max_total.value_or(bound);
      Json doc = envelope(l, {{"max_total", tot}, {"stabilization_page", stabilization_page(tot)}});
      doc["einfty"] = einfty_json(ss, tot);
      return emit(doc, in, ExitCode::Ok);
    }

    // toomer and e0 are final only on elliptic models; elsewhere they are
    // computed within the bound and flagged as lower bounds.
    auto v = ellipticity_verdict(cx, check_options(in).ellipticity);
    auto b = invariant_bound(v, max_total.value_or(bound));
    Json doc = envelope(l, {{"max_total", b.degree}, {"window", v.window}, {"basis_budget", in.budget}});
    doc["elliptic"] = to_string(v.status);
    ExitCode code = v.status == EllipticStatus::Undetermined ? ExitCode::Undetermined : ExitCode::Ok;
    if (toomer_cmd->parsed()) {
      doc["toomer"] = toomer_json(ss, b);
      return emit(doc, in, code);
    }
    if (e0_cmd->parsed()) {
      if (class_expr.empty()) {
        doc["e0"] = e0_spectrum_json(ss, b);
      } else {
        auto p = parse_polynomial(model.algebra, class_expr);
        if (auto* d = std::get_if<Diagnostic>(&p)) {
          std::cerr << "--class: " << d->format() << "\n";
          return static_cast<int>(ExitCode::Fails);
        }
        doc["e0"] = e0_class_json(ss, std::get<Polynomial>(p));
      }
      return emit(doc, in, code);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Fails);
  } catch (const BudgetExceeded& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Undetermined);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Fails);
  }
  return static_cast<int>(ExitCode::Fails);
}
