#include "quadlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "quadlab/catalog.hpp"
#include "quadlab/construct.hpp"
#include "quadlab/properties.hpp"
#include "quadlab/search.hpp"
#include "quadlab/structure.hpp"

#ifndef QUADLAB_DATA_DIR
#define QUADLAB_DATA_DIR "data"
#endif

namespace quadlab {

std::string default_expectations_path() {
  return std::string(QUADLAB_DATA_DIR) + "/report_expectations.json";
}

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

Groupoid load(const std::string& spec) {
  constexpr std::string_view prefix = "catalog:";
  if (spec.starts_with(prefix)) return catalog_get(spec.substr(prefix.size()));
  return read_table_file(spec);
}

Element element(const Groupoid& g, const std::string& token) {
  const auto e = g.find(token);
  if (!e) throw UsageError("no element named " + token);
  return *e;
}

void emit_table(const Groupoid& g, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    serialize_table(g, out);
  } else {
    write_table_file(g, path);
    out << "wrote " << path << '\n';
  }
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string level_text(const Groupoid& g, const Level& level) {
  std::string s = "(";
  for (std::size_t i = 0; i < level.size(); ++i) s += (i ? ", " : "") + g.name(level[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_check(const std::string& file, const std::vector<std::string>& props,
              const std::string& method, std::ostream& out) {
  const Groupoid g = load(file);
  bool ok = true;
  for (const auto& tag : props) {
    const Verdict v = holds(g, parse_property(tag));
    out << tag << ": " << (v.holds ? "true" : "false");
    if (v.witness) out << "  (" << v.witness->detail << ")";
    out << '\n';
    ok = ok && v.holds;
  }
  if (!method.empty() || props.empty()) {
    const QuadraticalMethod m = method.empty() ? QuadraticalMethod::all : parse_method(method);
    if (m == QuadraticalMethod::all) {
      for (QuadraticalMethod single : kSingleMethods) {
        const bool q = is_quadratical(g, single);
        out << "quadratical[" << to_string(single) << "]: " << (q ? "true" : "false") << '\n';
        ok = ok && q;
      }
      // Raises if the characterizations disagree.
      (void)is_quadratical(g, QuadraticalMethod::all);
    } else {
      const bool q = is_quadratical(g, m);
      out << "quadratical[" << to_string(m) << "]: " << (q ? "true" : "false") << '\n';
      ok = ok && q;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_iso(const std::string& a, const std::string& b, std::ostream& out) {
  const Groupoid g = load(a), h = load(b);
  const auto iso = find_isomorphism(g, h);
  if (!iso) {
    out << "not isomorphic\n";
    return kExitFailure;
  }
  out << "isomorphic:";
  for (Element x = 0; x < g.order(); ++x) out << ' ' << g.name(x) << "->" << h.name(iso->map[x]);
  out << '\n';
  return kExitOk;
}

int cmd_cycles(const std::string& file, const std::string& base, std::ostream& out) {
  const Groupoid g = load(file);
  const auto d = cycle_decomposition(g, element(g, base));
  out << d.cycles.size() << " cycles on " << g.name(d.base) << '\n';
  for (const auto& c : d.cycles) out << level_text(g, c.members) << '\n';
  return kExitOk;
}

int cmd_form(const std::string& file, std::ostream& out) {
  const Groupoid g = load(file);
  const auto f = detect_form_Qn(g);
  if (!f) {
    out << "not of form Qn\n";
    return kExitOk;
  }
  out << "form Q" << f->n << " with a = " << g.name(f->a) << ", b = " << g.name(f->b) << '\n';
  return kExitOk;
}

int cmd_hfamily(const std::string& file, const std::string& pair, std::size_t depth,
                std::ostream& out) {
  const Groupoid g = load(file);
  const auto comma = pair.find(',');
  if (comma == std::string::npos) throw UsageError("--pair expects A,B");
  const auto h = h_family(g, element(g, pair.substr(0, comma)), element(g, pair.substr(comma + 1)), depth);
  out << "aba = " << g.name(h.base.aba) << '\n';
  for (std::size_t i = 0; i < h.levels.size(); ++i)
    out << 'H' << i + 1 << " = " << level_text(g, h.levels[i]) << '\n';
  return kExitOk;
}

int cmd_complete(std::size_t form, const std::string& branch, const std::string& out_path,
                 const std::string& trace_path, const std::string& expect, std::ostream& out) {
  if (!expect.empty() && expect != "table" && expect != "contradiction")
    throw UsageError("--expect must be table or contradiction");
  const BranchChoice choice{form, parse_branch(branch)};
  const auto r = complete_form_Qn(choice);
  if (const auto bad = replay_completion(r)) {
    out << "trace replay failed: " << *bad << '\n';
    return kExitFailure;
  }
  const std::string trace = r.trace.render();
  if (trace_path.empty()) {
    out << trace;
  } else {
    std::ofstream f(trace_path);
    if (!f) throw Error("cannot write " + trace_path);
    f << trace;
  }
  if (r.contradiction()) {
    out << "CONTRADICTION: form Q" << form << " branch " << branch << " has no completion ("
        << r.cases << " case splits)\n";
  } else {
    out << "completed form Q" << form << " branch " << branch << ": " << r.solutions
        << (r.exhausted ? "" : "+") << " table(s)\n";
    emit_table(*r.table, out_path, out);
  }
  if (expect.empty()) return kExitOk;
  return (expect == "contradiction") == r.contradiction() ? kExitOk : kExitFailure;
}

int cmd_translatable(const std::string& file, std::size_t scan, std::ostream& out) {
  if (scan > 0) {
    const auto rep = scan_translatable(scan);
    out << "order " << scan << ": " << rep.hits.size() << " hit(s)\n";
    for (const auto& h : rep.hits) {
      out << "k = " << h.k << ", first row:";
      for (Element x : h.table.row(0)) out << ' ' << x + 1;
      out << '\n';
    }
    return kExitOk;
  }
  if (file.empty()) throw UsageError("translatable needs FILE or --scan N");
  const Groupoid g = load(file);
  std::vector<std::size_t> ordered;
  for (std::size_t k = 1; k <= g.order(); ++k)
    if (is_k_translatable(g, k)) ordered.push_back(k);
  out << "k-translatable as ordered: " << (ordered.empty() ? "none" : join(ordered)) << '\n';
  if (holds(g, PropertyKind::idempotent)) {
    const auto ks = detect_translatable(g);
    out << "k-translatable under some ordering: " << (ks.empty() ? "none" : join(ks)) << '\n';
  }
  return kExitOk;
}

int cmd_enumerate(std::size_t order, bool affine, const std::string& dir, std::ostream& out) {
  const EnumerationResult r =
      affine ? classify_affine(order) : enumerate_quadratical(order, {budget_from_env()});
  out << "order " << order << ": " << r.representatives.size() << " representative(s)"
      << (affine ? " (affine classification)" : "") << '\n';
  if (!r.complete) out << "PARTIAL: time budget exceeded, the list may be incomplete\n";
  if (!dir.empty()) {
    out << "index " << write_enumeration(r, dir) << '\n';
  } else {
    for (const auto& g : r.representatives) {
      serialize_table(g, out);
      out << '\n';
    }
  }
  return r.complete ? kExitOk : kExitFailure;
}

int cmd_spectrum(std::size_t n_max, std::ostream& out) {
  for (const auto& e : spectrum_scan(n_max)) {
    out << std::setw(4) << e.order << "  " << to_string(e.verdict);
    if (!e.witness.empty()) out << "  (" << e.witness << ")";
    out << '\n';
  }
  return kExitOk;
}

int cmd_catalog(const std::string& name, const std::string& out_path, std::ostream& out) {
  if (name.empty()) {
    for (const auto& e : catalog())
      out << std::left << std::setw(15) << e.name << ' ' << e.description << '\n';
    return kExitOk;
  }
  emit_table(catalog_get(name), out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct Summary {
  std::size_t order = 0;
  std::optional<std::size_t> form;
  std::vector<std::size_t> k;
  bool any_two = false, two_generated = false, self_dual = false;
};

Summary summarize(const Groupoid& g) {
  Summary s;
  s.order = g.order();
  if (const auto f = detect_form_Qn(g)) s.form = f->n;
  s.k = detect_translatable(g);
  s.any_two = generated_by_any_two(g);
  s.two_generated = is_two_generated(g);
  s.self_dual = find_isomorphism(g, dual(g)).has_value();
  return s;
}

std::string yn(bool b) { return b ? "Yes" : "No"; }

int cmd_report(const std::string& path, std::ostream& out) {
  using nlohmann::json;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read expectations file " + path);
  const json spec = json::parse(f);
  std::vector<std::string> diffs, notes;

  out << "Summary\n";
  out << std::left << std::setw(16) << "groupoid" << std::setw(7) << "order" << std::setw(7) << "form"
      << std::setw(8) << "k" << std::setw(9) << "any-two" << std::setw(8) << "2-gen"
      << "self-dual\n";
  for (const auto& row : spec.at("summary")) {
    const std::string label = row.at("row"), entry = row.at("entry");
    const Summary s = summarize(catalog_get(entry));
    const std::string form = s.form ? "n=" + std::to_string(*s.form) : "No";
    const std::string k = s.k.empty() ? "No" : join(s.k);
    out << std::setw(16) << label << std::setw(7) << s.order << std::setw(7) << form
        << std::setw(8) << k << std::setw(9) << yn(s.any_two) << std::setw(8)
        << yn(s.two_generated) << yn(s.self_dual) << '\n';

    auto expect = [&](const char* field, const json& got) {
      if (row.at(field) != got)
        diffs.push_back(label + " " + field + ": got " + got.dump() + ", expected " + row.at(field).dump());
    };
    expect("order", s.order);
    expect("form", s.form ? json(*s.form) : json(nullptr));
    expect("k", s.k);
    expect("any_two", s.any_two);
    expect("two_generated", s.two_generated);
    expect("self_dual", s.self_dual);
    if (row.contains("note")) notes.push_back(label + ": " + row.at("note").get<std::string>());
  }

  out << "\nCounts up to isomorphism\n";
  out << std::left << std::setw(7) << "order" << std::setw(12) << "engine" << "count\n";
  std::map<std::size_t, std::vector<Groupoid>> by_enumeration, by_affine;
  for (const auto& row : spec.at("counts")) {
    const std::size_t order = row.at("order");
    const std::string engine = row.at("engine");
    EnumerationResult r;
    if (engine == "enumerate") {
      r = enumerate_quadratical(order);
      by_enumeration[order] = r.representatives;
    } else if (engine == "affine") {
      r = classify_affine(order);
      by_affine[order] = r.representatives;
    } else {
      throw UsageError("unknown engine " + engine);
    }
    out << std::setw(7) << order << std::setw(12) << engine << r.representatives.size() << '\n';
    if (row.at("count") != r.representatives.size())
      diffs.push_back("order " + std::to_string(order) + " " + engine + ": got " +
                      std::to_string(r.representatives.size()) + ", expected " + row.at("count").dump());
  }
  for (std::size_t order : spec.at("cross_check").get<std::vector<std::size_t>>()) {
    if (!by_enumeration.count(order)) by_enumeration[order] = enumerate_quadratical(order).representatives;
    if (!by_affine.count(order)) by_affine[order] = classify_affine(order).representatives;
    const bool same = by_enumeration[order] == by_affine[order];
    out << "cross-check order " << order << ": " << (same ? "agree" : "DISAGREE") << '\n';
    if (!same)
      diffs.push_back("order " + std::to_string(order) +
                      ": backtracking and affine classification disagree; the affine engine is only a heuristic");
  }

  if (!notes.empty()) {
    out << "\nNotes\n";
    for (const auto& n : notes) out << "  " << n << '\n';
  }
  if (!diffs.empty()) {
    out << "\nDifferences from " << path << '\n';
    for (const auto& d : diffs) out << "  " << d << '\n';
    return kExitFailure;
  }
  out << "\nall values match " << path << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for quadratical quasigroups", "quadlab"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string file, file_b, out_path, method, base, pair, branch, trace_path, expect, name;
  std::vector<std::string> props;
  std::size_t depth = 1, form = 1, scan = 0, order = 1, n_max = 29;
  bool affine = false;
  std::string expectations = default_expectations_path();

  auto* check = app.add_subcommand("check", "Property and characterization verdicts");
  check->add_option("FILE", file, "Table file or catalog:NAME")->required();
  check->add_option("--property", props, "Property tag (repeatable)");
  check->add_option("--method", method, "Characterization of quadratical, or all");
  check->callback([&] { action = [&] { return cmd_check(file, props, method, out); }; });

  auto* dual_cmd = app.add_subcommand("dual", "Write the dual table");
  dual_cmd->add_option("FILE", file)->required();
  dual_cmd->add_option("-o,--output", out_path);
  dual_cmd->callback([&] { action = [&] { emit_table(dual(load(file)), out_path, out); return kExitOk; }; });

  auto* product = app.add_subcommand("product", "Write a direct product");
  product->add_option("FILE_A", file)->required();
  product->add_option("FILE_B", file_b)->required();
  product->add_option("-o,--output", out_path);
  product->callback([&] {
    action = [&] {
      emit_table(direct_product(load(file), load(file_b)), out_path, out);
      return kExitOk;
    };
  });

  auto* iso = app.add_subcommand("iso", "Search for an isomorphism");
  iso->add_option("FILE_A", file)->required();
  iso->add_option("FILE_B", file_b)->required();
  iso->callback([&] { action = [&] { return cmd_iso(file, file_b, out); }; });

  auto* cycles = app.add_subcommand("cycles", "4-cycles based on an element");
  cycles->add_option("FILE", file)->required();
  cycles->add_option("--base", base)->required();
  cycles->callback([&] { action = [&] { return cmd_cycles(file, base, out); }; });

  auto* form_cmd = app.add_subcommand("form", "Detect form Qn");
  form_cmd->add_option("FILE", file)->required();
  form_cmd->callback([&] { action = [&] { return cmd_form(file, out); }; });

  auto* hfamily = app.add_subcommand("hfamily", "Levels H1..Hn for a pair");
  hfamily->add_option("FILE", file)->required();
  hfamily->add_option("--pair", pair, "A,B")->required();
  hfamily->add_option("--depth", depth)->check(CLI::PositiveNumber);
  hfamily->callback([&] { action = [&] { return cmd_hfamily(file, pair, depth, out); }; });

  auto* complete = app.add_subcommand("complete", "Complete a form-Qn skeleton");
  complete->add_option("--form", form)->required()->check(CLI::Range(1, 15));
  complete->add_option("--branch", branch, "n1, n2, n3 or n4")->required();
  complete->add_option("-o,--output", out_path);
  complete->add_option("--trace", trace_path, "Write the deduction trace here");
  complete->add_option("--expect", expect, "table or contradiction");
  complete->callback([&] {
    action = [&] { return cmd_complete(form, branch, out_path, trace_path, expect, out); };
  });

  auto* translatable = app.add_subcommand("translatable", "Translatability of a table, or a scan");
  translatable->add_option("FILE", file);
  translatable->add_option("--scan", scan, "Scan every k at this order")->check(CLI::PositiveNumber);
  translatable->callback([&] { action = [&] { return cmd_translatable(file, scan, out); }; });

  auto* enumerate = app.add_subcommand("enumerate", "Quadratical quasigroups of one order");
  enumerate->add_option("--order", order)->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--affine", affine, "Use the affine classification");
  enumerate->add_option("-o,--output", out_path, "Directory for table and index files");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(order, affine, out_path, out); }; });

  auto* spectrum = app.add_subcommand("spectrum", "Existence by order");
  spectrum->add_option("--max", n_max)->required()->check(CLI::Range(1, 100));
  spectrum->callback([&] { action = [&] { return cmd_spectrum(n_max, out); }; });

  auto* catalog_cmd = app.add_subcommand("catalog", "List or print built-in tables");
  catalog_cmd->add_option("NAME", name);
  catalog_cmd->add_option("-o,--output", out_path);
  catalog_cmd->callback([&] { action = [&] { return cmd_catalog(name, out_path, out); }; });

  auto* report = app.add_subcommand("report", "Summary and count tables against expectations");
  report->add_option("--expectations", expectations);
  report->callback([&] { action = [&] { return cmd_report(expectations, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownEntry& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: expectations file: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace quadlab
