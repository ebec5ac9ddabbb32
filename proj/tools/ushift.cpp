// ushift: command-line front end.  Exit 0 on success, 1 when a check
// fails, 2 on bad input.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "ushift/crossed.hpp"
#include "ushift/dynamics.hpp"
#include "ushift/error.hpp"
#include "ushift/oracle.hpp"
#include "ushift/paction.hpp"
#include "ushift/presentation_io.hpp"
#include "ushift/topology.hpp"
#include "ushift/ultragraph.hpp"

using namespace ushift;

namespace {

std::ostream& out = std::cout;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidPresentation, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Ultragraph load(const std::string& path) { return Ultragraph(load_presentation(path)); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_validate(const std::string& path) {
  const Presentation p = load_presentation(path);
  try {
    const Ultragraph g(p);
    out << "valid\n";
    out << "vertices " << g.vertex_universe().to_string() << '\n';
    out << "edges " << g.edges().to_string() << '\n';
    for (const auto& r : g.distinct_ranges()) out << "range " << r.to_string() << '\n';
    return 0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    out << "invalid " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
}

int cmd_emitters(const std::string& path, std::optional<Index> oracle_cap) {
  const Ultragraph g = load(path);
  const auto emitters = g.minimal_infinite_emitters();
  if (emitters.empty()) out << "none\n";
  for (const auto& m : emitters) out << "emitter " << m.to_string() << '\n';
  if (!oracle_cap) return 0;
  const Universe cut = Universe::finite(*oracle_cap);
  std::vector<UPSet> truncated;
  for (const auto& m : emitters) truncated.push_back(m.rebase(cut));
  std::sort(truncated.begin(), truncated.end());
  const auto naive = oracle::naive_minimal_emitters(g.presentation(), *oracle_cap);
  for (const auto& m : naive) out << "oracle " << m.to_string() << '\n';
  const bool agree = naive == truncated;
  out << "oracle " << (agree ? "agrees" : "disagrees") << '\n';
  return agree ? 0 : 1;
}

int cmd_rfum(const std::string& path) {
  const Ultragraph g = load(path);
  if (const auto* fail = std::get_if<RfumFail>(&g.rfum())) {
    out << "Fail(e_" << fail->edge << ", residual " << fail->residual.to_string() << ")\n";
    return 1;
  }
  out << "Pass\n";
  for (const auto& d : std::get<RfumPass>(g.rfum()).decompositions) {
    out << "e_" << d.edge << ' ' << d.range.to_string() << " =";
    const char* sep = " ";
    for (const auto& m : d.minimal_emitters) {
      out << sep << m.to_string();
      sep = " + ";
    }
    for (Index v : d.vertices) {
      out << sep << "fin{" << v << '}';
      sep = " + ";
    }
    out << '\n';
  }
  return 0;
}

int cmd_lattice(const std::string& path) {
  const Ultragraph g = load(path);
  for (const auto& s : g.range_lattice()) out << s.to_string() << '\n';
  return 0;
}

MorphismTable phi_table(const Ultragraph& g, const Ultragraph& h, const GraphConversion& c, Index prefix,
                        Index cycle) {
  MorphismTable table{&g, &h, {}, true};
  for (const auto& x : oracle::enumerate_points(g, prefix, cycle)) table.entries.emplace_back(x, c.phi(g, h, x));
  return table;
}

void print_morphism_report(const MorphismReport& r) {
  out << "checked " << r.checked << '\n';
  out << "commutes " << yes_no(r.commutes) << '\n';
  out << "length " << yes_no(r.preserves_length) << '\n';
  out << "injective " << yes_no(r.injective) << '\n';
  out << "prefix " << yes_no(r.prefix_rule) << '\n';
  for (const auto& f : r.failures) out << "failure " << f << '\n';
}

int cmd_tograph(const std::string& path, const std::string& table_path, Index depth, Index check_length) {
  const Ultragraph g = load(path);
  const GraphConversion c = to_graph(g);
  for (std::size_t k = 0; k < c.labels.size(); ++k) {
    out << "# f" << k + 1 << " = (e" << c.labels[k].first << ", v" << c.labels[k].second << ")\n";
  }
  out << write_presentation(c.graph);
  const Ultragraph h(c.graph);
  int status = 0;
  if (check_length > 0) {
    const auto b = check_path_bijection(g, h, c, check_length);
    out << "# bijection up to length " << check_length << ' ' << (b.ok ? "ok" : "FAILED " + b.failure) << '\n';
    const auto r = morphism_check(phi_table(g, h, c, depth, 2), depth);
    out << "# morphism " << (r.ok(true) ? "ok" : "FAILED") << '\n';
    if (!b.ok || !r.ok(true)) status = 1;
  }
  if (!table_path.empty()) {
    std::ofstream file(table_path);
    file << write_morphism_table(phi_table(g, h, c, depth, 2));
  }
  return status;
}

int cmd_checkmorphism(const std::string& source, const std::string& target, const std::string& table_path,
                      Index depth) {
  const Ultragraph g = load(source);
  const Ultragraph h = load(target);
  const MorphismTable table = parse_morphism_table(g, h, read_file(table_path));
  const MorphismReport r = morphism_check(table, depth);
  print_morphism_report(r);
  return r.ok(table.length_preserving) ? 0 : 1;
}

struct AxiomOptions {
  Index prefix = 3;
  Index cycle = 2;
  Index cap = 6;
};

int cmd_axioms(const std::string& path, const std::string& t, const std::string& h, const AxiomOptions& o) {
  const Ultragraph g = load(path);
  const PartialAction pa(g);
  const auto sample = oracle::enumerate_points(g, o.prefix, o.cycle, o.cap);
  const auto r = pa.axioms_check(parse_word(t), parse_word(h), sample);
  out << "sampled " << r.sampled << '\n';
  out << "checked " << r.checked << '\n';
  out << "composition " << (r.composition_ok ? "ok" : "FAILED") << '\n';
  out << "containment " << (r.containment_ok ? "ok" : "FAILED") << '\n';
  for (const auto& f : r.failures) out << "failure " << f << '\n';
  return r.ok() ? 0 : 1;
}

struct RelationsCli {
  Index vrange = 20;
  Index edges = 20;
  std::vector<std::string> sets;
  std::optional<Index> oracle_prefix;
};

int cmd_relations(const std::string& path, const RelationsCli& o) {
  const Ultragraph g = load(path);
  const PartialAction pa(g);
  RelationsOptions options;
  options.vrange = o.vrange;
  options.edge_cap = o.edges;
  for (const auto& s : o.sets) options.sets.push_back(parse_set(s, g.vertex_universe()));
  const auto report = relations_report(pa, options);
  std::vector<Point> points;
  if (o.oracle_prefix) points = oracle::enumerate_points(g, *o.oracle_prefix, 2, 6);
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    bool pass = c.pass;
    std::string note;
    if (o.oracle_prefix) {
      const auto why = oracle::cross_check(pa, c.lhs, c.rhs, points);
      if (why) {
        pass = false;
        note = " (oracle: " + *why + ")";
      }
    }
    failed += pass ? 0 : 1;
    out << (pass ? "pass " : "FAIL ") << c.relation;
    if (!c.instance.empty()) out << ' ' << c.instance;
    out << note << '\n';
  }
  out << "relations " << report.checks.size() << " checked, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_separate(const std::string& path, const std::string& xs, const std::string& ys) {
  const Ultragraph g = load(path);
  const Point x = parse_point(g, xs);
  const Point y = parse_point(g, ys);
  const auto [u, v] = separate(g, x, y);
  const bool ok = u.contains(g, x) && v.contains(g, y) &&
                  Clopen::from_cylinder(g, u).intersect(Clopen::from_cylinder(g, v)).is_empty();
  out << "left " << u.to_string() << '\n';
  out << "right " << v.to_string() << '\n';
  out << "verified " << yes_no(ok) << '\n';
  return ok ? 0 : 1;
}

// `{n}`, `{n+3}`, `{2*n-1}` in a rule template.
std::string instantiate(const std::string& pattern, Index n) {
  static const std::regex slot(R"(\{\s*(?:(\d+)\s*\*\s*)?n\s*(?:([+-])\s*(\d+))?\s*\})");
  std::string result;
  auto begin = std::sregex_iterator(pattern.begin(), pattern.end(), slot);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    Index value = n * (m[1].matched ? std::stoll(m[1].str()) : 1);
    if (m[2].matched) value += (m[2].str() == "+" ? 1 : -1) * std::stoll(m[3].str());
    result += pattern.substr(last, static_cast<std::size_t>(m.position(0)) - last);
    result += std::to_string(value);
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  return result + pattern.substr(last);
}

int cmd_converge(const std::string& path, const std::string& seqfile, const std::string& target,
                 std::optional<Index> horizon_flag) {
  const Ultragraph g = load(path);
  const Point x = parse_point(g, target);
  std::vector<Point> listed;
  std::optional<std::pair<std::string, int>> rule;
  std::istringstream lines(read_file(seqfile));
  std::string line;
  for (int number = 1; std::getline(lines, line); ++number) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(start, end - start + 1);
    if (body.rfind("point ", 0) == 0) {
      listed.push_back(parse_point(g, body.substr(6), number, static_cast<int>(start) + 7));
    } else if (body.rfind("rule ", 0) == 0) {
      if (rule) throw ParseError("more than one rule", number, static_cast<int>(start) + 1);
      rule = {body.substr(5), number};
    } else {
      throw ParseError("expected 'point <literal>' or 'rule <template>'", number, static_cast<int>(start) + 1);
    }
  }
  if (rule && !listed.empty()) throw ParseError("mix of 'rule' and 'point' lines", rule->second, 1);
  if (!rule && listed.empty()) throw ParseError("empty sequence", 1, 1);
  std::function<Point(Index)> sequence;
  Index horizon = 0;
  if (rule) {
    const auto [pattern, number] = *rule;
    horizon = horizon_flag.value_or(100);
    sequence = [&g, pattern, number](Index n) { return parse_point(g, instantiate(pattern, n), number, 1); };
  } else {
    horizon = horizon_flag.value_or(static_cast<Index>(listed.size()));
    if (horizon > static_cast<Index>(listed.size())) throw ParseError("horizon exceeds the listed points", 1, 1);
    sequence = [&listed](Index n) { return listed[static_cast<std::size_t>(n - 1)]; };
  }
  const auto report = converges(g, sequence, x, horizon);
  out << "verdict " << to_string(report.verdict) << '\n';
  out << "horizon " << report.horizon << '\n';
  for (const auto& t : report.tests) out << "test " << t.label << " last-violation " << t.last_violation << '\n';
  if (report.failing) out << "failing " << report.tests[*report.failing].label << '\n';
  return report.verdict == ConvergenceReport::Verdict::Certificate ? 0 : 1;
}

int cmd_clopen(const std::string& path, const std::vector<std::string>& items, bool complement,
               const std::vector<std::string>& probes) {
  const Ultragraph g = load(path);
  if (items.empty() || items.size() % 2 == 0) throw ParseError("expected <cyl> [<op> <cyl>]...", 1, 1);
  Clopen s = Clopen::from_cylinder(g, parse_cylinder(g, items[0]));
  for (std::size_t i = 1; i + 1 < items.size(); i += 2) {
    const Clopen t = Clopen::from_cylinder(g, parse_cylinder(g, items[i + 1]));
    if (items[i] == "union") {
      s = s.unite(t);
    } else if (items[i] == "intersect") {
      s = s.intersect(t);
    } else if (items[i] == "minus") {
      s = s.minus(t);
    } else {
      throw ParseError("unknown operation '" + items[i] + "'", 1, 1);
    }
  }
  if (complement) s = s.complement();
  out << s.to_string() << '\n';
  for (const auto& p : probes) out << "contains " << p << ' ' << yes_no(s.contains(parse_point(g, p))) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultragraph edge shift spaces"};
  app.require_subcommand(1);
  std::function<int()> run;

  std::string pres, pres2, a1, a2, table;
  Index depth = 3;

  auto* validate = app.add_subcommand("validate", "check a presentation");
  validate->add_option("presentation", pres)->required();
  validate->callback([&] { run = [&] { return cmd_validate(pres); }; });

  std::optional<Index> oracle_cap;
  auto* emitters = app.add_subcommand("emitters", "minimal infinite emitters");
  emitters->add_option("presentation", pres)->required();
  emitters->add_option("--oracle", oracle_cap, "cross-check by brute force up to this index");
  emitters->callback([&] { run = [&] { return cmd_emitters(pres, oracle_cap); }; });

  auto* rfum = app.add_subcommand("rfum", "condition RFUM");
  rfum->add_option("presentation", pres)->required();
  rfum->callback([&] { run = [&] { return cmd_rfum(pres); }; });

  auto* lattice = app.add_subcommand("lattice", "nonempty intersections of ranges");
  lattice->add_option("presentation", pres)->required();
  lattice->callback([&] { run = [&] { return cmd_lattice(pres); }; });

  auto* shift_cmd = app.add_subcommand("shift", "apply the shift map");
  shift_cmd->add_option("presentation", pres)->required();
  shift_cmd->add_option("point", a1)->required();
  shift_cmd->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      out << shift(parse_point(g, a1)).to_string() << '\n';
      return 0;
    };
  });

  auto* window = app.add_subcommand("window", "neighbourhood on which the shift is injective");
  window->add_option("presentation", pres)->required();
  window->add_option("point", a1)->required();
  window->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      out << local_window(g, parse_point(g, a1)).to_string() << '\n';
      return 0;
    };
  });

  Index check_length = 0;
  auto* tograph = app.add_subcommand("tograph", "conjugate graph of a finite ultragraph");
  tograph->add_option("presentation", pres)->required();
  tograph->add_option("--table", table, "write the conjugacy on enumerated points to this file");
  tograph->add_option("--depth", depth, "prefix length of enumerated points")->capture_default_str();
  tograph->add_option("--check", check_length, "verify the path bijection up to this length");
  tograph->callback([&] { run = [&] { return cmd_tograph(pres, table, depth, check_length); }; });

  auto* checkmorphism = app.add_subcommand("checkmorphism", "check a tabulated shift morphism");
  checkmorphism->add_option("source", pres)->required();
  checkmorphism->add_option("target", pres2)->required();
  checkmorphism->add_option("table", table)->required();
  checkmorphism->add_option("--depth", depth, "shift iterations checked")->capture_default_str();
  checkmorphism->callback([&] { run = [&] { return cmd_checkmorphism(pres, pres2, table, depth); }; });

  auto* domain = app.add_subcommand("domain", "the domain X_c of a word");
  domain->add_option("presentation", pres)->required();
  domain->add_option("word", a1)->required();
  domain->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      out << PartialAction(g).domain(parse_word(a1)).to_string() << '\n';
      return 0;
    };
  });

  auto* act = app.add_subcommand("act", "apply theta_c to a point");
  act->add_option("presentation", pres)->required();
  act->add_option("word", a1)->required();
  act->add_option("point", a2)->required();
  act->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      out << PartialAction(g).act(parse_word(a1), parse_point(g, a2)).to_string() << '\n';
      return 0;
    };
  });

  AxiomOptions axiom_options;
  auto* axioms = app.add_subcommand("axioms", "partial action axioms for a pair of words");
  axioms->add_option("presentation", pres)->required();
  axioms->add_option("t_word", a1)->required();
  axioms->add_option("h_word", a2)->required();
  axioms->add_option("--prefix", axiom_options.prefix)->capture_default_str();
  axioms->add_option("--cycle", axiom_options.cycle)->capture_default_str();
  axioms->add_option("--cap", axiom_options.cap)->capture_default_str();
  axioms->callback([&] { run = [&] { return cmd_axioms(pres, a1, a2, axiom_options); }; });

  RelationsCli relations_options;
  auto* relations = app.add_subcommand("relations", "ultragraph algebra relations for the generator images");
  relations->add_option("presentation", pres)->required();
  relations->add_option("--vrange", relations_options.vrange, "vertices checked for the sum relation")
      ->capture_default_str();
  relations->add_option("--edges", relations_options.edges, "largest edge checked")->capture_default_str();
  relations->add_option("--set", relations_options.sets, "G0 set for the projection relations (repeatable)");
  relations->add_option("--oracle", relations_options.oracle_prefix, "pointwise cross-check up to this prefix");
  relations->callback([&] { run = [&] { return cmd_relations(pres, relations_options); }; });

  auto* separate_cmd = app.add_subcommand("separate", "disjoint neighbourhoods of two points");
  separate_cmd->add_option("presentation", pres)->required();
  separate_cmd->add_option("x", a1)->required();
  separate_cmd->add_option("y", a2)->required();
  separate_cmd->callback([&] { run = [&] { return cmd_separate(pres, a1, a2); }; });

  std::optional<Index> horizon;
  auto* converge = app.add_subcommand("converge", "convergence criterion for a sequence");
  converge->add_option("presentation", pres)->required();
  converge->add_option("seqfile", table)->required();
  converge->add_option("point", a1)->required();
  converge->add_option("--horizon", horizon);
  converge->callback([&] { run = [&] { return cmd_converge(pres, table, a1, horizon); }; });

  auto* cyl = app.add_subcommand("cyl", "canonical cylinder and its clopen set");
  cyl->add_option("presentation", pres)->required();
  cyl->add_option("cylinder", a1)->required();
  cyl->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      const Cylinder c = parse_cylinder(g, a1);
      out << "cylinder " << c.to_string() << '\n';
      out << "clopen " << Clopen::from_cylinder(g, c).to_string() << '\n';
      return 0;
    };
  });

  std::vector<std::string> items, probes;
  bool complement = false;
  auto* clopen = app.add_subcommand("clopen", "boolean combination of cylinders, left to right");
  clopen->add_option("presentation", pres)->required();
  clopen->add_option("items", items, "<cyl> [union|intersect|minus <cyl>]...")->required();
  clopen->add_flag("--complement", complement);
  clopen->add_option("--contains", probes, "point to test (repeatable)");
  clopen->callback([&] { run = [&] { return cmd_clopen(pres, items, complement, probes); }; });

  auto* mul_cmd = app.add_subcommand("mul", "product of two generator expressions");
  mul_cmd->add_option("presentation", pres)->required();
  mul_cmd->add_option("x", a1)->required();
  mul_cmd->add_option("y", a2)->required();
  mul_cmd->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      const PartialAction pa(g);
      out << mul(evaluate(pa, parse_gen_expr(g, a1)), evaluate(pa, parse_gen_expr(g, a2))).to_string() << '\n';
      return 0;
    };
  });

  auto* star_cmd = app.add_subcommand("star", "adjoint of a generator expression");
  star_cmd->add_option("presentation", pres)->required();
  star_cmd->add_option("x", a1)->required();
  star_cmd->callback([&] {
    run = [&] {
      const Ultragraph g = load(pres);
      const PartialAction pa(g);
      out << star(evaluate(pa, parse_gen_expr(g, a1))).to_string() << '\n';
      return 0;
    };
  });

  auto* degree_cmd = app.add_subcommand("degree", "gauge degree of a word");
  degree_cmd->add_option("word", a1)->required();
  degree_cmd->callback([&] {
    run = [&] {
      out << degree(parse_word(a1)) << '\n';
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.line() << ':' << e.column() << ": " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
