#include "lpagrade/cli.hpp"

#include "lpagrade/error.hpp"
#include "lpagrade/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace lpagrade {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t max_cycles_from_env() {
  const char* raw = std::getenv("LPA_GRADE_MAX_CYCLES");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxCycles;
  const std::string text = raw;
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 18 ||
      std::stoull(text) == 0)
    throw ParseError(0, "LPA_GRADE_MAX_CYCLES must be a positive integer, got '" + text + "'");
  return static_cast<std::size_t>(std::stoull(text));
}

struct Options {
  std::string input;
  bool json = false;
  bool strict = false;
  bool canonical = false;
  std::string check;
  std::string element;
  std::string element2;
  std::optional<std::int64_t> depth;
  std::optional<std::size_t> width_cap;
  std::optional<std::string> n_max;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string cycle_text(const Cycle& c) {
  std::string out = c.base + " [";
  for (std::size_t i = 0; i < c.edges.size(); ++i) out += (i ? " " : "") + c.edges[i];
  return out + "]";
}

std::string shifts_text(const ShiftMultiset& shifts) {
  std::string out = "(";
  bool first = true;
  for (const auto& [shift, count] : shifts) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(shift);
    if (count != 1) out += " x" + count.str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

int classify(const Graph& g, std::size_t max_cycles, ReportDocument& doc, std::ostream& text) {
  const ClassificationReport r = classify_lpa(g, max_cycles);
  doc.payload = to_json(r);
  text << "strongly graded      " << yes_no(r.strongly_graded) << '\n'
       << "crossed product      " << yes_no(r.crossed_product) << '\n'
       << "skew group ring      " << yes_no(r.skew_group_ring) << '\n'
       << "group ring           " << yes_no(r.group_ring) << '\n'
       << "graded unit-regular  " << yes_no(r.graded_unit_regular) << '\n';
  if (!r.sink_list.empty()) {
    text << "sinks:";
    for (const auto& s : r.sink_list) text << ' ' << s;
    text << '\n';
  }
  if (r.exit_cycle) text << "cycle with exit: " << cycle_text(*r.exit_cycle) << '\n';
  if (r.edl)
    for (const EdlEntry& e : r.edl->entries) {
      text << "EDL " << cycle_text(e.cycle) << " residues mod " << e.period << ':';
      for (const BigInt& c : e.residue_counts) text << ' ' << c;
      text << '\n';
    }
  return kExitOk;
}

int matricial(const Graph& g, std::size_t max_cycles, bool canonical, ReportDocument& doc,
              std::ostream& text) {
  GradedMatricialAlgebra a = matricial_representation(g, max_cycles);
  if (canonical) a = canonicalize(a);
  doc.payload = to_json(a);
  for (const SinkBlock& b : a.sink_blocks)
    text << "M_" << b.size() << "(K)" << shifts_text(b.shifts) << "   sink " << b.sink << '\n';
  for (const CycleBlock& b : a.cycle_blocks)
    text << "M_" << b.size() << "(K[x^" << b.period << ",x^-" << b.period << "])"
         << shifts_text(b.shifts) << "   cycle " << cycle_text(b.cycle) << '\n';
  return kExitOk;
}

int ktheory(const Graph& g, std::size_t max_cycles, ReportDocument& doc, std::ostream& text) {
  const KTheoryPresentation k = k_theory_presentation(matricial_representation(g, max_cycles));
  doc.payload = to_json(k);
  for (const KComponent& c : k.components) {
    if (const auto* f = std::get_if<FreeComponent>(&c)) {
      text << "Z[x,x^-1]  unit";
      for (const auto& [shift, count] : f->unit) text << ' ' << count << "*x^" << shift;
    } else {
      const auto& z = std::get<CyclicComponent>(c);
      text << "Z[x]/(x^" << z.period << "=1)  unit";
      for (std::size_t j = 0; j < z.unit.size(); ++j) text << ' ' << z.unit[j] << "*x^" << j;
    }
    text << '\n';
  }
  return kExitOk;
}

int monoid(const Graph& g, std::size_t max_cycles, const Options& opt, ReportDocument& doc,
           std::ostream& text) {
  static const std::set<std::string> kChecks = {"periodic", "equiv", "leq", "strong-unit"};
  if (!kChecks.contains(opt.check))
    throw ParseError(0, "--check must be one of periodic, equiv, leq, strong-unit");
  if (opt.element.empty()) throw ParseError(0, "--element is required");

  Bounds bounds = default_bounds(g, max_cycles);
  if (opt.depth) {
    if (*opt.depth < 0) throw ParseError(0, "--depth must be nonnegative");
    bounds.depth = *opt.depth;
  }
  if (opt.width_cap) bounds.width_cap = *opt.width_cap;
  doc.bounds_used["depth"] = bounds.depth;
  doc.bounds_used["width_cap"] = bounds.width_cap;

  std::optional<BigInt> n_max;
  if (opt.n_max) {
    const std::string& s = *opt.n_max;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || BigInt(s) == 0)
      throw ParseError(0, "--nmax must be a positive integer");
    n_max = BigInt(s);
  }

  const MonoidElement a = parse_element(g, opt.element);
  Json payload{{"check", opt.check}, {"element", format_element(g, a)}};
  SearchResult result;
  bool unknown_is_final = false;

  if (opt.check == "periodic") {
    if (a.empty()) throw ParseError(0, "periodicity needs a nonzero element");
    const std::int64_t n = n_max ? to_int64(*n_max).value_or(INT64_MAX)
                                 : default_n_max(g, max_cycles);
    doc.bounds_used["n_max"] = n;
    const bool structural = is_periodic_graph(g, a, max_cycles);
    payload["graph_periodic"] = structural;
    result = is_periodic_oracle(g, a, n, bounds);
    unknown_is_final = true;  // the structural test already decides
    text << "periodic (graph test)  " << yes_no(structural) << '\n';
  } else if (opt.check == "strong-unit") {
    if (a.empty()) throw ParseError(0, "the strong order-unit check needs a nonzero element");
    const bool sink_free = sinks(g).empty();
    std::optional<BigInt> bound;
    if (sink_free) {
      bound = strong_unit_bound(g, a, max_cycles);
      payload["bound"] = to_json(*bound);
    }
    const BigInt n = n_max ? *n_max : bound ? *bound : BigInt(1000);
    doc.bounds_used["n_max"] = to_json(n);
    result = strong_order_unit_bounded(g, a, n, bounds);
    if (bound) text << "bound N <= " << *bound << '\n';
  } else {
    if (opt.element2.empty()) throw ParseError(0, "--element2 is required for " + opt.check);
    const MonoidElement b = parse_element(g, opt.element2);
    payload["element2"] = format_element(g, b);
    result = opt.check == "equiv" ? equiv_bounded(g, a, b, bounds) : leq_bounded(g, a, b, bounds);
  }

  payload["result"] = to_json(g, result);
  doc.payload = std::move(payload);
  if (const auto* p = std::get_if<Proved>(&result)) {
    text << "proved";
    if (p->certificate.period) text << ", period " << *p->certificate.period;
    if (p->certificate.multiple) text << ", N = " << *p->certificate.multiple;
    text << "\ncommon reduct: " << format_element(g, p->certificate.left_reduct) << '\n';
    return kExitOk;
  }
  text << "unknown: " << std::get<Unknown>(result).reason << '\n';
  return unknown_is_final ? kExitOk : kExitResourceLimit;
}

int matrix_ring(const std::string& input, ReportDocument& doc, std::ostream& text) {
  Json j;
  try {
    j = Json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  const ShiftedMatrixRing ring = matrix_ring_from_json(j);
  const MatrixRingClassification c = classify_matrix_ring(ring);
  doc.payload = to_json(c);
  text << "strongly graded  " << yes_no(c.strongly_graded) << '\n'
       << "crossed product  " << yes_no(c.crossed_product) << '\n'
       << "skew group ring  " << yes_no(c.skew_group_ring) << '\n'
       << "group ring       " << yes_no(c.group_ring) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded structure of Leavitt path algebras of finite graphs", "lpa-grade"};
  app.require_subcommand(1);
  Options opt;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "input file, '-' for stdin")->required();
    sub->add_flag("--json", opt.json, "emit the JSON report");
  };
  auto add_graph = [&](CLI::App* sub) {
    add_input(sub);
    sub->add_flag("--strict", opt.strict, "reject edges with undeclared vertices");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "place L(E) in the graded hierarchy");
  add_graph(classify_cmd);
  CLI::App* matricial_cmd = app.add_subcommand("matricial", "graded matricial blocks of a no-exit graph");
  add_graph(matricial_cmd);
  matricial_cmd->add_flag("--canonical", opt.canonical, "normalize shifts and block order");
  CLI::App* ktheory_cmd = app.add_subcommand("ktheory", "graded K_0 with order-unit");
  add_graph(ktheory_cmd);
  CLI::App* monoid_cmd = app.add_subcommand("monoid", "bounded talented-monoid checks");
  add_graph(monoid_cmd);
  monoid_cmd->add_option("--check", opt.check, "periodic, equiv, leq or strong-unit")->required();
  monoid_cmd->add_option("--element", opt.element, "element such as v@0+2*w@1");
  monoid_cmd->add_option("--element2", opt.element2, "second operand of equiv/leq");
  monoid_cmd->add_option("--depth", opt.depth, "degree window for rewriting");
  monoid_cmd->add_option("--width-cap", opt.width_cap, "cap on forward-closure size");
  monoid_cmd->add_option("--nmax", opt.n_max, "largest period or multiple to try");
  CLI::App* ring_cmd = app.add_subcommand("matrix-ring", "classify a shifted matrix ring given as JSON");
  add_input(ring_cmd);
  CLI::App* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of the graph");
  add_graph(dot_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  ReportDocument doc;
  doc.subcommand = sub->get_name();
  std::ostringstream text;
  int status = kExitOk;
  try {
    const std::size_t max_cycles = max_cycles_from_env();
    const std::string input = read_input(opt.input);
    doc.input_digest = content_digest(input);

    if (sub == ring_cmd) {
      status = matrix_ring(input, doc, text);
    } else {
      doc.bounds_used["max_cycles"] = max_cycles;
      const Graph g = parse_graph(input, ParseOptions{opt.strict});
      if (sub == classify_cmd) {
        status = classify(g, max_cycles, doc, text);
      } else if (sub == matricial_cmd) {
        status = matricial(g, max_cycles, opt.canonical, doc, text);
      } else if (sub == ktheory_cmd) {
        status = ktheory(g, max_cycles, doc, text);
      } else if (sub == monoid_cmd) {
        status = monoid(g, max_cycles, opt, doc, text);
      } else if (sub == dot_cmd) {
        const std::string dot = emit_dot(g);
        doc.payload = Json{{"dot", dot}};
        text << dot;
      }
    }
  } catch (const ResourceLimitError& e) {
    err << "lpa-grade: resource limit: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const Error& e) {
    err << "lpa-grade: " << e.what() << '\n';
    return kExitInputError;
  }

  if (opt.json)
    out << to_json(doc).dump(2) << '\n';
  else
    out << text.str();
  return status;
}

}  // namespace lpagrade
