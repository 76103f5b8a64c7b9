#include "tpack/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpack/arcs.hpp"
#include "tpack/dot.hpp"
#include "tpack/errors.hpp"
#include "tpack/json_io.hpp"
#include "tpack/lfgraph.hpp"
#include "tpack/periodic.hpp"
#include "tpack/rays.hpp"
#include "tpack/tpath.hpp"
#include "tpack/zoo.hpp"

namespace tpack {

namespace {

struct CommonOpts {
  std::string zoo_name;
  std::vector<long> params;
  std::string input_file;
  std::string terminals;
  unsigned radius = 8;
  unsigned depth = 24;
  unsigned rmax = 32;
  std::string dot_file;
  std::string out_file;
  bool via_inner_eulerian = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--zoo", o.zoo_name, "zoo entry name");
  cmd->add_option("--param", o.params, "zoo parameter (repeatable)");
  cmd->add_option("--input", o.input_file, "graph or presentation JSON file");
  cmd->add_option("--terminals", o.terminals, "terminal spec: 'leaves', 'ends', or id list");
  cmd->add_option("--radius", o.radius, "window radius");
  cmd->add_option("--depth", o.depth, "ray materialization depth");
  cmd->add_option("--rmax", o.rmax, "stabilization radius budget");
  cmd->add_option("--dot", o.dot_file, "write a DOT rendering here");
  cmd->add_option("--out", o.out_file, "write the JSON result here");
  cmd->add_flag("--via-inner-eulerian", o.via_inner_eulerian,
                "verify the premise via inner-Eulerian-with-ends only");
}

struct Input {
  std::optional<MultiGraph> graph;            // finite inputs
  std::optional<LFGraphPresentation> pres;    // always available
  std::optional<PeriodicDesc> periodic;       // infinite inputs
  std::string default_terminals;
};

Input load_input(const CommonOpts& o) {
  if (o.zoo_name.empty() == o.input_file.empty()) {
    throw Error(ErrorKind::Domain, "exactly one of --zoo and --input is required");
  }
  Input in;
  if (!o.zoo_name.empty()) {
    const ZooEntry& entry = zoo_entry(o.zoo_name);
    in.default_terminals = entry.default_terminals;
    if (entry.finite) {
      in.graph = zoo_graph(o.zoo_name, o.params);
      in.pres = presentation_from_graph(*in.graph);
    } else {
      in.periodic = zoo_periodic(o.zoo_name, o.params);
      in.pres = zoo_presentation(o.zoo_name, o.params);
    }
    return in;
  }
  std::ifstream f(o.input_file);
  if (!f) throw Error(ErrorKind::Domain, "cannot open " + o.input_file);
  nlohmann::json doc;
  try {
    f >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Domain, std::string("invalid JSON: ") + ex.what());
  }
  if (doc.is_object() && doc.value("kind", "") == "periodic") {
    in.periodic = periodic_from_json(doc);
    in.pres = presentation_from_periodic(*in.periodic);
  } else {
    in.graph = graph_from_json(doc);
    in.pres = presentation_from_graph(*in.graph);
  }
  return in;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TerminalSpec parse_terminals(const Input& in, const CommonOpts& o) {
  std::string spec = o.terminals.empty() ? in.default_terminals : o.terminals;
  if (spec.empty()) {
    throw Error(ErrorKind::Domain, "--terminals is required for this input");
  }
  TerminalSpec t;
  const LFGraphPresentation& p = *in.pres;
  if (spec == "ends") {
    for (const auto& e : p.ends()) t.end_terminals.push_back(e.id);
    if (t.end_terminals.empty()) {
      throw Error(ErrorKind::Domain, "input declares no ends");
    }
    return t;
  }
  if (spec == "leaves") {
    if (in.graph) {
      for (const auto& v : in.graph->vertices()) {
        if (in.graph->degree(v) == 1) t.vertex_terminals.insert(v);
      }
    } else {
      TruncatedGraph W = window(p, 8);
      for (const auto& v : W.ball) {
        if (p.adjacency(v).size() == 1) t.vertex_terminals.insert(v);
      }
    }
    if (t.vertex_terminals.empty()) {
      throw Error(ErrorKind::Domain, "input has no leaves");
    }
    return t;
  }
  for (const std::string& token : split_commas(spec)) {
    if (token.rfind("end:", 0) == 0) {
      EndId e = token.substr(4);
      p.end(e);
      t.end_terminals.push_back(e);
    } else if (token.rfind("family:", 0) == 0) {
      std::string f = token.substr(7);
      p.family(f);
      t.families.push_back(f);
    } else if (token == "ends") {
      for (const auto& e : p.ends()) t.end_terminals.push_back(e.id);
    } else if (p.has_end(token)) {
      t.end_terminals.push_back(token);
    } else if (in.graph) {
      in.graph->vertex_index(token);  // throws on unknown
      t.vertex_terminals.insert(token);
    } else {
      if (p.adjacency(token).empty()) {
        throw Error(ErrorKind::Domain, "unknown terminal: " + token);
      }
      t.vertex_terminals.insert(token);
    }
  }
  return t;
}

void emit(const nlohmann::json& doc, const CommonOpts& o, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (!o.out_file.empty()) {
    std::ofstream f(o.out_file);
    if (!f) throw Error(ErrorKind::Domain, "cannot write " + o.out_file);
    f << text;
  } else {
    out << text;
  }
}

void emit_dot(const std::string& text, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Domain, "cannot write " + path);
  f << text;
}

std::string verdict_name(DiscreteVerdict::Status s) {
  switch (s) {
    case DiscreteVerdict::Status::Discrete:
      return "discrete";
    case DiscreteVerdict::Status::NotDiscrete:
      return "not_discrete";
    default:
      return "unknown";
  }
}

int cmd_pack(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  if (!in.graph) {
    throw Error(ErrorKind::Domain, "pack needs a finite graph input");
  }
  TerminalSpec spec = parse_terminals(in, o);
  if (!spec.end_terminals.empty() || !spec.families.empty()) {
    throw Error(ErrorKind::Domain, "pack takes vertex terminals only; use arcs for ends");
  }
  TerminalSet t{spec.vertex_terminals};
  auto [paths, cert] = pack_tpaths(*in.graph, t);
  auto report = verify_packing(*in.graph, t, paths, cert);
  if (!report.ok()) {
    throw Error(ErrorKind::Internal, "packing failed self-verification: " +
                                         report.violations.front());
  }
  emit(packing_to_json(paths, cert), o, out);
  if (!o.dot_file.empty()) emit_dot(dot_render(*in.graph), o.dot_file);
  return 0;
}

int cmd_arcs(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  TerminalSpec spec = parse_terminals(in, o);
  PipelineOptions popts;
  popts.r_max = o.rmax;
  popts.via_inner_eulerian = o.via_inner_eulerian;
  auto [arcs, state] = assemble_arcs(*in.pres, spec, o.radius, o.depth, popts);
  auto report = verify_arc_system(*in.pres, spec, arcs, state, o.radius);
  if (!report.ok()) {
    throw Error(ErrorKind::Internal, "arc system failed self-verification: " +
                                         report.violations.front());
  }
  emit(arc_system_to_json(arcs, state), o, out);
  if (!o.dot_file.empty()) {
    emit_dot(dot_render_window(state.final_window, state.stages, &arcs), o.dot_file);
  }
  return 0;
}

int cmd_lambda(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  TerminalSpec spec = parse_terminals(in, o);
  nlohmann::json doc;
  if (in.graph && spec.end_terminals.empty() && spec.families.empty()) {
    TerminalSet t{spec.vertex_terminals};
    doc["lambda"] = lambda_profile(*in.graph, t);
  } else {
    std::vector<TerminalRef> refs;
    for (const auto& v : spec.vertex_terminals) refs.push_back(TerminalRef::of_vertex(v));
    for (const auto& e : spec.end_terminals) refs.push_back(TerminalRef::of_end(e));
    nlohmann::json lam = nlohmann::json::object();
    nlohmann::json radii = nlohmann::json::object();
    for (const TerminalRef& ref : refs) {
      std::vector<TerminalRef> rest;
      for (const TerminalRef& other : refs) {
        if (other.token() != ref.token()) rest.push_back(other);
      }
      LambdaEndResult lr = lambda_end(*in.pres, ref, rest, o.rmax, spec.families);
      lam[ref.token()] = lr.value;
      radii[ref.token()] = lr.radius;
    }
    doc["lambda"] = lam;
    doc["stabilization_radius"] = radii;
  }
  emit(doc, o, out);
  return 0;
}

int cmd_mu(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  TerminalSpec spec = parse_terminals(in, o);
  std::vector<TerminalRef> refs;
  for (const auto& v : spec.vertex_terminals) refs.push_back(TerminalRef::of_vertex(v));
  for (const auto& e : spec.end_terminals) refs.push_back(TerminalRef::of_end(e));
  nlohmann::json mu = nlohmann::json::object();
  nlohmann::json stab = nlohmann::json::object();
  for (const TerminalRef& ref : refs) {
    TerminalSpec rest;
    for (const auto& v : spec.vertex_terminals) {
      if (!ref.is_end && v == ref.vertex) continue;
      rest.vertex_terminals.insert(v);
    }
    for (const auto& e : spec.end_terminals) {
      if (ref.is_end && e == ref.end) continue;
      rest.end_terminals.push_back(e);
    }
    rest.families = spec.families;
    MuResult m = mu_estimate(*in.pres, ref, rest, o.radius);
    mu[ref.token()] = m.value;
    stab[ref.token()] = m.stabilized;
  }
  nlohmann::json doc;
  doc["mu"] = mu;
  doc["stabilized"] = stab;
  doc["radius"] = o.radius;
  emit(doc, o, out);
  return 0;
}

int cmd_check(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  TerminalSpec spec = parse_terminals(in, o);
  nlohmann::json doc;
  bool any_unknown = false;

  auto verdicts = check_discrete(*in.pres, spec, o.rmax);
  nlohmann::json disc = nlohmann::json::object();
  for (const auto& [token, v] : verdicts) {
    nlohmann::json vj;
    vj["status"] = verdict_name(v.status);
    if (v.status == DiscreteVerdict::Status::Discrete && v.radius > 0) {
      vj["radius"] = v.radius;
    }
    if (!v.evidence.empty()) vj["evidence"] = v.evidence;
    if (v.status == DiscreteVerdict::Status::Unknown) any_unknown = true;
    disc[token] = std::move(vj);
  }
  doc["discrete"] = disc;

  if (o.via_inner_eulerian) {
    // inner-Eulerian-with-ends is sufficient for the premise
    EndsVerdict route = is_inner_eulerian_with_ends(*in.pres, spec, o.rmax);
    nlohmann::json cj;
    cj["via"] = "inner_eulerian_with_ends";
    cj["certified"] = route.status == EndsVerdict::Status::True;
    if (route.status != EndsVerdict::Status::True) {
      cj["note"] = "sufficient condition did not certify; premise undecided";
    }
    doc["cut_parity"] = cj;
  } else {
    try {
      CutParityVerdict cp = check_cut_parity_premise(*in.pres, spec, o.radius);
      nlohmann::json cj;
      cj["holds"] = cp.status == CutParityVerdict::Status::True;
      cj["radius"] = o.radius;
      if (cp.odd_witness) {
        cj["odd_cut"] = std::vector<EdgeId>(cp.odd_witness->edge_set.begin(),
                                            cp.odd_witness->edge_set.end());
        cj["odd_side"] = std::vector<VertexId>(cp.odd_witness->side_b.begin(),
                                               cp.odd_witness->side_b.end());
      }
      doc["cut_parity"] = cj;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      doc["cut_parity"] = {{"skipped", e.what()}};
    }
  }

  EndsVerdict ie = is_inner_eulerian_with_ends(*in.pres, spec, o.rmax);
  nlohmann::json ij;
  ij["status"] = ie.status == EndsVerdict::Status::True
                     ? "true"
                     : (ie.status == EndsVerdict::Status::False ? "false" : "unknown");
  if (ie.witness) ij["witness"] = ie.witness->token();
  if (!ie.note.empty()) ij["note"] = ie.note;
  if (ie.status == EndsVerdict::Status::Unknown) any_unknown = true;
  doc["inner_eulerian_with_ends"] = ij;

  emit(doc, o, out);
  return any_unknown ? 3 : 0;
}

int cmd_parity(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  nlohmann::json doc = nlohmann::json::object();
  bool any_unknown = false;
  for (const auto& e : in.pres->ends()) {
    EndParityResult p = end_degree_parity(*in.pres, e.id, o.rmax);
    nlohmann::json pj;
    pj["parity"] = parity_name(p.parity);
    pj["degrees"] = p.degrees;
    if (p.parity == Parity::Unknown) any_unknown = true;
    doc[e.id] = std::move(pj);
  }
  emit(doc, o, out);
  return any_unknown ? 3 : 0;
}

int cmd_handshake(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  HandshakeResult h = handshake_check(*in.pres, o.rmax);
  nlohmann::json doc;
  doc["status"] = h.status == HandshakeResult::Status::Even
                      ? "even"
                      : (h.status == HandshakeResult::Status::PotentiallyInfinite
                             ? "potentially_infinite"
                             : "unknown");
  doc["odd_vertices"] = h.odd_vertices;
  doc["odd_ends"] = h.odd_ends;
  doc["total_odd"] = h.odd_vertices.size() + h.odd_ends.size();
  if (!h.note.empty()) doc["note"] = h.note;
  emit(doc, o, out);
  return h.status == HandshakeResult::Status::Unknown ? 3 : 0;
}

int cmd_zoo(const std::string& action, const std::string& name, const CommonOpts& o,
            std::ostream& out) {
  if (action == "list") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& e : zoo_entries()) {
      doc.push_back({{"name", e.name},
                     {"finite", e.finite},
                     {"description", e.description}});
    }
    emit(doc, o, out);
    return 0;
  }
  if (action == "show") {
    if (name.empty()) throw Error(ErrorKind::Domain, "zoo show needs an entry name");
    emit(zoo_describe(name, o.params), o, out);
    return 0;
  }
  throw Error(ErrorKind::Domain, "zoo action must be 'list' or 'show'");
}

int cmd_export(const CommonOpts& o, std::ostream& out) {
  Input in = load_input(o);
  nlohmann::json doc;
  if (in.graph) {
    doc = graph_to_json(*in.graph);
  } else {
    doc = periodic_to_json(*in.periodic);
  }
  emit(doc, o, out);
  if (!o.dot_file.empty()) {
    if (in.graph) {
      emit_dot(dot_render(*in.graph), o.dot_file);
    } else {
      emit_dot(dot_render_window(window(*in.pres, o.radius)), o.dot_file);
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"edge-disjoint T-path and T-arc packing toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string zoo_action, zoo_name;

  CLI::App* pack = app.add_subcommand("pack", "maximum edge-disjoint T-path packing");
  add_common(pack, o);
  CLI::App* arcs = app.add_subcommand("arcs", "edge-disjoint graphic T-arc system");
  add_common(arcs, o);
  CLI::App* lambda = app.add_subcommand("lambda", "per-terminal minimum cut profile");
  add_common(lambda, o);
  CLI::App* mu = app.add_subcommand("mu", "window estimate of edge-disjoint arc maxima");
  add_common(mu, o);
  CLI::App* check = app.add_subcommand("check", "discreteness, cut parity, inner-Eulerian");
  add_common(check, o);
  CLI::App* parity = app.add_subcommand("parity", "end degree parities");
  add_common(parity, o);
  CLI::App* handshake = app.add_subcommand("handshake", "odd vertex/end audit");
  add_common(handshake, o);
  CLI::App* zoo = app.add_subcommand("zoo", "named example graphs");
  zoo->add_option("action", zoo_action, "list | show")->required();
  zoo->add_option("name", zoo_name, "entry name");
  zoo->add_option("--param", o.params, "zoo parameter (repeatable)");
  zoo->add_option("--out", o.out_file, "write the JSON result here");
  CLI::App* exp = app.add_subcommand("export", "emit JSON/DOT for an input");
  add_common(exp, o);

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  std::string prog = "tpack";
  argv.push_back(prog.data());
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (pack->parsed()) return cmd_pack(o, out);
    if (arcs->parsed()) return cmd_arcs(o, out);
    if (lambda->parsed()) return cmd_lambda(o, out);
    if (mu->parsed()) return cmd_mu(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (parity->parsed()) return cmd_parity(o, out);
    if (handshake->parsed()) return cmd_handshake(o, out);
    if (zoo->parsed()) return cmd_zoo(zoo_action, zoo_name, o, out);
    if (exp->parsed()) return cmd_export(o, out);
    err << "no subcommand\n";
    return 1;
  } catch (const Error& e) {
    nlohmann::json ej;
    ej["error"] = e.what();
    switch (e.kind()) {
      case ErrorKind::Domain:
        ej["kind"] = "domain";
        break;
      case ErrorKind::Precondition:
        ej["kind"] = "precondition";
        break;
      case ErrorKind::Unstabilized:
        ej["kind"] = "unstabilized";
        break;
      default:
        ej["kind"] = "internal";
        break;
    }
    if (!e.witness().is_null()) ej["witness"] = e.witness();
    err << ej.dump(2) << "\n";
    switch (e.kind()) {
      case ErrorKind::Precondition:
        return 2;
      case ErrorKind::Unstabilized:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    err << "{\"error\": \"" << e.what() << "\", \"kind\": \"internal\"}\n";
    return 1;
  }
}

}  // namespace tpack
