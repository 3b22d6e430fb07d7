#include "cutrees/json_io.hpp"

#include <fstream>

namespace cutrees {

namespace {

rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return rat(j.get<long long>());
  throw invariant_error("expected a rational (\"p/q\" string or integer), got " + j.dump());
}

json rat_to_json(const rat& x) { return rat_to_string(x); }

ext_nat extnat_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ext_nat::inf();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return ext_nat(std::uint32_t(j.get<long long>()));
  throw invariant_error("expected a value in N u {\"inf\"}, got " + j.dump());
}

json extnat_to_json(ext_nat v) {
  if (v.is_inf()) return "inf";
  return v.finite();
}

int edge_key(const std::string& key, const rooted_tree& t) {
  int e;
  try {
    e = std::stoi(key);
  } catch (const std::exception&) {
    throw invariant_error("edge key '" + key + "' is not an edge index");
  }
  t.require_edge(e);
  return e;
}

}  // namespace

json to_json(const rooted_tree& t) {
  json edges = json::array();
  for (const auto& e : t.edges()) edges.push_back({e.init, e.term});
  return {{"vertices", t.vertices()}, {"edges", edges}, {"root", t.root()}};
}

rooted_tree tree_from_json(const json& j) {
  if (!j.contains("vertices") || !j.contains("edges") || !j.contains("root"))
    throw invariant_error("tree JSON needs \"vertices\", \"edges\", \"root\"");
  std::vector<int> vs = j.at("vertices").get<std::vector<int>>();
  std::vector<tree_edge> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw invariant_error("edge entries must be [init, term] pairs");
    es.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return rooted_tree(std::move(vs), std::move(es), j.at("root").get<int>());
}

json to_json(const pl_function& f) {
  json out = json::object();
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    json samples = json::array();
    for (const auto& s : f.edge_samples(e)) samples.push_back({rat_to_json(s.t), rat_to_json(s.v)});
    out[std::to_string(e)] = samples;
  }
  return out;
}

pl_function pl_from_json(const json& j, const rooted_tree& tree) {
  std::vector<std::vector<pl_sample>> per_edge(std::size_t(tree.edge_count()));
  for (const auto& [key, samples] : j.items()) {
    int e = edge_key(key, tree);
    for (const auto& s : samples) {
      if (!s.is_array() || s.size() != 2) throw invariant_error("pl samples must be [t, value] pairs");
      per_edge[std::size_t(e)].push_back({rat_from_json(s[0]), rat_from_json(s[1])});
    }
  }
  return pl_function(tree, std::move(per_edge));
}

json to_json(const pl_tree_map& m) {
  json out = json::object();
  for (int e = 0; e < m.source().edge_count(); ++e) {
    json wps = json::array();
    for (const auto& [s, p] : m.edge_waypoints(e))
      wps.push_back({rat_to_json(s), {{"edge", p.edge}, {"pos", rat_to_json(p.pos)}}});
    out[std::to_string(e)] = wps;
  }
  return out;
}

pl_tree_map map_from_json(const json& j, const rooted_tree& source, const rooted_tree& target) {
  std::vector<pl_tree_map::waypoints> per_edge(std::size_t(source.edge_count()));
  for (const auto& [key, wps] : j.items()) {
    int e = edge_key(key, source);
    for (const auto& w : wps) {
      if (!w.is_array() || w.size() != 2 || !w[1].contains("edge") || !w[1].contains("pos"))
        throw invariant_error("waypoints must be [s, {\"edge\":id, \"pos\":t}] pairs");
      per_edge[std::size_t(e)].push_back(
          {rat_from_json(w[0]), tree_point{w[1].at("edge").get<int>(), rat_from_json(w[1].at("pos"))}});
    }
  }
  return pl_tree_map(source, target, std::move(per_edge));
}

json to_json(const lsc_function& f) {
  json edges = json::object();
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    const auto& d = f.edge_data(e);
    json cuts = json::array(), ivals = json::array(), pvals = json::array();
    for (const auto& c : d.cuts) cuts.push_back(rat_to_json(c));
    for (const auto& v : d.cell_values) ivals.push_back(extnat_to_json(v));
    for (const auto& v : d.point_values) pvals.push_back(extnat_to_json(v));
    edges[std::to_string(e)] = {{"cuts", cuts}, {"interval_values", ivals}, {"point_values", pvals}};
  }
  json vv = json::object();
  for (int vid : f.tree().vertices())
    if (vid != f.tree().root()) vv[std::to_string(vid)] = extnat_to_json(f.value_at_vertex(vid));
  return {{"edges", edges}, {"vertex_values", vv}};
}

lsc_function lsc_from_json(const json& j, const rooted_tree& tree) {
  if (!j.contains("edges")) throw invariant_error("lsc JSON needs an \"edges\" object");
  std::vector<lsc_edge_data> per_edge(std::size_t(tree.edge_count()));
  for (const auto& [key, rec] : j.at("edges").items()) {
    int e = edge_key(key, tree);
    if (!rec.contains("cuts") || !rec.contains("interval_values") || !rec.contains("point_values"))
      throw invariant_error("lsc edge record needs \"cuts\", \"interval_values\", \"point_values\"");
    lsc_edge_data d;
    for (const auto& c : rec.at("cuts")) d.cuts.push_back(rat_from_json(c));
    for (const auto& v : rec.at("interval_values")) d.cell_values.push_back(extnat_from_json(v));
    for (const auto& v : rec.at("point_values")) d.point_values.push_back(extnat_from_json(v));
    per_edge[std::size_t(e)] = std::move(d);
  }
  std::vector<ext_nat> vv(std::size_t(tree.vertex_count()), ext_nat(0));
  if (j.contains("vertex_values"))
    for (const auto& [key, v] : j.at("vertex_values").items()) {
      int vid = std::stoi(key);
      if (vid == tree.root()) throw invariant_error("the root carries no lsc value");
      vv[std::size_t(tree.vertex_index(vid))] = extnat_from_json(v);
    }
  return lsc_function(tree, std::move(per_edge), std::move(vv));
}

json to_json(const generator_table& t) {
  json out = json::object();
  for (int e = 0; e < t.source().edge_count(); ++e) {
    const cu_family& fam = t.family(e);
    json steps = json::array();
    if (fam.is_step()) {
      for (const auto& [tk, L] : fam.steps().steps) steps.push_back({rat_to_json(tk), to_json(L)});
    } else {
      // profile-backed tables serialize as their exact parameter breakpoints'
      // samples; this is lossy for moving cuts and is flagged
      for (const rat& tk : fam.parameter_breakpoints())
        if (tk < 1) steps.push_back({rat_to_json(tk), to_json(fam.at(tk))});
      steps.push_back({rat_to_json(rat(1)), to_json(lsc_function::zero(t.target()))});
    }
    out[std::to_string(e)] = steps;
  }
  return out;
}

generator_table table_from_json(const json& j, const rooted_tree& source, const rooted_tree& target) {
  std::vector<std::pair<int, step_family>> fams;
  for (const auto& [key, steps] : j.items()) {
    int e = edge_key(key, source);
    step_family fam;
    for (const auto& s : steps) {
      if (!s.is_array() || s.size() != 2) throw invariant_error("table steps must be [t, <lsc>] pairs");
      fam.steps.push_back({rat_from_json(s[0]), lsc_from_json(s[1], target)});
    }
    fams.push_back({e, std::move(fam)});
  }
  std::vector<cu_family> per_edge;
  for (int e = 0; e < source.edge_count(); ++e) {
    auto it = std::find_if(fams.begin(), fams.end(), [&](const auto& p) { return p.first == e; });
    if (it == fams.end()) throw invariant_error("table is missing edge " + std::to_string(e));
    per_edge.push_back(cu_family(target, std::move(it->second)));
  }
  return generator_table(source, target, std::move(per_edge));
}

json to_json(const diagonal_hom& h) {
  json maps = json::array();
  for (const auto& m : h.maps()) maps.push_back(to_json(m));
  return {{"multiplicity", h.multiplicity()}, {"maps", maps}};
}

diagonal_hom hom_from_json(const json& j, const rooted_tree& source, const rooted_tree& target) {
  if (!j.contains("multiplicity") || !j.contains("maps"))
    throw invariant_error("hom JSON needs \"multiplicity\" and \"maps\"");
  std::vector<pl_tree_map> maps;
  for (const auto& m : j.at("maps")) maps.push_back(map_from_json(m, target, source));
  if (int(maps.size()) != j.at("multiplicity").get<int>())
    throw invariant_error("hom multiplicity does not match the number of maps");
  return diagonal_hom(std::move(maps));
}

file_kind detect_kind(const json& j) {
  if (!j.is_object()) return file_kind::unknown;
  if (j.contains("vertices") && j.contains("edges") && j.contains("root")) return file_kind::tree;
  if (j.contains("multiplicity")) return file_kind::hom;
  if (j.contains("vertex_values") || (j.contains("edges") && j.at("edges").is_object())) return file_kind::lscfunction;
  for (const auto& [key, val] : j.items()) {
    (void)key;
    if (!val.is_array() || val.empty() || !val.front().is_array() || val.front().size() != 2)
      return file_kind::unknown;
    const json& second = val.front()[1];
    if (second.is_string() || second.is_number()) return file_kind::plfunction;
    if (second.is_object() && second.contains("edge")) return file_kind::treemap;
    if (second.is_object() && second.contains("edges")) return file_kind::table;
    return file_kind::unknown;
  }
  return file_kind::unknown;
}

std::string kind_name(file_kind k) {
  switch (k) {
    case file_kind::tree: return "tree";
    case file_kind::plfunction: return "plfunction";
    case file_kind::treemap: return "treemap";
    case file_kind::lscfunction: return "lscfunction";
    case file_kind::table: return "table";
    case file_kind::hom: return "hom";
    default: return "unknown";
  }
}

namespace {

void run_check(std::vector<named_check>& out, const std::string& name, const std::function<void()>& body) {
  try {
    body();
    out.push_back({name, true, ""});
  } catch (const std::exception& err) {
    out.push_back({name, false, err.what()});
  }
}

}  // namespace

std::vector<named_check> validate_value(file_kind kind, const json& j, const rooted_tree* source,
                                        const rooted_tree* target) {
  std::vector<named_check> out;
  bool needs_source = kind != file_kind::tree && kind != file_kind::unknown;
  bool needs_target = kind == file_kind::treemap || kind == file_kind::table || kind == file_kind::hom;
  if ((needs_source && !source) || (needs_target && !target)) {
    out.push_back({"tree references", false, "validating a " + kind_name(kind) + " needs the referenced tree(s)"});
    return out;
  }
  switch (kind) {
    case file_kind::tree: {
      // stepwise, so each structural invariant gets its own verdict
      std::vector<int> vs;
      std::vector<tree_edge> es;
      int root = 0;
      run_check(out, "shape", [&] {
        if (!j.contains("vertices") || !j.contains("edges") || !j.contains("root"))
          throw invariant_error("needs \"vertices\", \"edges\", \"root\"");
        vs = j.at("vertices").get<std::vector<int>>();
        for (const auto& e : j.at("edges")) es.push_back({e[0].get<int>(), e[1].get<int>()});
        root = j.at("root").get<int>();
      });
      if (!out.back().pass) return out;
      run_check(out, "acyclicity (|E| = |V| - 1)", [&] {
        if (es.size() + 1 != vs.size()) throw invariant_error("edge count is " + std::to_string(es.size()));
      });
      run_check(out, "orientation and connectivity", [&] { rooted_tree t(vs, es, root); });
      break;
    }
    case file_kind::plfunction: {
      run_check(out, "breakpoint grid spans [0,1], values >= 0", [&] { pl_from_json(j, *source); });
      run_check(out, "continuity across shared vertices", [&] { pl_from_json(j, *source); });
      break;
    }
    case file_kind::treemap: {
      run_check(out, "waypoints span [0,1], strictly increasing", [&] { map_from_json(j, *source, *target); });
      run_check(out, "continuity and root compatibility", [&] { map_from_json(j, *source, *target); });
      break;
    }
    case file_kind::lscfunction: {
      run_check(out, "cuts and value counts", [&] { lsc_from_json(j, *source); });
      run_check(out, "lower semicontinuity", [&] { lsc_from_json(j, *source); });
      break;
    }
    case file_kind::table: {
      bool parsed = false;
      generator_table t = generator_table::zero(*source, *target);
      run_check(out, "step structure (left-closed, vanishing from 1)", [&] {
        t = table_from_json(j, *source, *target);
        parsed = true;
      });
      if (parsed) {
        for (const auto& msg : t.validate()) out.push_back({"table invariants", false, msg});
        if (out.size() == 1) out.push_back({"table invariants (antitone, compact decay, vertex compatibility)", true, ""});
      }
      break;
    }
    case file_kind::hom: {
      run_check(out, "maps well-formed, continuous, root compatible", [&] { hom_from_json(j, *source, *target); });
      break;
    }
    default:
      out.push_back({"kind", false, "unrecognized file shape"});
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invariant_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw invariant_error("parse error in " + path + ": " + err.what());
  }
}

}  // namespace cutrees
