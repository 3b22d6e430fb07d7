// Batch interface: validate inputs, compute distances, run lifts, execute
// the property suites. JSON in, JSON report out; rationals as "p/q" strings.
// Exit codes: 0 success, 2 validation failure, 3 property failure,
// 4 infeasible or unrealizable lift.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cutrees/json_io.hpp"
#include "cutrees/lift.hpp"
#include "cutrees/suites.hpp"

using namespace cutrees;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitProperty = 3;
constexpr int kExitLift = 4;

std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invariant_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct report {
  json body = json::object();
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void ingest(const std::string& path) { digest = fnv1a(read_file(path), digest); }
  void finish(const std::string& command) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
    body["command"] = command;
    body["inputs_digest"] = hex;
    body["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << body.dump(2) << "\n";
  }
};

rat parse_eps(const std::string& s) {
  rat e = rat_from_string(s);
  if (!(e > 0)) throw invariant_error("eps must be positive");
  return e;
}

std::optional<rooted_tree> load_tree(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return tree_from_json(load_json_file(path));
}

generator_table load_table_or_hom(const json& j, const rooted_tree& x, const rooted_tree& y) {
  if (detect_kind(j) == file_kind::hom) return cu_of_hom(hom_from_json(j, x, y));
  return table_from_json(j, x, y);
}

int cmd_validate(const std::string& file, const std::string& kind_flag, const std::string& tree_path,
                 const std::string& target_path) {
  report rep;
  rep.ingest(file);
  json j = load_json_file(file);
  file_kind kind = kind_flag.empty() ? detect_kind(j) : [&] {
    for (file_kind k : {file_kind::tree, file_kind::plfunction, file_kind::treemap, file_kind::lscfunction,
                        file_kind::table, file_kind::hom})
      if (kind_name(k) == kind_flag) return k;
    throw invariant_error("unknown kind " + kind_flag);
  }();
  std::optional<rooted_tree> tree = load_tree(tree_path);
  std::optional<rooted_tree> target = load_tree(target_path);
  if (kind != file_kind::tree && !tree)
    throw invariant_error("validating a " + kind_name(kind) + " needs --tree");
  if ((kind == file_kind::table || kind == file_kind::hom || kind == file_kind::treemap) && !target)
    throw invariant_error("validating a " + kind_name(kind) + " needs --target");

  auto checks = validate_value(kind, j, tree ? &*tree : nullptr, target ? &*target : nullptr);
  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    list.push_back({{"invariant", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  rep.body["results"] = {{"kind", kind_name(kind)}, {"checks", list}, {"valid", all}};
  rep.finish("validate");
  return all ? 0 : kExitValidation;
}

int cmd_dist(const std::string& kind, const std::string& a_path, const std::string& b_path,
             const std::string& tree_path, const std::string& target_path, bool upper, bool decimal) {
  report rep;
  rep.ingest(a_path);
  rep.ingest(b_path);
  rooted_tree x = tree_from_json(load_json_file(tree_path));
  rooted_tree y = tree_from_json(load_json_file(target_path));
  json ja = load_json_file(a_path), jb = load_json_file(b_path);
  rat d;
  bool labeled_upper = false;
  if (kind == "dw") {
    d = d_w_tree(load_table_or_hom(ja, x, y), load_table_or_hom(jb, x, y));
  } else {
    diagonal_hom pa = hom_from_json(ja, x, y), pb = hom_from_json(jb, x, y);
    if (pa.multiplicity() == 1 && pb.multiplicity() == 1) {
      d = d_u_commutative(pa, pb);
    } else if (upper) {
      d = d_u_upper_diagonal(pa, pb);
      labeled_upper = true;
    } else {
      throw invariant_error("du with multiplicity > 1 is only available as an upper bound; pass --upper");
    }
  }
  rep.body["results"] = {{"metric", kind}, {"distance", rat_to_string(d)}, {"upper_bound", labeled_upper}};
  if (decimal) rep.body["results"]["distance_decimal"] = rat_to_double(d);
  rep.finish("dist " + kind);
  return 0;
}

int cmd_lift(const std::string& alpha_path, const std::string& tree_path, const std::string& target_path,
             const std::string& eps_str, const std::string& out_path, bool decimal) {
  report rep;
  rep.ingest(alpha_path);
  rooted_tree x = tree_from_json(load_json_file(tree_path));
  rooted_tree y = tree_from_json(load_json_file(target_path));
  generator_table alpha = load_table_or_hom(load_json_file(alpha_path), x, y);
  rat eps = parse_eps(eps_str);
  lift_result res = approximate_lift(alpha, eps);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << to_json(res.hom).dump(2) << "\n";
  }
  rep.body["results"] = {{"certificate",
                          {{"d_w", rat_to_string(res.certificate.d_w)},
                           {"eps", rat_to_string(res.certificate.eps)},
                           {"N", res.certificate.N},
                           {"n", res.certificate.n}}},
                         {"multiplicity", res.hom.multiplicity()},
                         {"out", out_path}};
  if (decimal) rep.body["results"]["d_w_decimal"] = rat_to_double(res.certificate.d_w);
  rep.finish("lift");
  return 0;
}

int cmd_check(const std::string& suite, std::uint64_t seed, int cases, int threads, const suite_params& params) {
  if (!is_suite(suite)) throw invariant_error("unknown suite " + suite);
  report rep;
  suite_report sr = run_suite(suite, seed, cases, threads, params);
  rep.body["results"] = to_json(sr);
  rep.body["tallies"] = {{"cases", sr.cases}, {"failures", sr.failures}, {"seed", sr.seed}};
  rep.finish("check " + suite);
  return sr.passed() ? 0 : kExitProperty;
}

int cmd_demo(const std::string& emit_dir) {
  report rep;
  rooted_tree i({0, 1}, {{0, 1}}, 0);
  diagonal_hom id({pl_tree_map::identity(i)});
  diagonal_hom shifted({pl_tree_map(
      i, i, {{{rat(0), {0, rat(3, 10)}}, {rat(7, 10), {0, rat(1)}}, {rat(1), {0, rat(1)}}}}, false)});
  rat dw = d_w_tree(cu_of_hom(id), cu_of_hom(shifted));
  rat du = d_u_commutative(id, shifted);

  diagonal_hom doubling(
      {pl_tree_map(i, i, {{{rat(0), tree_point::root_point(i)}, {rat(1, 2), {0, rat(1)}}, {rat(1), {0, rat(1)}}}})});
  lift_result lifted = approximate_lift(cu_of_hom(doubling), rat(1, 4));

  rep.body["results"] = {
      {"shift_example", {{"d_w", rat_to_string(dw)}, {"d_u", rat_to_string(du)}}},
      {"lift_example",
       {{"eps", "1/4"}, {"d_w", rat_to_string(lifted.certificate.d_w)}, {"N", lifted.certificate.N}}}};

  if (!emit_dir.empty()) {
    auto dump = [&](const std::string& name, const json& j) {
      std::ofstream out(emit_dir + "/" + name);
      out << j.dump(2) << "\n";
      return emit_dir + "/" + name;
    };
    dump("interval.json", to_json(i));
    dump("identity_hom.json", to_json(id));
    dump("shifted_hom.json", to_json(shifted));
    dump("lifted_hom.json", to_json(lifted.hom));
    json table = to_json(cu_of_hom(doubling));
    dump("doubling_table.json", table);
    // the emitted files must validate
    json checks = json::array();
    for (auto& [name, kind] : std::vector<std::pair<std::string, file_kind>>{
             {"interval.json", file_kind::tree},
             {"identity_hom.json", file_kind::hom},
             {"lifted_hom.json", file_kind::hom},
             {"doubling_table.json", file_kind::table}}) {
      json j = load_json_file(emit_dir + "/" + name);
      bool ok = true;
      for (const auto& c : validate_value(kind, j, &i, &i)) ok = ok && c.pass;
      checks.push_back({{"file", name}, {"valid", ok}});
    }
    rep.body["results"]["emitted"] = checks;
  }
  rep.finish("demo");
  return dw == rat(3, 10) && du == rat(3, 10) && lifted.certificate.d_w < rat(1, 4) ? 0 : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuntz semigroup machinery for tree C*-algebras"};
  app.require_subcommand(1);

  std::string file, kind_flag, tree_path, target_path, a_path, b_path, alpha_path, eps_str, out_path, suite,
      emit_dir;
  bool upper = false, decimal = false;
  std::uint64_t seed = 1;
  int cases = 100, threads = 1;
  suite_params params;

  auto* validate = app.add_subcommand("validate", "check a JSON file's structural invariants");
  validate->add_option("file", file)->required();
  validate->add_option("--kind", kind_flag, "tree|plfunction|treemap|lscfunction|table|hom");
  validate->add_option("--tree", tree_path, "source tree JSON (non-tree kinds)");
  validate->add_option("--target", target_path, "target tree JSON (maps, tables, homs)");

  auto* dist = app.add_subcommand("dist", "exact distance between two morphisms or homomorphisms");
  std::string metric;
  dist->add_option("metric", metric, "dw or du")->required()->check(CLI::IsMember({"dw", "du"}));
  dist->add_option("a", a_path)->required();
  dist->add_option("b", b_path)->required();
  dist->add_option("--tree", tree_path, "source tree X")->required();
  dist->add_option("--target", target_path, "target tree Y")->required();
  dist->add_flag("--upper", upper, "report the permutation upper bound for du with multiplicity > 1");
  dist->add_flag("--decimal", decimal, "add display-only decimal values");

  auto* lift = app.add_subcommand("lift", "approximately lift a Cuntz morphism to a homomorphism");
  lift->add_option("--alpha", alpha_path, "generator table (or hom, lifted via its table)")->required();
  lift->add_option("--tree", tree_path, "source tree X")->required();
  lift->add_option("--target", target_path, "target tree Y")->required();
  lift->add_option("--eps", eps_str, "tolerance p/q")->required();
  lift->add_option("--out", out_path, "write the diagonal hom JSON here");
  lift->add_flag("--decimal", decimal);

  auto* check = app.add_subcommand("check", "run a property suite");
  check->add_option("--suite", suite, "order|cc|cancel|swap|compare|lift")->required();
  check->add_option("--seed", seed);
  check->add_option("--cases", cases);
  check->add_option("--threads", threads, "1 = serial reference runner");
  check->add_option("--max-edges", params.max_edges, "corpus tree size bound");
  check->add_option("--max-den", params.max_den, "corpus denominator bound");

  auto* demo = app.add_subcommand("demo", "worked shift example and a small lift");
  demo->add_option("--emit", emit_dir, "write the example JSON files into this directory");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("CU_TREES_SEED")) seed = std::strtoull(env, nullptr, 10);

  try {
    if (*validate) return cmd_validate(file, kind_flag, tree_path, target_path);
    if (*dist) return cmd_dist(metric, a_path, b_path, tree_path, target_path, upper, decimal);
    if (*lift) return cmd_lift(alpha_path, tree_path, target_path, eps_str, out_path, decimal);
    if (*check) return cmd_check(suite, seed, cases, threads, params);
    if (*demo) return cmd_demo(emit_dir);
  } catch (const infeasible_discretization& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitLift;
  } catch (const unrealizable_profile& e) {
    std::cerr << "unrealizable: " << e.what() << "\n";
    return kExitLift;
  } catch (const lift_compatibility_error& e) {
    std::cerr << "incompatible: " << e.what() << "\n";
    return kExitLift;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
