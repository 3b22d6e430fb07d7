#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cutrees/cu.hpp"
#include "cutrees/lift.hpp"

namespace cutrees {

using json = nlohmann::json;

json to_json(const rooted_tree& t);
rooted_tree tree_from_json(const json& j);

json to_json(const pl_function& f);
pl_function pl_from_json(const json& j, const rooted_tree& tree);

json to_json(const pl_tree_map& m);
pl_tree_map map_from_json(const json& j, const rooted_tree& source, const rooted_tree& target);

json to_json(const lsc_function& f);
lsc_function lsc_from_json(const json& j, const rooted_tree& tree);

json to_json(const generator_table& t);
generator_table table_from_json(const json& j, const rooted_tree& source, const rooted_tree& target);

json to_json(const diagonal_hom& h);
// maps go from `target` (the codomain tree Y) into `source` (the domain tree X)
diagonal_hom hom_from_json(const json& j, const rooted_tree& source, const rooted_tree& target);

enum class file_kind { tree, plfunction, treemap, lscfunction, table, hom, unknown };
file_kind detect_kind(const json& j);
std::string kind_name(file_kind k);

struct named_check {
  std::string name;
  bool pass;
  std::string detail;
};

// Structural validation with one line per invariant. Non-tree kinds need the
// referenced trees.
std::vector<named_check> validate_value(file_kind kind, const json& j, const rooted_tree* source,
                                        const rooted_tree* target);

json load_json_file(const std::string& path);  // throws with location on parse errors

}  // namespace cutrees
