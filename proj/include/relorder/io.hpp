/* io.hpp -- the subgroup file format

   One `ambient F <n>` line (optionally `... Z <m>`), then `gen <element>`
   lines. `#` starts a comment. */

#pragma once

#include "relorder/words.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace relorder {

struct SubgroupFile {
  Ambient ambient;
  std::vector<FtaElement> gens;
};

SubgroupFile parse_subgroup_file(std::istream& in);
SubgroupFile load_subgroup_file(const std::string& path);
std::string format_subgroup_file(const Ambient& amb,
                                 const std::vector<FtaElement>& gens);

}  // namespace relorder
