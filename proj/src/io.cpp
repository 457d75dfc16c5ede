/* io.cpp */

#include "relorder/io.hpp"

#include <fstream>
#include <sstream>

namespace relorder {

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw parse_error("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

SubgroupFile parse_subgroup_file(std::istream& in) {
  SubgroupFile out;
  bool have_ambient = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "ambient") {
      if (have_ambient) fail(lineno, "duplicate ambient");
      std::string tag;
      int n = -1;
      if (!(ls >> tag >> n) || tag != "F" || n < 0)
        fail(lineno, "expected 'ambient F <rank>'");
      out.ambient.free_rank = n;
      if (ls >> tag) {
        int m = -1;
        if (tag != "Z" || !(ls >> m) || m < 0)
          fail(lineno, "expected 'Z <rank>' after the free rank");
        out.ambient.abelian_rank = m;
      }
      if (ls >> tag) fail(lineno, "trailing input after ambient");
      have_ambient = true;
    } else if (key == "gen") {
      if (!have_ambient) fail(lineno, "ambient must come before generators");
      std::string rest;
      std::getline(ls, rest);
      rest = strip(rest);
      if (rest.empty()) fail(lineno, "empty generator");
      try {
        out.gens.push_back(parse_element(rest, out.ambient));
      } catch (const parse_error& e) {
        fail(lineno, e.what());
      }
    } else {
      fail(lineno, "unknown directive '" + key + "'");
    }
  }
  if (!have_ambient) throw parse_error("missing ambient line");
  return out;
}

SubgroupFile load_subgroup_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return parse_subgroup_file(in);
}

std::string format_subgroup_file(const Ambient& amb,
                                 const std::vector<FtaElement>& gens) {
  std::ostringstream os;
  os << "ambient F " << amb.free_rank;
  if (amb.abelian_rank > 0) os << " Z " << amb.abelian_rank;
  os << "\n";
  for (const FtaElement& g : gens) os << "gen " << format_element(g, amb) << "\n";
  return os.str();
}

}  // namespace relorder
