/* main.cpp -- relorder command line driver */

#include "CLI11.hpp"
#include "json.hpp"

#include "relorder/automaton.hpp"
#include "relorder/free_orders.hpp"
#include "relorder/fta.hpp"
#include "relorder/io.hpp"
#include "relorder/oracle.hpp"

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

using namespace relorder;

struct Loaded {
  Ambient amb;
  bool fta = false;
  Subgroup free_sub;
  FtaSubgroup fta_sub;
};

Loaded load_group(const std::string& path) {
  SubgroupFile f = load_subgroup_file(path);
  Loaded out;
  out.amb = f.ambient;
  out.fta = f.ambient.abelian_rank > 0;
  if (out.fta) {
    out.fta_sub = fta_basis(f.gens, f.ambient);
  } else {
    std::vector<Word> ws;
    ws.reserve(f.gens.size());
    for (const FtaElement& g : f.gens) ws.push_back(g.w);
    out.free_sub = build_stallings(ws, f.ambient.free_rank);
  }
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    size_t used = 0;
    long v = std::stol(item, &used);
    if (used != item.size()) throw parse_error("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw parse_error("empty set");
  return out;
}

SSet parse_sset(const std::string& text) {
  if (text.empty() || text == "all") return SSet{true, {}};
  SSet s;
  for (long v : parse_long_list(text)) {
    if (v < 1) throw parse_error("s-set entries must be positive");
    s.elems.insert(v);
  }
  return s;
}

std::string spectrum_line(const std::set<long>& sp) {
  std::ostringstream os;
  bool first = true;
  for (long v : sp) {
    if (!first) os << ' ';
    os << v;
    first = false;
  }
  return os.str();
}

json description_json(const CosetUnionDescription& d, int rank) {
  json parts = json::array();
  for (const DescriptionPart& p : d.parts) {
    json basis = json::array();
    for (const Word& b : p.sub.basis) basis.push_back(format_word(b, rank));
    parts.push_back({{"subgroup", basis}, {"rep", format_word(p.rep, rank)}});
  }
  json conj = json::array();
  for (const Word& b : d.conjugator.basis) conj.push_back(format_word(b, rank));
  return {{"label", d.label}, {"conjugator", conj}, {"parts", parts}};
}

json description_json(const FtaDecomposition& d) {
  json parts = json::array();
  for (const FtaPart& p : d.parts)
    parts.push_back({{"subgroup", to_string(p.sub)},
                     {"rep", format_element(p.rep, p.sub.ambient)}});
  return {{"label", d.label}, {"conjugator", to_string(d.conjugator)}, {"parts", parts}};
}

std::vector<FtaElement> subgroup_gens(const Loaded& g, const Subgroup& free_sub,
                                      const FtaSubgroup& fta_sub) {
  std::vector<FtaElement> gens;
  if (g.fta) {
    for (int i = 0; i < fta_sub.free_part.rank(); ++i)
      gens.push_back(FtaElement{fta_sub.free_part.basis[i], fta_sub.comp[i]});
    for (const Vec& row : fta_sub.lat.rows) gens.push_back(FtaElement{Word{}, row});
  } else {
    for (const Word& b : free_sub.basis) gens.push_back(FtaElement{b, Vec{}});
  }
  return gens;
}

int run(int argc, char** argv) {
  CLI::App app{"orders, spectra, roots and pure closures relative to a subgroup"};
  app.require_subcommand(1);

  std::string group_path, element_text, coset_text, sset_text, set_text;
  long arg_k = 0;
  int ball = 3, conj_radius = -1;
  long box = 3;
  bool as_json = false;
  Limits lim;

  auto add_common = [&](CLI::App* cmd, bool needs_group = true) {
    if (needs_group)
      cmd->add_option("-g,--group", group_path, "subgroup file")->required();
    cmd->add_flag("--json", as_json, "structured output");
    cmd->add_option("--max-trails", lim.max_trails, "trail enumeration guard");
    cmd->add_option("--max-product-vertices", lim.max_product_vertices,
                    "product automaton guard");
  };

  CLI::App* c_order = app.add_subcommand("order", "order of an element");
  add_common(c_order);
  c_order->add_option("-e,--element", element_text)->required();
  c_order->add_option("-u,--coset", coset_text);

  CLI::App* c_member = app.add_subcommand("member", "membership of an element");
  add_common(c_member);
  c_member->add_option("-e,--element", element_text)->required();
  c_member->add_option("-u,--coset", coset_text);

  CLI::App* c_spectrum = app.add_subcommand("spectrum", "set of realized orders");
  add_common(c_spectrum);
  c_spectrum->add_option("-u,--coset", coset_text);

  CLI::App* c_smp = app.add_subcommand("smp", "does some element have order k");
  add_common(c_smp);
  c_smp->add_option("k", arg_k)->required();
  c_smp->add_option("-u,--coset", coset_text);

  CLI::App* c_tgp = app.add_subcommand("tgp", "does some element have order zero");
  add_common(c_tgp);
  c_tgp->add_option("-u,--coset", coset_text);

  CLI::App* c_bound = app.add_subcommand("bound", "upper bound for finite orders");
  add_common(c_bound);
  c_bound->add_option("-u,--coset", coset_text);

  CLI::App* c_roots = app.add_subcommand("roots", "decomposition of the k-th roots");
  add_common(c_roots);
  c_roots->add_option("k", arg_k)->required();

  CLI::App* c_preorder =
      app.add_subcommand("preorder", "decomposition of the elements of order k");
  add_common(c_preorder);
  c_preorder->add_option("k", arg_k)->required();
  c_preorder->add_option("-u,--coset", coset_text);

  CLI::App* c_pure = app.add_subcommand("pure", "is the subgroup S-pure");
  add_common(c_pure);
  c_pure->add_option("--s-set", sset_text, "comma list or 'all'");

  CLI::App* c_closure = app.add_subcommand("closure", "S-pure closure");
  add_common(c_closure);
  c_closure->add_option("--s-set", sset_text, "comma list or 'all'");

  CLI::App* c_index = app.add_subcommand("index", "index of the subgroup");
  add_common(c_index);

  CLI::App* c_dot = app.add_subcommand("dot", "automaton in DOT format");
  add_common(c_dot);

  CLI::App* c_ko = app.add_subcommand("ko", "subgroup of F_2 with prescribed spectrum");
  add_common(c_ko, false);
  c_ko->add_flag("--json", as_json);
  c_ko->add_option("--set", set_text, "comma list containing 0 and 1")->required();

  CLI::App* c_verify = app.add_subcommand("verify", "cross-check a preorder decomposition");
  add_common(c_verify);
  c_verify->add_option("k", arg_k)->required();
  c_verify->add_option("--ball", ball, "free ball radius");
  c_verify->add_option("--box", box, "vector box bound");
  c_verify->add_option("--conj", conj_radius, "conjugator ball radius");
  c_verify->add_option("-u,--coset", coset_text);

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();

  if (cmd == c_ko) {
    std::set<long> o;
    for (long v : parse_long_list(set_text)) o.insert(v);
    Subgroup k = build_K_O(o);
    if (as_json) {
      json gens = json::array();
      for (const Word& b : k.basis) gens.push_back(format_word(b, 2));
      std::cout << json{{"ambient", "F 2"}, {"gens", gens}}.dump() << "\n";
    } else {
      std::vector<FtaElement> gens;
      for (const Word& b : k.basis) gens.push_back(FtaElement{b, Vec{}});
      std::cout << format_subgroup_file(Ambient{2, 0}, gens);
    }
    return 0;
  }

  Loaded g = load_group(group_path);
  Word u;
  if (!coset_text.empty()) {
    if (g.fta) throw parse_error("coset representatives need a plain free ambient");
    u = parse_word(coset_text, g.amb.free_rank);
  }
  FtaElement e;
  if (cmd == c_order || cmd == c_member)
    e = parse_element(element_text, g.amb);

  if (cmd == c_order) {
    long k = g.fta ? fta_order(g.fta_sub, e) : order(g.free_sub, e.w, u);
    if (as_json)
      std::cout << json{{"order", k}}.dump() << "\n";
    else
      std::cout << k << "\n";
  } else if (cmd == c_member) {
    bool in = g.fta ? fta_membership(g.fta_sub, e) : membership(g.free_sub, e.w, u);
    if (as_json)
      std::cout << json{{"member", in}}.dump() << "\n";
    else
      std::cout << (in ? "true" : "false") << "\n";
  } else if (cmd == c_spectrum) {
    std::set<long> sp =
        g.fta ? fta_spectrum(g.fta_sub, lim) : spectrum(g.free_sub, u, lim);
    if (as_json)
      std::cout << json{{"spectrum", sp}}.dump() << "\n";
    else
      std::cout << spectrum_line(sp) << "\n";
  } else if (cmd == c_smp) {
    bool yes = g.fta ? fta_smp(g.fta_sub, arg_k, lim)
                     : (arg_k == 0   ? has_order_zero(g.free_sub, u)
                        : arg_k == 1 ? true
                                     : has_elements_of_order(g.free_sub, arg_k, u, lim));
    if (as_json)
      std::cout << json{{"k", arg_k}, {"realized", yes}}.dump() << "\n";
    else
      std::cout << (yes ? "true" : "false") << "\n";
  } else if (cmd == c_tgp) {
    bool yes = g.fta ? fta_has_order_zero(g.fta_sub) : has_order_zero(g.free_sub, u);
    if (as_json)
      std::cout << json{{"has_order_zero", yes}}.dump() << "\n";
    else
      std::cout << (yes ? "true" : "false") << "\n";
  } else if (cmd == c_bound) {
    long b = g.fta ? fta_spectrum_bound(g.fta_sub) : spectrum_bound(g.free_sub, u);
    if (as_json)
      std::cout << json{{"bound", b}}.dump() << "\n";
    else
      std::cout << b << "\n";
  } else if (cmd == c_roots) {
    if (g.fta) {
      FtaDecomposition d = fta_k_roots(g.fta_sub, arg_k, lim);
      std::cout << (as_json ? description_json(d).dump() + "\n" : to_string(d));
    } else {
      CosetUnionDescription d = k_roots(g.free_sub, arg_k, lim);
      std::cout << (as_json ? description_json(d, g.amb.free_rank).dump() + "\n"
                            : to_string(d));
    }
  } else if (cmd == c_preorder) {
    if (g.fta) {
      FtaDecomposition d = fta_elements_of_order(g.fta_sub, arg_k, lim);
      std::cout << (as_json ? description_json(d).dump() + "\n" : to_string(d));
    } else {
      CosetUnionDescription d =
          arg_k == 0 ? order_zero_description(g.free_sub, u, lim)
                     : elements_of_order(g.free_sub, arg_k, u, lim);
      std::cout << (as_json ? description_json(d, g.amb.free_rank).dump() + "\n"
                            : to_string(d));
    }
  } else if (cmd == c_pure) {
    SSet s = parse_sset(sset_text);
    bool pure = g.fta ? fta_is_S_pure(g.fta_sub, s, lim) : is_S_pure(g.free_sub, s, lim);
    if (as_json)
      std::cout << json{{"pure", pure}}.dump() << "\n";
    else
      std::cout << (pure ? "true" : "false") << "\n";
  } else if (cmd == c_closure) {
    SSet s = parse_sset(sset_text);
    std::vector<FtaElement> gens;
    if (g.fta) {
      FtaSubgroup c = fta_pure_closure(g.fta_sub, s, lim);
      gens = subgroup_gens(g, g.free_sub, c);
    } else {
      Subgroup c = pure_closure(g.free_sub, s, lim);
      for (const Word& b : c.basis) gens.push_back(FtaElement{b, Vec{}});
    }
    if (as_json) {
      json items = json::array();
      for (const FtaElement& ge : gens) items.push_back(format_element(ge, g.amb));
      std::cout << json{{"gens", items}}.dump() << "\n";
    } else {
      std::cout << format_subgroup_file(g.amb, gens);
    }
  } else if (cmd == c_index) {
    if (g.fta) {
      auto idx = fta_index(g.fta_sub);
      if (as_json)
        std::cout << json{{"finite", idx.has_value()},
                          {"index", idx ? idx->get_str() : "infinite"}}
                         .dump()
                  << "\n";
      else
        std::cout << (idx ? idx->get_str() : "infinite") << "\n";
    } else {
      auto idx = index(g.free_sub);
      if (as_json)
        std::cout << json{{"finite", idx.has_value()},
                          {"index", idx ? std::to_string(*idx) : "infinite"}}
                         .dump()
                  << "\n";
      else
        std::cout << (idx ? std::to_string(*idx) : "infinite") << "\n";
    }
  } else if (cmd == c_dot) {
    const Automaton& a = g.fta ? g.fta_sub.free_part.aut : g.free_sub.aut;
    std::cout << to_dot(a);
  } else if (cmd == c_verify) {
    if (conj_radius < 0) conj_radius = ball;
    VerifyReport rep;
    if (g.fta) {
      FtaDecomposition d = fta_elements_of_order(g.fta_sub, arg_k, lim);
      rep = verify_fta_description(g.fta_sub, d, ball, box, conj_radius);
    } else {
      CosetUnionDescription d =
          arg_k == 0 ? order_zero_description(g.free_sub, u, lim)
                     : elements_of_order(g.free_sub, arg_k, u, lim);
      rep = verify_description(g.free_sub, u, d, ball, conj_radius);
    }
    if (as_json) {
      std::cout << json{{"checked", rep.checked},
                        {"in_set", rep.in_set},
                        {"matching", rep.matching},
                        {"counterexamples", rep.counterexamples},
                        {"inconclusive", rep.inconclusive},
                        {"details", rep.details}}
                       .dump()
                << "\n";
    } else {
      std::cout << "checked=" << rep.checked << " in_set=" << rep.in_set
                << " matching=" << rep.matching
                << " counterexamples=" << rep.counterexamples
                << " inconclusive=" << rep.inconclusive << "\n";
      for (const std::string& line : rep.details) std::cout << "  " << line << "\n";
      std::cout << (rep.counterexamples == 0 ? "pass" : "fail") << "\n";
    }
    if (rep.counterexamples != 0) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const resource_limit_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
