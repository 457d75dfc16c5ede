/* module.cpp -- python bindings: a string-based facade over the library */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relorder/automaton.hpp"
#include "relorder/free_orders.hpp"
#include "relorder/fta.hpp"
#include "relorder/oracle.hpp"

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using namespace relorder;

SSet to_sset(const std::vector<long>& s) {
  if (s.empty()) return SSet{true, {}};
  SSet out;
  for (long v : s) out.elems.insert(v);
  return out;
}

class Group {
 public:
  Group(int free_rank, int abelian_rank, const std::vector<std::string>& gens) {
    amb_.free_rank = free_rank;
    amb_.abelian_rank = abelian_rank;
    std::vector<FtaElement> elems;
    elems.reserve(gens.size());
    for (const std::string& s : gens) elems.push_back(parse_element(s, amb_));
    if (fta()) {
      fta_ = fta_basis(elems, amb_);
    } else {
      std::vector<Word> ws;
      ws.reserve(elems.size());
      for (const FtaElement& e : elems) ws.push_back(e.w);
      free_ = build_stallings(ws, free_rank);
    }
  }

  bool fta() const { return amb_.abelian_rank > 0; }

  long order(const std::string& g) const {
    FtaElement e = parse_element(g, amb_);
    return fta() ? fta_order(fta_, e) : relorder::order(free_, e.w);
  }

  bool member(const std::string& g) const {
    FtaElement e = parse_element(g, amb_);
    return fta() ? fta_membership(fta_, e) : membership(free_, e.w);
  }

  std::vector<long> spectrum() const {
    std::set<long> sp = fta() ? fta_spectrum(fta_) : relorder::spectrum(free_);
    return {sp.begin(), sp.end()};
  }

  long bound() const {
    return fta() ? fta_spectrum_bound(fta_) : spectrum_bound(free_);
  }

  bool smp(long k) const {
    if (fta()) return fta_smp(fta_, k);
    if (k == 0) return has_order_zero(free_);
    if (k == 1) return true;
    return has_elements_of_order(free_, k);
  }

  bool has_order_zero_elements() const {
    return fta() ? fta_has_order_zero(fta_) : has_order_zero(free_);
  }

  std::string index() const {
    if (fta()) {
      auto idx = fta_index(fta_);
      return idx ? idx->get_str() : "infinite";
    }
    auto idx = relorder::index(free_);
    return idx ? std::to_string(*idx) : "infinite";
  }

  std::vector<std::string> basis() const {
    std::vector<std::string> out;
    if (fta()) {
      for (int i = 0; i < fta_.free_part.rank(); ++i)
        out.push_back(format_element(FtaElement{fta_.free_part.basis[i], fta_.comp[i]},
                                     amb_));
      for (const Vec& row : fta_.lat.rows)
        out.push_back(format_element(FtaElement{Word{}, row}, amb_));
    } else {
      for (const Word& b : free_.basis) out.push_back(format_word(b, amb_.free_rank));
    }
    return out;
  }

  std::string roots(long k) const {
    return fta() ? to_string(fta_k_roots(fta_, k)) : to_string(k_roots(free_, k));
  }

  std::string preorder(long k) const {
    return fta() ? to_string(fta_elements_of_order(fta_, k))
                 : to_string(elements_of_order(free_, k));
  }

  bool pure(const std::vector<long>& s) const {
    return fta() ? fta_is_S_pure(fta_, to_sset(s)) : is_S_pure(free_, to_sset(s));
  }

  Group closure(const std::vector<long>& s) const {
    Group out(*this);
    if (fta()) {
      out.fta_ = fta_pure_closure(fta_, to_sset(s));
    } else {
      out.free_ = pure_closure(free_, to_sset(s));
    }
    return out;
  }

  std::string dot() const {
    return to_dot(fta() ? fta_.free_part.aut : free_.aut);
  }

 private:
  Ambient amb_;
  Subgroup free_;
  FtaSubgroup fta_;
};

Group ko(const std::vector<long>& o) {
  std::set<long> s(o.begin(), o.end());
  Subgroup k = build_K_O(s);
  std::vector<std::string> gens;
  for (const Word& b : k.basis) gens.push_back(format_word(b, 2));
  return Group(2, 0, gens);
}

std::vector<std::string> ball(int rank, int radius) {
  std::vector<std::string> out;
  for (const Word& w : ball_free(rank, radius)) out.push_back(format_word(w, rank));
  return out;
}

}  // namespace

PYBIND11_MODULE(relorder, m) {
  m.doc() = "orders, spectra, roots and pure closures relative to a subgroup";
  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<resource_limit_error>(m, "ResourceLimit", PyExc_RuntimeError);
  py::class_<Group>(m, "Group")
      .def(py::init<int, int, const std::vector<std::string>&>(),
           py::arg("free_rank"), py::arg("abelian_rank"), py::arg("gens"))
      .def("order", &Group::order, py::arg("g"))
      .def("member", &Group::member, py::arg("g"))
      .def("spectrum", &Group::spectrum)
      .def("bound", &Group::bound)
      .def("smp", &Group::smp, py::arg("k"))
      .def("has_order_zero", &Group::has_order_zero_elements)
      .def("index", &Group::index)
      .def("basis", &Group::basis)
      .def("roots", &Group::roots, py::arg("k"))
      .def("preorder", &Group::preorder, py::arg("k"))
      .def("pure", &Group::pure, py::arg("s") = std::vector<long>{})
      .def("closure", &Group::closure, py::arg("s") = std::vector<long>{})
      .def("dot", &Group::dot);
  m.def("ko", &ko, py::arg("orders"),
        "subgroup of F_2 realizing the given order set");
  m.def("ball", &ball, py::arg("rank"), py::arg("radius"),
        "freely reduced words up to the given length");
}
