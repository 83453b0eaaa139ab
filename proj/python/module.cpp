#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

#include "cartan/coadjoint.hpp"
#include "cartan/invariants.hpp"
#include "cartan/suites.hpp"
#include "cartan/table_io.hpp"

namespace py = pybind11;
using namespace cartan;

namespace {

using Sparse = std::map<std::uint32_t, Residue>;

Sparse to_dict(const SparseVec& v) { return Sparse(v.begin(), v.end()); }

// Accepts {basis index: value}; values are reduced mod p.
Functional functional_from(const CartanAlgebra& L, const std::map<std::size_t, std::int64_t>& chi) {
    auto out = Functional::zero(L);
    const auto p = static_cast<std::int64_t>(L.characteristic());
    for (auto [k, v] : chi) {
        if (k >= L.dim()) throw py::index_error("basis index " + std::to_string(k) + " out of range");
        out[k] = static_cast<Residue>(((v % p) + p) % p);
    }
    return out;
}

py::dict check_dict(const CheckResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["anchor"] = r.anchor;
    d["passed"] = r.passed;
    d["checked"] = r.checked;
    d["failures"] = r.failures;
    d["detail"] = r.detail;
    return d;
}

py::dict flatten_dict(const CartanAlgebra& L, const FlattenResult& f) {
    py::dict d;
    d["status"] = to_string(f.status);
    d["ok"] = f.ok();
    d["result"] = f.result.values();
    d["y"] = f.ok() && !f.y.empty() ? to_string(L.element(f.y)) : std::string();
    d["a"] = f.a;
    d["message"] = f.message;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Restricted Cartan-type Lie algebras W, S, H, K over GF(p) with exact arithmetic.";

    py::class_<CartanAlgebra, std::shared_ptr<CartanAlgebra>>(m, "Algebra")
        .def(py::init([](const std::string& family, int n, std::uint32_t p) {
                 return std::make_shared<CartanAlgebra>(build_algebra(parse_family(family), n, p));
             }),
             py::arg("family"), py::arg("n"), py::arg("p"))
        .def_property_readonly("name", &CartanAlgebra::name)
        .def_property_readonly("family", [](const CartanAlgebra& L) { return to_string(L.family()); })
        .def_property_readonly("n", &CartanAlgebra::nvars)
        .def_property_readonly("p", &CartanAlgebra::characteristic)
        .def_property_readonly("dim", &CartanAlgebra::dim)
        .def("__len__", &CartanAlgebra::dim)
        .def("__repr__", [](const CartanAlgebra& L) { return "<Algebra " + L.name() + ", dim " + std::to_string(L.dim()) + ">"; })
        .def("basis", [](const CartanAlgebra& L, std::size_t k) { return to_string(L.basis(k)); }, py::arg("k"))
        .def("label", [](const CartanAlgebra& L, std::size_t k) {
                 const auto& lab = L.label(k);
                 return py::make_tuple(lab.map.tag(), lab.alpha.exponents());
             }, py::arg("k"))
        .def("degree", [](const CartanAlgebra& L, std::size_t k, bool alternate) {
                 return L.degree(k, alternate ? Grading::Alternate : Grading::Standard);
             }, py::arg("k"), py::arg("alternate") = false)
        .def("graded_dims", [](const CartanAlgebra& L, bool alternate) {
                 std::map<int, std::size_t> dims;
                 for (std::size_t k = 0; k < L.dim(); ++k) ++dims[L.degree(k, alternate ? Grading::Alternate : Grading::Standard)];
                 return dims;
             }, py::arg("alternate") = false)
        .def("bracket", [](const CartanAlgebra& L, std::size_t i, std::size_t j) {
                 if (i >= L.dim() || j >= L.dim()) throw py::index_error("basis index out of range");
                 const auto s = L.bracket(i, j);
                 return Sparse(s.begin(), s.end());
             }, py::arg("i"), py::arg("j"), "[b_i, b_j] as {index: coefficient}.")
        .def("pmap", [](const CartanAlgebra& L, std::size_t k) { return to_dict(L.pmap(k)); }, py::arg("k"));

    m.def("expected_dimension", [](const std::string& f, int n, std::uint32_t p) {
        return expected_dimension(parse_family(f), n, p);
    }, py::arg("family"), py::arg("n"), py::arg("p"));

    m.def("suite_names", &suite_names);
    m.def("verify", [](const CartanAlgebra& L, const std::string& suite, std::size_t samples, std::uint64_t seed, int degree) {
        py::list out;
        for (const auto& r : run_suite(L, suite, SuiteOptions{samples, seed, degree})) out.append(check_dict(r));
        return out;
    }, py::arg("algebra"), py::arg("suite") = "all", py::arg("samples") = 0, py::arg("seed") = 1, py::arg("degree") = 0);

    m.def("export_json", &export_json, py::arg("algebra"));
    m.def("check_table", [](const std::string& text, std::size_t samples, std::uint64_t seed) {
        return check_dict(check_table_against_formula(import_json(text), samples, seed));
    }, py::arg("text"), py::arg("samples") = 100, py::arg("seed") = 1,
       "Parses an exported table and compares sampled brackets with the polynomial formula.");

    m.def("rectify", [](const CartanAlgebra& L, const std::map<std::size_t, std::int64_t>& chi) {
        const auto r = rectify(L, functional_from(L, chi));
        py::list steps;
        for (const auto& s : r.steps) {
            py::dict d;
            d["target"] = s.target;
            d["t"] = s.t;
            d["map_tag"] = s.map_tag;
            d["beta"] = s.beta.exponents();
            d["E"] = s.E.empty() ? std::string("0") : to_string(L.element(s.E));
            d["c"] = s.c;
            d["fallback"] = s.fallback;
            steps.append(d);
        }
        py::dict d;
        d["result"] = r.result.values();
        d["steps"] = steps;
        d["fallbacks"] = r.fallbacks;
        d["certified"] = r.g.certified;
        return d;
    }, py::arg("algebra"), py::arg("chi"), "Moves chi in L*_{<=1} with chi_1 != 0 to chi_0 + chi_1.");

    m.def("flatten", [](const CartanAlgebra& L, const std::map<std::size_t, std::int64_t>& chi) {
        return flatten_dict(L, flatten_negative(L, functional_from(L, chi)));
    }, py::arg("algebra"), py::arg("chi"), "Finds g with (g^{-1}.chi)_- = 0.");

    m.def("flattener_witness", [](const CartanAlgebra& L) { return Flattener(L).witness_functional().values(); },
          py::arg("algebra"));

    m.def("injectivity", [](const CartanAlgebra& L, bool corrected) {
        const auto w = injectivity_witness(L, corrected ? WitnessForm::Corrected : WitnessForm::Printed);
        py::dict d;
        d["x"] = to_string(w.x);
        d["rank"] = w.rank;
        d["dim_l0"] = w.dim_l0;
        d["injective"] = w.injective();
        return d;
    }, py::arg("algebra"), py::arg("corrected") = false);

    m.def("invariants", [](const CartanAlgebra& L, int degree) {
        std::vector<std::string> out;
        for (const auto& f : fixed_space(L, degree, invariant_generators(L).autos)) out.push_back(to_string(L, f));
        return out;
    }, py::arg("algebra"), py::arg("degree"), "Basis of the invariants of degree <= d, printed.");

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_RuntimeError);
}
