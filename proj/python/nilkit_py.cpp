#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilkit/acceptance.hpp"
#include "nilkit/approximate.hpp"
#include "nilkit/collection.hpp"
#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/pgroups.hpp"
#include "nilkit/progressions.hpp"
#include "nilkit/text.hpp"

namespace py = pybind11;

namespace pybind11::detail {

template <>
struct type_caster<nilkit::Int> {
    PYBIND11_TYPE_CASTER(nilkit::Int, const_name("int"));

    bool load(handle src, bool) {
        if (!src || PyFloat_Check(src.ptr())) return false;
        object index = reinterpret_steal<object>(PyNumber_Index(src.ptr()));
        if (!index) {
            PyErr_Clear();
            return false;
        }
        value = nilkit::Int(str(index).cast<std::string>());
        return true;
    }

    static handle cast(const nilkit::Int& v, return_value_policy, handle) {
        return PyLong_FromString(v.str().c_str(), nullptr, 10);
    }
};

}  // namespace pybind11::detail

namespace {

using nilkit::BackendPtr;
using PyGroup = std::shared_ptr<nilkit::GroupBackend>;
using nilkit::Element;

nilkit::Subset make_subset(const BackendPtr& g, const std::vector<Element>& elements) {
    std::vector<Element> normalized;
    normalized.reserve(elements.size());
    for (const auto& e : elements) normalized.push_back(g->normalize(e));
    return nilkit::Subset(g, std::move(normalized));
}

nilkit::ProgressionSpec make_spec(const BackendPtr& g, const std::vector<std::string>& gens,
                                  const std::vector<std::int64_t>& lengths) {
    nilkit::ProgressionSpec spec{g, {}, lengths};
    const auto assignment = g->generators();
    for (const auto& text : gens) {
        auto word = nilkit::parse_word(text, static_cast<int>(assignment.size()), 0);
        spec.generators.push_back(nilkit::evaluate_word(*g, assignment, word));
    }
    spec.validate();
    return spec;
}

py::tuple ratio(const nilkit::Ratio& r) { return py::make_tuple(r.numerator(), r.denominator()); }

}  // namespace

PYBIND11_MODULE(_nilkit, m) {
    m.doc() = "Exact computation in finitely generated nilpotent groups";

    auto base = py::register_exception<nilkit::Error>(m, "NilkitError", PyExc_ValueError);
    py::register_exception<nilkit::InvalidParameter>(m, "InvalidParameter", base);
    py::register_exception<nilkit::InvalidInput>(m, "InvalidInput", base);
    py::register_exception<nilkit::MalformedCommutator>(m, "MalformedCommutator", base);
    py::register_exception<nilkit::MissingAssignment>(m, "MissingAssignment", base);
    py::register_exception<nilkit::PreconditionViolation>(m, "PreconditionViolation", base);
    py::register_exception<nilkit::UnsupportedBackend>(m, "UnsupportedBackend", base);
    py::register_exception<nilkit::InconsistentTrace>(m, "InconsistentTrace", base);
    py::register_exception<nilkit::OutOfRange>(m, "OutOfRange", base);
    py::register_exception<nilkit::ResourceLimit>(m, "ResourceLimit", base);
    py::register_exception<nilkit::SyntaxError>(m, "SyntaxError", base);

    m.def("witt_count", &nilkit::witt_count, py::arg("rank"), py::arg("weight"));

    m.def(
        "basic_commutators",
        [](int rank, int step) {
            std::vector<std::string> out;
            for (const auto& c : nilkit::basic_table(rank, step)->entries()) out.push_back(c.to_string());
            return out;
        },
        py::arg("rank"), py::arg("step"));

    m.def(
        "collect",
        [](const std::string& text, int rank, int step) {
            const auto result = nilkit::collect(nilkit::parse_word(text, rank, step));
            std::vector<std::pair<std::string, std::int64_t>> out;
            for (const auto& t : result.form.terms()) out.emplace_back(t.commutator.to_string(), t.exponent);
            return out;
        },
        py::arg("word"), py::arg("rank"), py::arg("step"));

    m.def(
        "collected_exponents",
        [](const std::string& text, int rank, int step) {
            const auto result = nilkit::collect(nilkit::parse_word(text, rank, step));
            return result.form.exponents();
        },
        py::arg("word"), py::arg("rank"), py::arg("step"));

    py::class_<nilkit::GroupBackend, std::shared_ptr<nilkit::GroupBackend>>(m, "Group")
        .def(py::init([](const std::string& spec) {
                 return std::const_pointer_cast<nilkit::GroupBackend>(nilkit::parse_group_spec(spec));
             }),
             py::arg("spec"))
        .def_property_readonly("spec", &nilkit::GroupBackend::spec)
        .def_property_readonly("is_finite", &nilkit::GroupBackend::is_finite)
        .def_property_readonly("order", &nilkit::GroupBackend::order)
        .def("identity", &nilkit::GroupBackend::identity)
        .def("generators", &nilkit::GroupBackend::generators)
        .def("elements", &nilkit::GroupBackend::elements)
        .def("normalize", &nilkit::GroupBackend::normalize, py::arg("raw"))
        .def("multiply", &nilkit::GroupBackend::multiply, py::arg("a"), py::arg("b"))
        .def("invert", &nilkit::GroupBackend::invert, py::arg("a"))
        .def("commutator",
             [](const nilkit::GroupBackend& g, const Element& a, const Element& b) {
                 return nilkit::commutator(g, a, b);
             },
             py::arg("a"), py::arg("b"))
        .def("evaluate",
             [](const nilkit::GroupBackend& g, const std::string& text) {
                 const auto assignment = g.generators();
                 return nilkit::evaluate_word(g, assignment,
                                              nilkit::parse_word(text, static_cast<int>(assignment.size()), 0));
             },
             py::arg("word"))
        .def("parse", &nilkit::GroupBackend::parse, py::arg("text"))
        .def("format", &nilkit::GroupBackend::format, py::arg("element"))
        .def("__repr__", [](const nilkit::GroupBackend& g) { return "Group('" + g.spec() + "')"; });

    m.def(
        "product_set",
        [](const PyGroup& g, const std::vector<Element>& a, const std::vector<Element>& b) {
            return nilkit::product_set(make_subset(g, a), make_subset(g, b)).elements();
        },
        py::arg("group"), py::arg("a"), py::arg("b"));

    m.def(
        "power_set",
        [](const PyGroup& g, const std::vector<Element>& a, int n) {
            return nilkit::power_set(make_subset(g, a), n).elements();
        },
        py::arg("group"), py::arg("a"), py::arg("n"));

    m.def(
        "doubling_constant",
        [](const PyGroup& g, const std::vector<Element>& a) {
            return ratio(nilkit::doubling_constant(make_subset(g, a)));
        },
        py::arg("group"), py::arg("a"));

    m.def(
        "minimal_witness",
        [](const PyGroup& g, const std::vector<Element>& a) {
            const auto w = nilkit::minimal_witness(make_subset(g, a));
            py::dict out;
            out["k"] = w.k;
            out["x"] = w.x.elements();
            out["optimal"] = w.optimal;
            out["lower_bound"] = w.lower_bound;
            out["verified"] = nilkit::verify_witness(w);
            return out;
        },
        py::arg("group"), py::arg("a"));

    m.def(
        "progression",
        [](const PyGroup& g, const std::vector<std::string>& gens, const std::vector<std::int64_t>& lengths,
           const std::string& kind) {
            const auto spec = make_spec(g, gens, lengths);
            if (kind == "ordered") return nilkit::enumerate_ordered(spec).set.elements();
            if (kind == "star") return nilkit::enumerate_nilprogression(spec).set.elements();
            if (kind == "nilpotent") return nilkit::enumerate_nilpotent_progression(spec).set.elements();
            if (kind == "ball") return nilkit::enumerate_ball(spec).set.elements();
            throw nilkit::InvalidParameter("unknown progression kind '" + kind + "'");
        },
        py::arg("group"), py::arg("gens"), py::arg("lengths"), py::arg("kind") = "ordered");

    m.def(
        "check_chain",
        [](const PyGroup& g, const std::vector<std::string>& gens, const std::vector<std::int64_t>& lengths,
           int m_cap) {
            const auto r = nilkit::check_chain(make_spec(g, gens, lengths), m_cap);
            py::dict out;
            out["ordered_size"] = r.ordered_size;
            out["star_size"] = r.star_size;
            out["nilpotent_size"] = r.nilpotent_size;
            out["ordered_in_star"] = r.ordered_in_star;
            out["star_in_nilpotent"] = r.star_in_nilpotent;
            out["minimal_m"] = r.minimal_m;
            out["step"] = r.step;
            return out;
        },
        py::arg("group"), py::arg("gens"), py::arg("lengths"), py::arg("m_cap") = 8);

    m.def(
        "lower_central_series",
        [](const PyGroup& g) {
            const auto chain = nilkit::lower_central_series(g);
            std::vector<std::size_t> sizes;
            for (const auto& t : chain.terms) sizes.push_back(t.size());
            return py::make_tuple(sizes, chain.step);
        },
        py::arg("group"));

    m.def(
        "invariant_factors", [](const PyGroup& g) { return nilkit::invariant_factors(*g); }, py::arg("group"));
    m.def(
        "abelian_rank", [](const PyGroup& g) { return nilkit::abelian_rank(*g); }, py::arg("group"));
    m.def(
        "frattini", [](const PyGroup& g) { return nilkit::frattini(g).elements(); }, py::arg("group"));
    m.def(
        "burnside_basis",
        [](const PyGroup& g, const std::vector<Element>& s) {
            std::vector<Element> normalized;
            for (const auto& e : s) normalized.push_back(g->normalize(e));
            return nilkit::burnside_basis(g, normalized);
        },
        py::arg("group"), py::arg("generators"));

    m.def("acceptance_suites", &nilkit::acceptance_suites);
    m.def(
        "run_acceptance",
        [](const std::string& suite) {
            std::vector<py::dict> out;
            for (const auto& r : nilkit::run_acceptance(suite)) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["passed"] = r.pass;
                d["detail"] = r.detail;
                out.push_back(d);
            }
            return out;
        },
        py::arg("suite") = "all");
}
