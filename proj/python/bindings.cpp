#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"
#include "qhfib/fixture.hpp"
#include "qhfib/validator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace qhfib;

namespace {

Rational to_rational(const py::handle& obj) {
    if (py::isinstance<py::int_>(obj)) return parse_rational(py::str(obj).cast<std::string>());
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator") && !py::isinstance<py::str>(obj)) {
        return parse_rational(py::str(obj.attr("numerator")).cast<std::string>() + "/" +
                              py::str(obj.attr("denominator")).cast<std::string>());
    }
    return parse_rational(obj.cast<std::string>());
}

py::object to_fraction(const Rational& q) {
    return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

py::object report_dict(const VerificationReport& r) {
    return py::module_::import("json").attr("loads")(r.to_json().dump());
}

class Manifold {
public:
    explicit Manifold(QuantumManifold qm) : qm_(std::move(qm)) {}

    std::string name() const { return qm_.model.name; }
    std::vector<std::string> labels() const { return qm_.model.labels(); }
    long minimal_chern() const { return qm_.model.N; }

    std::string product(const std::string& a, const std::string& b, const py::object& cutoff) const {
        const Rational c = to_rational(cutoff);
        const auto& m = qm_.model;
        return format_class(m, quantum_product(qm_, parse_class(m, a), parse_class(m, b), c).truncated(c));
    }

    std::optional<std::string> inverse(const std::string& a, const py::object& cutoff) const {
        const auto inv = is_unit(qm_, parse_class(qm_.model, a), to_rational(cutoff));
        if (!inv) return std::nullopt;
        return format_class(qm_.model, *inv);
    }

    py::object verify(const std::string& suite, const py::object& cutoff) const {
        return report_dict(run_suite(qm_, suite, to_rational(cutoff)));
    }

    const QuantumManifold& data() const { return qm_; }

private:
    QuantumManifold qm_;
};

class Fibration {
public:
    explicit Fibration(FibrationModel f) : f_(std::move(f)) {}

    Manifold fiber() const { return Manifold(f_.fiber); }
    std::vector<std::string> total_labels() const { return f_.total.labels(); }

    std::string section() const { return seidel_data(f_).format(sigma_phi(f_)); }

    std::string rho(const py::object& cutoff) const {
        const Rational c = to_rational(cutoff);
        return format_class(f_.fiber.model, qhfib::rho(f_, c).truncated(c));
    }

    std::string psi(const std::string& a, const py::object& cutoff) const {
        const Rational c = to_rational(cutoff);
        const auto& m = f_.fiber.model;
        return format_class(m, qhfib::psi(f_, sigma_phi(f_), parse_class(m, a), c).truncated(c));
    }

    py::dict invariants() const {
        py::dict out;
        out["Ic"] = to_fraction(invariant_Ic(f_));
        out["Iu"] = format_Iu(f_, invariant_Iu(f_));
        py::list ik;
        for (int k = 0; k <= f_.fiber.model.n + 1; ++k) ik.append(to_fraction(invariant_Ik(f_, k)));
        out["Ik"] = ik;
        return out;
    }

    py::object nonsqueezing(const py::object& kappa) const {
        const auto r = nonsqueezing_bound(f_, to_rational(kappa), 0);
        return r.bound ? to_fraction(*r.bound) : py::object(py::none());
    }

    bool splits(const py::object& cutoff) const { return ring_split_check(f_, to_rational(cutoff)).splits; }

    bool is_product() const { return is_product_bundle(f_); }

    std::string compose_rho(const Fibration& other, const py::object& cutoff) const {
        const Rational c = to_rational(cutoff);
        const auto result = compose(seidel_data(f_), seidel_data(other.f_), c);
        return format_class(f_.fiber.model, qhfib::rho(result.composite, c).truncated(c));
    }

    py::object verify(const std::string& suite, const py::object& cutoff) const {
        return report_dict(run_suite(f_, suite, to_rational(cutoff)));
    }

    std::string to_json() const { return dump_fixture({f_.fiber, f_}); }

private:
    FibrationModel f_;
};

py::object load(const std::string& path) {
    FixtureDocument doc = load_fixture(path);
    if (doc.fibration) return py::cast(Fibration(*doc.fibration));
    return py::cast(Manifold(doc.manifold));
}

py::object loads(const std::string& text) {
    FixtureDocument doc = parse_fixture_text(text);
    if (doc.fibration) return py::cast(Fibration(*doc.fibration));
    return py::cast(Manifold(doc.manifold));
}

} // namespace

PYBIND11_MODULE(_qhfib, mod) {
    mod.doc() = "Exact quantum homology of Hamiltonian fibrations over the sphere";

    static py::exception<Error> base(mod, "QHFibError");
    static py::exception<ParseError> parse(mod, "ParseError", base.ptr());
    static py::exception<TableIncomplete> incomplete(mod, "TableIncomplete", base.ptr());
    static py::exception<HypothesisFailed> hypothesis(mod, "HypothesisFailed", base.ptr());
    static py::exception<UnknownSuite> unknown(mod, "UnknownSuite", base.ptr());
    static py::exception<CutoffTooSmall> cutoff(mod, "CutoffTooSmall", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const TableIncomplete& e) {
            py::set_error(incomplete, e.what());
        } catch (const HypothesisFailed& e) {
            py::set_error(hypothesis, e.what());
        } catch (const UnknownSuite& e) {
            py::set_error(unknown, e.what());
        } catch (const CutoffTooSmall& e) {
            py::set_error(cutoff, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<Manifold>(mod, "Manifold")
        .def_property_readonly("name", &Manifold::name)
        .def_property_readonly("labels", &Manifold::labels)
        .def_property_readonly("minimal_chern", &Manifold::minimal_chern)
        .def("product", &Manifold::product, py::arg("a"), py::arg("b"), py::arg("cutoff") = 4)
        .def("inverse", &Manifold::inverse, py::arg("a"), py::arg("cutoff") = 4)
        .def("verify", &Manifold::verify, py::arg("suite") = "all", py::arg("cutoff") = 4);

    py::class_<Fibration>(mod, "Fibration")
        .def_property_readonly("fiber", &Fibration::fiber)
        .def_property_readonly("total_labels", &Fibration::total_labels)
        .def_property_readonly("section", &Fibration::section)
        .def_property_readonly("is_product", &Fibration::is_product)
        .def("rho", &Fibration::rho, py::arg("cutoff") = 4)
        .def("psi", &Fibration::psi, py::arg("a"), py::arg("cutoff") = 4)
        .def("invariants", &Fibration::invariants)
        .def("nonsqueezing", &Fibration::nonsqueezing, py::arg("kappa"))
        .def("splits", &Fibration::splits, py::arg("cutoff") = 4)
        .def("compose_rho", &Fibration::compose_rho, py::arg("other"), py::arg("cutoff") = 4)
        .def("verify", &Fibration::verify, py::arg("suite") = "all", py::arg("cutoff") = 4)
        .def("to_json", &Fibration::to_json);

    mod.def("load", &load, py::arg("path"));
    mod.def("loads", &loads, py::arg("text"));
    mod.def("product_bundle", [](const Manifold& m) { return Fibration(product_fixture(m.data())); }, py::arg("fiber"));
    mod.def("suite_names", &suite_names);
}
