#include "parataur/decide.hpp"
#include "parataur/error.hpp"
#include "parataur/mcm.hpp"
#include "parataur/model.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace parataur;

namespace {

py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_fraction(q));
}

Rational to_rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational(py::str(h).cast<std::string>(), 10);
    return parse_rational(py::str(h).cast<std::string>());
}

py::dict valuation_dict(const Pta& pta, const ParamValuation& v) {
    py::dict d;
    for (std::size_t p = 0; p < pta.params.size(); ++p) d[py::str(pta.params[p])] = fraction(v[p]);
    return d;
}

py::list param_names(const Pta& pta, const std::vector<std::size_t>& ps) {
    py::list out;
    for (auto p : ps) out.append(pta.params[p]);
    return out;
}

py::dict classify_dict(const Pta& pta) {
    const auto c = classify(pta);
    py::dict d;
    if (c.lu_partition) {
        py::dict lu;
        lu["lower"] = param_names(pta, c.lu_partition->first);
        lu["upper"] = param_names(pta, c.lu_partition->second);
        d["lu_partition"] = lu;
    } else {
        d["lu_partition"] = py::none();
    }
    d["is_closed"] = c.is_closed;
    d["is_bounded"] = c.is_bounded;
    d["bounds_all_closed"] = c.bounds_all_closed;
    d["is_reset_pta"] = c.is_reset_pta;
    d["ip_sufficient"] = c.ip_sufficient;
    return d;
}

Budget make_budget(std::size_t max_states, std::size_t max_depth, std::size_t max_valuations) {
    return Budget{max_states, max_depth, max_valuations};
}

py::dict check(const Pta& pta, const std::string& prop_name, const std::vector<std::string>& target_names,
               std::size_t max_states, std::size_t max_depth, bool assert_ip) {
    const Property prop = parse_property(prop_name);
    const auto targets = resolve_locations(pta, target_names);
    const Budget budget = make_budget(max_states, max_depth, Budget{}.max_valuations);
    py::dict d;
    d["property"] = std::string(to_string(prop));
    if (prop == Property::IP) {
        const auto r = ip_check(pta, budget);
        d["ip_status"] = std::string(to_string(r.status));
        d["answer"] = r.status == IpStatus::Refuted              ? "empty"
                      : r.status == IpStatus::ConfirmedUpToBudget ? "unknown"
                                                                  : "nonempty";
        if (r.refuting_state) d["refuting_location"] = pta.locations[r.refuting_state->location].name;
        return d;
    }
    Verdict v;
    switch (prop) {
        case Property::EF: v = ef_emptiness(pta, targets, EfOptions{budget, assert_ip}); break;
        case Property::EFU: v = ef_universality(pta, targets); break;
        case Property::EC: v = ec_emptiness(pta); break;
        case Property::EG: v = eg_emptiness(pta, targets, budget); break;
        case Property::ED: v = ed_emptiness(pta, budget); break;
        case Property::IP: break;
    }
    d["answer"] = std::string(to_string(v.answer));
    d["method"] = v.method;
    d["budget_hit"] = v.budget_hit;
    if (v.witness) {
        py::dict w;
        w["valuation"] = valuation_dict(pta, v.witness->valuation);
        w["path"] = v.witness->path;
        w["confirmed"] = confirm_witness(pta, prop, targets, v.witness->valuation);
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Parametric timed automata: classification, decision procedures and synthesis";

    // The module attribute keeps the type alive.
    static py::handle error_type = py::exception<Error>(m, "ParatauError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto type = py::reinterpret_borrow<py::object>(error_type);
            py::object exc = type(std::string(to_string(e.kind())) + ": " + e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    const Budget defaults;
    py::class_<Pta>(m, "Model")
        .def_static("from_json", &parse_model, py::arg("text"))
        .def("to_json", &serialize_model)
        .def_property_readonly("clocks", [](const Pta& p) { return p.clocks; })
        .def_property_readonly("parameters", [](const Pta& p) { return p.params; })
        .def_property_readonly("locations", [](const Pta& p) {
            std::vector<std::string> out;
            for (const auto& l : p.locations) out.push_back(l.name);
            return out;
        })
        .def("classify", &classify_dict)
        .def("check", &check, py::arg("prop"), py::arg("targets") = std::vector<std::string>{},
             py::arg("max_states") = defaults.max_states, py::arg("max_depth") = defaults.max_depth,
             py::arg("assert_ip") = false)
        .def(
            "synth_int",
            [](const Pta& pta, const std::vector<std::string>& targets, std::size_t max_valuations) {
                Budget b;
                b.max_valuations = max_valuations;
                py::list out;
                for (const auto& v : ef_synth_int(pta, resolve_locations(pta, targets), b)) {
                    out.append(valuation_dict(pta, v));
                }
                return out;
            },
            py::arg("targets"), py::arg("max_valuations") = defaults.max_valuations)
        .def(
            "explore",
            [](const Pta& pta, std::size_t max_states) {
                ExploreOptions opts;
                opts.budget.max_states = max_states;
                const auto g = explore(SymbolicModel(pta), opts);
                py::list states;
                for (const auto& s : g.states) {
                    py::dict d;
                    d["location"] = pta.locations[s.location].name;
                    d["constraint"] = s.constraint.row_strings();
                    states.append(d);
                }
                py::dict d;
                d["states"] = states;
                d["num_edges"] = g.edges.size();
                d["complete"] = g.complete();
                return d;
            },
            py::arg("max_states") = defaults.max_states)
        .def(
            "reaches",
            [](const Pta& pta, const py::dict& valuation, const std::vector<std::string>& targets) {
                ParamValuation v(pta.params.size());
                for (std::size_t p = 0; p < pta.params.size(); ++p) {
                    if (!valuation.contains(pta.params[p])) {
                        throw Error(ErrorKind::InvalidArgument, "no value for parameter '" + pta.params[p] + "'");
                    }
                    v[p] = to_rational(valuation[py::str(pta.params[p])]);
                }
                return confirm_witness(pta, Property::EF, resolve_locations(pta, targets), v);
            },
            py::arg("valuation"), py::arg("targets"));

    m.def(
        "compile_2cm",
        [](const std::string& text, const std::string& variant) {
            if (variant != "closed" && variant != "strict") {
                throw Error(ErrorKind::InvalidArgument, "unknown variant '" + variant + "'");
            }
            return compile(parse_machine(text), variant == "closed" ? EncodingVariant::Closed : EncodingVariant::Strict);
        },
        py::arg("text"), py::arg("variant") = "closed");

    m.def(
        "simulate_2cm",
        [](const std::string& text, std::uint64_t max_steps) {
            const auto machine = parse_machine(text);
            const auto r = simulate(machine, max_steps);
            py::dict d;
            d["halted"] = r.halted;
            d["steps"] = r.steps;
            d["max_counter"] = r.max_counter;
            d["budget_hit"] = r.budget_hit;
            d["final_state"] = machine.states[r.trace.back().state];
            return d;
        },
        py::arg("text"), py::arg("max_steps") = 10000);
}
