#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bernsum/cli.hpp"
#include "bernsum/distributions.hpp"
#include "bernsum/genfun.hpp"
#include "bernsum/oracle.hpp"
#include "bernsum/tail_moments.hpp"

namespace py = pybind11;
using namespace bernsum;

namespace {

py::object py_bigint(const Integer& z) {
    static py::object toint = py::module_::import("builtins").attr("int");
    return toint(z.get_str());
}

py::object py_fraction(const Rational& r) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py_bigint(r.numerator()), py_bigint(r.denominator()));
}

py::object py_scalar(const Scalar& s) {
    if (s.is_exact()) return py_fraction(s.rat());
    return py::float_(s.to_double());
}

Scalar scalar_from_py(py::handle v) {
    if (py::isinstance<py::str>(v)) return Scalar::parse(v.cast<std::string>());
    if (py::isinstance<py::int_>(v)) return Scalar(Rational::parse(py::str(v).cast<std::string>()));
    if (py::isinstance<py::float_>(v)) return Scalar::approx(v.cast<double>());
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    if (py::isinstance(v, Fraction))
        return Scalar(Rational(Integer(py::str(v.attr("numerator")).cast<std::string>()),
                               Integer(py::str(v.attr("denominator")).cast<std::string>())));
    throw SpecError("expected int, float, Fraction, or \"a/b\" string");
}

DistPtr dist_from_py(py::dict spec) {
    nlohmann::json j = nlohmann::json::object();
    for (auto item : spec) {
        const std::string key = py::str(item.first).cast<std::string>();
        py::handle v = item.second;
        if (py::isinstance<py::str>(v)) {
            j[key] = v.cast<std::string>();
        } else if (py::isinstance<py::bool_>(v)) {
            j[key] = v.cast<bool>();
        } else if (py::isinstance<py::int_>(v)) {
            j[key] = v.cast<long>();
        } else if (py::isinstance<py::float_>(v)) {
            j[key] = v.cast<double>();
        } else if (py::isinstance<py::list>(v)) {
            nlohmann::json arr = nlohmann::json::array();
            for (auto e : v.cast<py::list>()) {
                if (py::isinstance<py::str>(e))
                    arr.push_back(e.cast<std::string>());
                else if (py::isinstance<py::float_>(e))
                    arr.push_back(e.cast<double>());
                else
                    arr.push_back(e.cast<long>());
            }
            j[key] = arr;
        } else {
            throw SpecError("unsupported value for spec field '" + key + "'");
        }
    }
    return parse_dist(j);
}

MomentKind kind_from_py(const std::string& kind) { return moment_kind_from_string(kind); }

py::list scalars_to_py(const std::vector<Scalar>& values) {
    py::list out;
    for (const auto& v : values) out.append(py_scalar(v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_bernsum, m) {
    m.doc() = "Exact moments, PMFs and generating functions of Bernoulli-sum random variables";

    // combinatorial kernel; big integers cross as Python ints
    m.def("surjections", [](long k, long mm) { return py_bigint(combinat::surjections(k, mm)); },
          py::arg("k"), py::arg("m"));
    m.def("stirling2", [](long k, long mm) { return py_bigint(combinat::stirling2(k, mm)); },
          py::arg("k"), py::arg("m"));
    m.def("stirling1_signed", [](long k, long mm) { return py_bigint(combinat::stirling1_signed(k, mm)); },
          py::arg("k"), py::arg("m"));
    m.def("bell", [](long k) { return py_bigint(combinat::bell(k)); }, py::arg("k"));
    m.def("binom", [](long a, long b) { return py_bigint(combinat::binom(a, b)); },
          py::arg("a"), py::arg("b"));
    m.def("harmonic", [](long r) { return py_fraction(combinat::harmonic(r)); }, py::arg("r"));
    m.def("weighted_falling_sum",
          [](long mm, long r) { return py_bigint(combinat::weighted_falling_sum(mm, r)); },
          py::arg("m"), py::arg("r"));
    m.def("falling", [](py::handle x, long k) { return py_scalar(combinat::falling(scalar_from_py(x), k)); },
          py::arg("x"), py::arg("k"));

    m.def(
        "moments",
        [](py::dict spec, const std::string& kind, int kmax, const std::string& method) {
            DistPtr dist = dist_from_py(spec);
            MomentReport rep;
            if (method == "closed")
                rep = closed_form_report(*dist, kind_from_py(kind), kmax);
            else if (method == "engine")
                rep = engine_report(dist->as_joint_model(), kind_from_py(kind), kmax);
            else if (method == "tail")
                throw SpecError("use tail_moment()/tail_factorial_moment() for the tail route");
            else
                throw SpecError("method must be closed or engine");
            return scalars_to_py(rep.values);
        },
        py::arg("spec"), py::arg("kind") = "raw", py::arg("kmax") = 4, py::arg("method") = "closed",
        "Moments k = 0..kmax as Fractions (exact path) or floats");

    m.def(
        "expected_factorial",
        [](py::dict spec) {
            return py_scalar(closed_form_report(*dist_from_py(spec), MomentKind::ExpectedFactorial, 0)
                                 .values[0]);
        },
        py::arg("spec"));

    m.def(
        "pmf",
        [](py::dict spec) {
            DistPtr dist = dist_from_py(spec);
            if (!dist->finite_support()) throw SpecError("pmf() needs finite support");
            py::dict out;
            for (long x = dist->support_min(); x <= dist->support_max(); ++x)
                out[py::int_(x)] = py_scalar(dist->pmf(x));
            return out;
        },
        py::arg("spec"), "PMF as {x: probability}");

    m.def(
        "tail",
        [](py::dict spec, long M) { return py_scalar(dist_from_py(spec)->tail(M)); },
        py::arg("spec"), py::arg("M"));

    m.def(
        "tail_moment",
        [](py::dict spec, int k) {
            return py_scalar(tail::moment_from_tail(tail::count_dist_from(dist_from_py(spec)), k).value);
        },
        py::arg("spec"), py::arg("k"), "E(N^k) through the upper-tail formula");

    m.def(
        "tail_factorial_moment",
        [](py::dict spec, int k) {
            return py_scalar(
                tail::factorial_moment_from_tail(tail::count_dist_from(dist_from_py(spec)), k).value);
        },
        py::arg("spec"), py::arg("k"));

    m.def(
        "gf",
        [](py::dict spec, const std::string& kind, int order) {
            DistPtr dist = dist_from_py(spec);
            auto skind = genfun::series_kind_from_string(kind);
            if (skind == genfun::SeriesKind::Pgf) {
                const int deg = static_cast<int>(dist->support_max());
                std::vector<Scalar> facts;
                for (int j = 0; j <= deg; ++j)
                    facts.push_back(dist->closed_form_moment(MomentKind::Factorial, j));
                auto pgf = genfun::pgf_from_fmgf(genfun::fmgf_series(facts, deg), true);
                pgf.coeffs.resize(std::min<size_t>(pgf.coeffs.size(), order + 1));
                return scalars_to_py(pgf.coeffs);
            }
            std::vector<Scalar> values;
            const auto mk = skind == genfun::SeriesKind::Mgf ? MomentKind::Raw : MomentKind::Factorial;
            for (int j = 0; j <= order; ++j) values.push_back(dist->closed_form_moment(mk, j));
            return scalars_to_py(genfun::mgf_series(values, order).coeffs);
        },
        py::arg("spec"), py::arg("kind") = "fmgf", py::arg("order") = 4,
        "Series coefficients c_0..c_order of the mgf/fmgf/pgf");

    m.def(
        "verify",
        [](py::dict spec, int kmax) {
            nlohmann::json j = dist_from_py(spec)->spec_json();
            std::ostringstream out, err;
            int code = cli::run({"verify", "--spec", j.dump(), "--kmax", std::to_string(kmax)}, out, err);
            if (code == 2 || code == 3) throw SpecError(err.str());
            return code == 0;
        },
        py::arg("spec"), py::arg("kmax") = 4,
        "True iff closed forms, engine, oracle and tail routes all agree");

    m.def(
        "monte_carlo",
        [](py::dict spec, int kmax, long samples, std::uint64_t seed) {
            auto r = oracle::monte_carlo(*dist_from_py(spec), kmax, samples, seed);
            py::dict out;
            out["raw"] = scalars_to_py(r.raw);
            out["stderr"] = py::cast(r.stderr_raw);
            out["samples"] = py::int_(*r.sample_count);
            out["rng"] = py::str(r.rng);
            return out;
        },
        py::arg("spec"), py::arg("kmax") = 2, py::arg("samples") = 100000, py::arg("seed") = 12345);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the CLI in-process; returns (exit_code, stdout, stderr)");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
