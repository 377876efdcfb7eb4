#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsbseq/twoadic.hpp"

namespace py = pybind11;
using namespace lsbseq;

namespace {

py::int_ to_py_int(const mpz_class& v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(v.get_str(16).c_str(), nullptr, 16));
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::lsb: return "lsb";
        case Provenance::bit_component: return "bit-component";
        case Provenance::b_seq: return "b-seq";
        default: return "external";
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LSB/bit-component sequences of p-ary m-sequences: autocorrelation and 2-adic complexity";

    py::register_exception<resource_limit_error>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<unsupported_prime_error>(m, "UnsupportedPrimeError", PyExc_ValueError);

    // number theory
    m.def("mod_pow", [](uint64_t b, uint64_t e, uint64_t mod) { return nt::mod_pow(b, e, mod); });
    m.def("is_prime", [](uint64_t n) { return nt::is_prime(n); });
    m.def("factorize", [](uint64_t n) {
        std::vector<std::pair<uint64_t, unsigned>> out = nt::factorize(n).factors;
        return out;
    });
    m.def("mult_order", &nt::mult_order, py::arg("a"), py::arg("modulus"), py::arg("group_order"));
    m.def("discrete_log", [](uint64_t base, uint64_t target, uint64_t p) {
        return nt::discrete_log(base, target, p);
    });
    m.def("least_primitive_root", &nt::least_primitive_root);
    m.def("primitive_roots", &nt::primitive_roots);

    // field contexts
    py::class_<FieldContext>(m, "FieldContext")
        .def_readonly("p", &FieldContext::p)
        .def_readonly("n", &FieldContext::n)
        .def_readonly("modulus", &FieldContext::modulus)
        .def_readonly("order", &FieldContext::order)
        .def_readonly("M", &FieldContext::M)
        .def_readonly("beta", &FieldContext::beta)
        .def_readonly("alpha_exponent", &FieldContext::alpha_exponent)
        .def("trace", [](const FieldContext& ctx, const std::vector<uint32_t>& coeffs) {
            if (coeffs.size() != ctx.n) throw std::invalid_argument("coefficient count must equal n");
            return ctx.trace(ExtFieldElement{coeffs});
        })
        .def("to_json", &FieldContext::to_json)
        .def("__repr__", [](const FieldContext& c) {
            return "<FieldContext p=" + std::to_string(c.p) + " n=" + std::to_string(c.n) +
                   " beta=" + std::to_string(c.beta) + ">";
        });
    m.def("build_field", &build_field, py::arg("p"), py::arg("n"));
    m.def("retarget_beta", &retarget_beta, py::arg("ctx"), py::arg("beta_target"));

    // sequences
    py::class_<PArySequence>(m, "PArySequence")
        .def_readonly("p", &PArySequence::p)
        .def_property_readonly("values",
                               [](const PArySequence& s) {
                                   return std::vector<int>(s.values.begin(), s.values.end());
                               })
        .def("period", &PArySequence::period);
    py::class_<BinarySequence>(m, "BinarySequence")
        .def("period", &BinarySequence::period)
        .def("weight", &BinarySequence::weight)
        .def("bits", [](const BinarySequence& s) {
            auto v = s.unpacked();
            return std::vector<int>(v.begin(), v.end());
        })
        .def_property_readonly("provenance",
                               [](const BinarySequence& s) { return provenance_name(s.provenance); })
        .def_readonly("p", &BinarySequence::p)
        .def_readonly("beta", &BinarySequence::beta)
        .def("to_json", [](const BinarySequence& s) { return to_json(s); })
        .def("__eq__", [](const BinarySequence& a, const BinarySequence& b) { return a == b; })
        .def("__len__", &BinarySequence::period);
    m.def("binary_sequence_from_json", &binary_sequence_from_json);
    m.def("m_sequence", &m_sequence, py::arg("ctx"), py::arg("max_period") = kDefaultMaxPeriod);
    m.def("bit_component", &bit_component, py::arg("seq"), py::arg("i"), py::arg("zero_as_p") = true);
    m.def("lsb_sequence", &lsb_sequence);
    m.def("b_sequence", &b_sequence, py::arg("p"), py::arg("beta"));
    m.def("cyclic_shift", &cyclic_shift, py::arg("seq"), py::arg("tau"));
    m.def("shift_offset", &shift_offset, py::arg("a"), py::arg("b"));

    // autocorrelation
    m.def("ac_at", &ac_at, py::arg("seq"), py::arg("tau"));
    m.def("ac_profile", [](const BinarySequence& s, uint64_t max_n2) {
        return ac_profile(s, max_n2).values;
    }, py::arg("seq"), py::arg("max_n2") = kDefaultBruteCap);
    py::class_<AcbVector>(m, "AcbVector")
        .def_readonly("p", &AcbVector::p)
        .def_readonly("beta", &AcbVector::beta)
        .def_readonly("acb", &AcbVector::acb);
    m.def("acb_vector", &acb_vector, py::arg("p"), py::arg("beta"));
    m.def("acb_full", &acb_full, py::arg("acb"), py::arg("tau_prime"));
    m.def("predicted_ac", &predicted_ac, py::arg("ctx"), py::arg("acb"), py::arg("tau"));
    py::class_<ClosedFormReport>(m, "ClosedFormReport")
        .def_readonly("N", &ClosedFormReport::N)
        .def_readonly("sampled", &ClosedFormReport::sampled)
        .def_readonly("checked", &ClosedFormReport::checked)
        .def_readonly("mismatches", &ClosedFormReport::mismatches);
    m.def("verify_closed_form",
          [](const FieldContext& ctx, uint64_t brute_cap, uint64_t sample, uint64_t seed) {
              return verify_closed_form(ctx, brute_cap, sample, seed);
          },
          py::arg("ctx"), py::arg("brute_cap") = kDefaultBruteCap,
          py::arg("sample") = kDefaultSampleSize, py::arg("seed") = kDefaultSeed);
    py::class_<AcbTableRow>(m, "AcbTableRow")
        .def_readonly("p", &AcbTableRow::p)
        .def_readonly("betas", &AcbTableRow::betas)
        .def_readonly("acb", &AcbTableRow::acb);
    m.def("acb_table", &acb_table, py::arg("p_max"));
    m.def("reference_acb_table", []() { return reference_acb_table(); });
    py::class_<AcbTableDiff>(m, "AcbTableDiff")
        .def_readonly("p", &AcbTableDiff::p)
        .def_readonly("beta", &AcbTableDiff::beta)
        .def_readonly("index", &AcbTableDiff::index)
        .def_readonly("computed", &AcbTableDiff::computed)
        .def_readonly("reference", &AcbTableDiff::reference);
    m.def("acb_table_diff", &acb_table_diff, py::arg("p_max"));

    // 2-adic complexity
    m.def("s_of_two", [](const BinarySequence& s) { return to_py_int(s_of_two(s)); });
    m.def("t_inverse_mod", [](const BinarySequence& s) { return to_py_int(t_inverse_mod(s)); });
    m.def("autocorrelation_congruence_holds", [](const BinarySequence& s) {
        return autocorrelation_congruence_holds(s, ac_profile(s));
    });
    m.def("exact_phi2", &exact_phi2, py::arg("seq"), py::arg("max_bits") = kDefaultMaxBits);
    m.def("gcd_halves", [](const BinarySequence& s) {
        auto h = gcd_halves(s);
        return py::make_tuple(to_py_int(h.plus), to_py_int(h.minus));
    });
    m.def("predicted_gcd", [](uint64_t p, unsigned n, uint64_t M) {
        return to_py_int(predicted_gcd(p, n, M));
    }, py::arg("p"), py::arg("n"), py::arg("M"));
    m.def("predicted_gcd_halves", [](uint64_t p, unsigned n, uint64_t M) {
        auto h = predicted_gcd_halves(p, n, M);
        return py::make_tuple(to_py_int(h.plus), to_py_int(h.minus));
    });
    m.def("phi2_lower_bound", &phi2_lower_bound, py::arg("p"), py::arg("n"), py::arg("N"));
    m.def("bound_supported", &bound_supported);
    m.def("weakest_bound_constant", &weakest_bound_constant);
    m.def("conjecture_main_part", &conjecture_main_part, py::arg("p"), py::arg("N"));
    py::class_<ConjectureReport>(m, "ConjectureReport")
        .def_readonly("p", &ConjectureReport::p)
        .def_readonly("n", &ConjectureReport::n)
        .def_readonly("N", &ConjectureReport::N)
        .def_readonly("phi2", &ConjectureReport::phi2)
        .def_readonly("main_part", &ConjectureReport::main_part)
        .def_readonly("c_cap", &ConjectureReport::c_cap)
        .def_readonly("cap_is_heuristic", &ConjectureReport::cap_is_heuristic)
        .def_readonly("slack", &ConjectureReport::slack)
        .def_readonly("pass_", &ConjectureReport::pass);
    m.def("conjecture_check",
          [](const BinarySequence& s, uint64_t p, unsigned n, std::optional<int64_t> cap,
             uint64_t max_bits) { return conjecture_check(s, p, n, cap, max_bits); },
          py::arg("seq"), py::arg("p"), py::arg("n"), py::arg("c_cap") = std::nullopt,
          py::arg("max_bits") = kDefaultMaxBits);
    m.def("two_adic_report",
          [](const FieldContext& ctx, const BinarySequence& lsb, uint64_t max_bits) {
              return two_adic_report(ctx, lsb, max_bits).to_json();
          },
          py::arg("ctx"), py::arg("lsb"), py::arg("max_bits") = kDefaultMaxBits,
          "Full 2-adic pipeline for one LSB sequence, returned as a JSON string");
}
