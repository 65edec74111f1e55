#include <fstream>
#include <sstream>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmenv/bounds.hpp"
#include "gmenv/comparisons.hpp"
#include "gmenv/errors.hpp"
#include "gmenv/finance.hpp"
#include "gmenv/ladder.hpp"
#include "gmenv/oracle.hpp"
#include "gmenv/profile.hpp"
#include "gmenv/signed_log.hpp"

namespace py = pybind11;
using namespace gmenv;

namespace {

const char* category_name(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Argument: return "argument";
        case ErrorCategory::Infeasible: return "infeasible";
        case ErrorCategory::Io: return "io";
    }
    return "unknown";
}

// Intentionally leaked: the type object must outlive the interpreter's
// last exception, and the translator must be capture-free.
py::object* error_type = nullptr;

void translate_error(std::exception_ptr p) {
    try {
        if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
        py::object inst = (*error_type)(e.what());
        inst.attr("kind") = e.kind();
        inst.attr("category") = category_name(e.category());
        inst.attr("line") = e.line();
        PyErr_SetObject(error_type->ptr(), inst.ptr());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sharp envelopes for the product and geometric mean of a "
              "sequence known only through its length, mean and standard "
              "deviation.";
    m.attr("__version__") = "1.0.0";

    // One exception type; kind/category/line attributes carry the detail.
    error_type = new py::object(
        py::exception<Error>(m, "EnvelopeError", PyExc_ValueError));
    py::register_exception_translator(&translate_error);

    py::class_<SequenceStats>(m, "SequenceStats")
        .def(py::init<>())
        .def_readwrite("n", &SequenceStats::n)
        .def_readwrite("mean", &SequenceStats::mean)
        .def_readwrite("stddev", &SequenceStats::stddev)
        .def("__repr__", [](const SequenceStats& s) {
            std::ostringstream out;
            out << "SequenceStats(n=" << s.n << ", mean=" << s.mean
                << ", stddev=" << s.stddev << ")";
            return out.str();
        });

    m.def("stats_of",
          [](const std::vector<double>& values) { return stats_of(values); },
          py::arg("values"),
          "Two-pass mean and population standard deviation.");

    py::class_<StatProfile>(m, "StatProfile")
        .def(py::init<int, double, double>(), py::arg("n"), py::arg("mu"),
             py::arg("sigma"))
        .def_static("from_stats", &StatProfile::from_stats, py::arg("stats"))
        .def_property_readonly("n", &StatProfile::n)
        .def_property_readonly("mu", &StatProfile::mu)
        .def_property_readonly("sigma", &StatProfile::sigma)
        .def_property_readonly("ratio", &StatProfile::ratio)
        .def("__repr__", [](const StatProfile& p) {
            std::ostringstream out;
            out << "StatProfile(n=" << p.n() << ", mu=" << p.mu()
                << ", sigma=" << p.sigma() << ")";
            return out.str();
        });

    py::enum_<RegimeTag>(m, "RegimeTag")
        .value("Degenerate", RegimeTag::Degenerate)
        .value("ForcedPositive", RegimeTag::ForcedPositive)
        .value("Conditional", RegimeTag::Conditional)
        .value("InfeasiblePositive", RegimeTag::InfeasiblePositive);

    py::class_<Regime>(m, "Regime")
        .def_readonly("tag", &Regime::tag)
        .def_readonly("ratio", &Regime::ratio)
        .def("positivity_forced", &Regime::positivity_forced)
        .def("__repr__", [](const Regime& r) {
            std::ostringstream out;
            out << "Regime(tag=" << to_string(r.tag) << ", ratio=" << r.ratio
                << ")";
            return out.str();
        });

    m.def("classify", &classify, py::arg("profile"));

    py::class_<SignedLog>(m, "SignedLog")
        .def_static("of", &SignedLog::of, py::arg("x"))
        .def_readonly("sign", &SignedLog::sign)
        .def_readonly("log_abs", &SignedLog::log_abs)
        .def("value", &SignedLog::value)
        .def("__repr__", [](const SignedLog& s) {
            std::ostringstream out;
            out << "SignedLog(sign=" << s.sign << ", log_abs=" << s.log_abs
                << ")";
            return out.str();
        });

    py::class_<GmBounds>(m, "GmBounds")
        .def_readonly("lower_product", &GmBounds::lower_product)
        .def_readonly("upper_product", &GmBounds::upper_product)
        .def_readonly("lower_log", &GmBounds::lower_log)
        .def_readonly("upper_log", &GmBounds::upper_log)
        .def_readonly("lower_attained", &GmBounds::lower_attained)
        .def_readonly("regime", &GmBounds::regime)
        .def("__repr__", [](const GmBounds& b) {
            std::ostringstream out;
            out << "GmBounds(lower_product=" << b.lower_product
                << ", upper_product=" << b.upper_product << ")";
            return out.str();
        });

    m.def("upper_bound_expression", &upper_bound_expression,
          py::arg("profile"));
    m.def("lower_bound_expression", &lower_bound_expression,
          py::arg("profile"));
    m.def("product_bounds", &product_bounds, py::arg("profile"));
    m.def("geometric_mean_bounds", &geometric_mean_bounds, py::arg("profile"));
    m.def("am_gm_gap_bound", &am_gm_gap_bound, py::arg("profile"));

    py::enum_<ExtremalKind>(m, "ExtremalKind")
        .value("UpperAttaining", ExtremalKind::UpperAttaining)
        .value("LowerAttaining", ExtremalKind::LowerAttaining);

    py::class_<ExtremalSequence>(m, "ExtremalSequence")
        .def_readonly("repeated_value", &ExtremalSequence::repeated_value)
        .def_readonly("repeated_count", &ExtremalSequence::repeated_count)
        .def_readonly("outlier_value", &ExtremalSequence::outlier_value)
        .def_readonly("kind", &ExtremalSequence::kind)
        .def("expand", &ExtremalSequence::expand);

    m.def("extremal_sequence", &extremal_sequence, py::arg("profile"),
          py::arg("kind"));

    m.def("binomial", &binomial, py::arg("n"), py::arg("k"));

    py::class_<CriticalPoint>(m, "CriticalPoint")
        .def_readonly("type_index", &CriticalPoint::type_index)
        .def_readonly("complement", &CriticalPoint::complement)
        .def_readonly("high_value", &CriticalPoint::high_value)
        .def_readonly("low_value", &CriticalPoint::low_value)
        .def_readonly("multiplicity", &CriticalPoint::multiplicity);

    m.def("critical_point", &critical_point, py::arg("type_index"),
          py::arg("profile"));
    m.def("critical_value_log", &critical_value_log, py::arg("type_index"),
          py::arg("profile"));
    m.def("critical_value", &critical_value, py::arg("type_index"),
          py::arg("profile"));
    m.def("normalized_critical_value", &normalized_critical_value,
          py::arg("type_index"), py::arg("n"), py::arg("t"));
    m.def("normalized_critical_log_derivative",
          &normalized_critical_log_derivative, py::arg("type_index"),
          py::arg("n"), py::arg("t"));

    py::class_<LadderEntry>(m, "LadderEntry")
        .def_readonly("type_index", &LadderEntry::type_index)
        .def_readonly("sign", &LadderEntry::sign)
        .def_readonly("log_abs", &LadderEntry::log_abs)
        .def_readonly("value", &LadderEntry::value)
        .def_readonly("normalized", &LadderEntry::normalized)
        .def_readonly("positive", &LadderEntry::positive);

    py::class_<CriticalLadder>(m, "CriticalLadder")
        .def_readonly("profile", &CriticalLadder::profile)
        .def_readonly("entries", &CriticalLadder::entries);

    m.def("build_ladder", &build_ladder, py::arg("profile"));

    py::class_<ShellGeometry>(m, "ShellGeometry")
        .def_readonly("n", &ShellGeometry::n)
        .def_readonly("mu", &ShellGeometry::mu)
        .def_readonly("sigma", &ShellGeometry::sigma)
        .def_readonly("shell_radius", &ShellGeometry::shell_radius)
        .def_readonly("inner_radius", &ShellGeometry::inner_radius)
        .def_readonly("outer_radius", &ShellGeometry::outer_radius);

    m.def("shell_geometry", &shell_geometry, py::arg("profile"));

    py::class_<ShellSampler>(m, "ShellSampler")
        .def(py::init<const StatProfile&, std::uint64_t>(), py::arg("profile"),
             py::arg("seed"))
        .def_property_readonly("dimension", &ShellSampler::dimension)
        .def("sample",
             [](const ShellSampler& s, std::uint64_t index) {
                 std::vector<double> out(
                     static_cast<std::size_t>(s.dimension()));
                 s.sample(index, out);
                 return out;
             },
             py::arg("index"));

    m.def("sample_on_shell", &sample_on_shell, py::arg("profile"),
          py::arg("count"), py::arg("seed"));

    py::class_<SampleReport>(m, "SampleReport")
        .def_readonly("requested", &SampleReport::requested)
        .def_readonly("all_positive_count", &SampleReport::all_positive_count)
        .def_readonly("min_product_log", &SampleReport::min_product_log)
        .def_readonly("max_product_log", &SampleReport::max_product_log)
        .def_readonly("containment_violations",
                      &SampleReport::containment_violations)
        .def_readonly("seed", &SampleReport::seed);

    m.def("brute_force_extrema", &brute_force_extrema, py::arg("profile"),
          py::arg("count"), py::arg("seed"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScanEntry>(m, "ScanEntry")
        .def_readonly("type_index", &ScanEntry::type_index)
        .def_readonly("product", &ScanEntry::product)
        .def_readonly("positive", &ScanEntry::positive);

    m.def("two_value_scan", &two_value_scan, py::arg("profile"));
    m.def("sample_positive_simplex", &sample_positive_simplex, py::arg("n"),
          py::arg("mu"), py::arg("seed"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("stats", &BoundReport::stats)
        .def_readonly("seq_min", &BoundReport::seq_min)
        .def_readonly("seq_max", &BoundReport::seq_max)
        .def_readonly("gap", &BoundReport::gap)
        .def_readonly("gap_bound_variance", &BoundReport::gap_bound_variance)
        .def_readonly("gap_bound_aldaz", &BoundReport::gap_bound_aldaz)
        .def_readonly("cf_gap_lower", &BoundReport::cf_gap_lower)
        .def_readonly("cf_gap_upper", &BoundReport::cf_gap_upper)
        .def_readonly("tightest_upper", &BoundReport::tightest_upper);

    m.def("evaluate_bounds",
          [](const std::vector<double>& values) {
              return evaluate_bounds(values);
          },
          py::arg("values"));

    py::class_<ProductComparison>(m, "ProductComparison")
        .def_readonly("product", &ProductComparison::product)
        .def_readonly("variance_lower", &ProductComparison::variance_lower)
        .def_readonly("variance_upper", &ProductComparison::variance_upper)
        .def_readonly("cf_lower", &ProductComparison::cf_lower)
        .def_readonly("cf_upper", &ProductComparison::cf_upper)
        .def_readonly("in_variance_interval",
                      &ProductComparison::in_variance_interval)
        .def_readonly("in_cf_interval", &ProductComparison::in_cf_interval);

    m.def("product_bound_comparison",
          [](const std::vector<double>& values) {
              return product_bound_comparison(values);
          },
          py::arg("values"));

    py::class_<ReturnSeries>(m, "ReturnSeries")
        .def_readonly("returns", &ReturnSeries::returns)
        .def_readonly("period_label", &ReturnSeries::period_label);

    m.def("make_return_series", &make_return_series, py::arg("returns"),
          py::arg("period_label") = "period");
    m.def("ingest_csv_text",
          [](const std::string& text, const std::string& period_label) {
              std::istringstream in(text);
              return ingest_csv(in, period_label);
          },
          py::arg("text"), py::arg("period_label") = "period",
          "Parse returns from CSV text: one numeric column, or "
          "label,return rows under a header.");
    m.def("ingest_csv_file",
          [](const std::string& path, const std::string& period_label) {
              std::ifstream in(path);
              if (!in) throw IoError("cannot open " + path);
              return ingest_csv(in, period_label);
          },
          py::arg("path"), py::arg("period_label") = "period");

    py::class_<WealthEnvelope>(m, "WealthEnvelope")
        .def_readonly("n", &WealthEnvelope::n)
        .def_readonly("growth_mean", &WealthEnvelope::growth_mean)
        .def_readonly("growth_sigma", &WealthEnvelope::growth_sigma)
        .def_readonly("regime", &WealthEnvelope::regime)
        .def_readonly("lower_log", &WealthEnvelope::lower_log)
        .def_readonly("upper_log", &WealthEnvelope::upper_log)
        .def_readonly("lower_wealth", &WealthEnvelope::lower_wealth)
        .def_readonly("upper_wealth", &WealthEnvelope::upper_wealth)
        .def_readonly("actual_log", &WealthEnvelope::actual_log)
        .def_readonly("actual_wealth", &WealthEnvelope::actual_wealth)
        .def("__repr__", [](const WealthEnvelope& e) {
            std::ostringstream out;
            out << "WealthEnvelope(n=" << e.n << ", lower_wealth="
                << e.lower_wealth << ", upper_wealth=" << e.upper_wealth
                << ")";
            return out.str();
        });

    m.def("wealth_envelope", &wealth_envelope, py::arg("series"));
    m.def("envelope_from_params", &envelope_from_params, py::arg("n"),
          py::arg("mean_return"), py::arg("sigma"));

    py::class_<RobustParams>(m, "RobustParams")
        .def(py::init([](double growth_mean, double sigma0, double epsilon) {
                 return RobustParams{growth_mean, sigma0, epsilon};
             }),
             py::arg("growth_mean"), py::arg("sigma0"), py::arg("epsilon"))
        .def_readwrite("growth_mean", &RobustParams::growth_mean)
        .def_readwrite("sigma0", &RobustParams::sigma0)
        .def_readwrite("epsilon", &RobustParams::epsilon);

    m.def("robust_relative_upper_log", &robust_relative_upper_log,
          py::arg("params"), py::arg("n"));
    m.def("robust_relative_upper", &robust_relative_upper, py::arg("params"),
          py::arg("n"));
}
