#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcis/config.hpp"
#include "rcis/csv_io.hpp"
#include "rcis/design.hpp"
#include "rcis/lti.hpp"
#include "rcis/repetitive_control.hpp"
#include "rcis/sim.hpp"
#include "rcis/stability.hpp"
#include "rcis/timestamping.hpp"
#include "rcis/transfer_function.hpp"

namespace py = pybind11;
using namespace rcis;

PYBIND11_MODULE(_rcis, m) {
  m.doc() = "repetitive control under intermittent, timestamped sampling";

  py::class_<TransferFunction>(m, "TransferFunction")
      .def(py::init<Poly, Poly, int, double>(), py::arg("num"), py::arg("den"),
           py::arg("preview") = 0, py::arg("sample_time") = 1.0)
      .def_readonly("num", &TransferFunction::num)
      .def_readonly("den", &TransferFunction::den)
      .def_readonly("preview", &TransferFunction::preview)
      .def_readonly("sample_time", &TransferFunction::sample_time)
      .def("is_strictly_proper", &TransferFunction::is_strictly_proper)
      .def_static("constant", &TransferFunction::constant, py::arg("c"),
                  py::arg("sample_time") = 1.0)
      .def_static("delay", &TransferFunction::delay, py::arg("steps"),
                  py::arg("sample_time") = 1.0);

  py::enum_<FrfSource>(m, "FrfSource")
      .value("MODEL_DERIVED", FrfSource::kModelDerived)
      .value("IMPORTED", FrfSource::kImported);

  py::class_<FrfData>(m, "FrfData")
      .def(py::init<std::vector<double>, std::vector<Complex>, FrfSource>(),
           py::arg("omegas"), py::arg("values"),
           py::arg("source") = FrfSource::kModelDerived)
      .def_readonly("omegas", &FrfData::omegas)
      .def_readonly("values", &FrfData::values)
      .def_readonly("source", &FrfData::source)
      .def("__len__", &FrfData::size);

  py::class_<PoleSet>(m, "PoleSet").def_readonly("poles", &PoleSet::poles);

  m.def("make_frequency_grid", &make_frequency_grid, py::arg("n"));
  m.def("freq_response", &freq_response, py::arg("tf"), py::arg("omegas"));
  m.def("freq_response_at", &freq_response_at, py::arg("tf"), py::arg("omega"));
  m.def("simulate", &simulate, py::arg("tf"), py::arg("input"));
  m.def("poles", &poles, py::arg("tf"));
  m.def("is_internally_stable", &is_internally_stable, py::arg("tf"));
  m.def("zpetc_inverse", &zpetc_inverse, py::arg("tf"));
  m.def("zero_phase_fir_lowpass", &zero_phase_fir_lowpass, py::arg("cutoff"),
        py::arg("half_order"), py::arg("sample_time") = 1.0);
  m.def("tf_add", &tf_add);
  m.def("tf_sub", &tf_sub);
  m.def("tf_mul", &tf_mul);
  m.def("tf_scale", &tf_scale);
  m.def("tf_feedback", &tf_feedback);
  m.def("tf_sensitivity", &tf_sensitivity);

  py::class_<TimestampSet>(m, "TimestampSet")
      .def(py::init<std::vector<std::int64_t>, std::int64_t>(), py::arg("stamps"),
           py::arg("horizon"))
      .def_readonly("stamps", &TimestampSet::stamps)
      .def_readonly("horizon", &TimestampSet::horizon)
      .def("contains", &TimestampSet::contains)
      .def("mask", &TimestampSet::mask);

  py::class_<TimestampGenerator>(m, "TimestampGenerator")
      .def_static("all", &TimestampGenerator::all)
      .def_static("none", &TimestampGenerator::none)
      .def_static("bernoulli", &TimestampGenerator::bernoulli, py::arg("p"), py::arg("seed"))
      .def_static("periodic", &TimestampGenerator::periodic, py::arg("m"), py::arg("offset"))
      .def_static("burst", &TimestampGenerator::burst, py::arg("loss_len"),
                  py::arg("cycle_len"), py::arg("seed"))
      .def_static("encoder", &TimestampGenerator::encoder, py::arg("line_spacing"),
                  py::arg("trajectory"));

  m.def("generate", &generate, py::arg("generator"), py::arg("horizon"),
        py::arg("scenario_seed") = 0);
  m.def("apply_T", &apply_T, py::arg("e"), py::arg("psi"));
  m.def("apply_T_complement", &apply_T_complement, py::arg("e"), py::arg("psi"));
  m.def("sector_check", &sector_check, py::arg("e"), py::arg("psi"));

  py::class_<RcConfig>(m, "RcConfig")
      .def(py::init([](std::int64_t n, TransferFunction learning,
                       TransferFunction robustness, double alpha) {
             RcConfig cfg;
             cfg.buffer_length = n;
             cfg.learning = std::move(learning);
             cfg.robustness = std::move(robustness);
             cfg.alpha = alpha;
             cfg.validate();
             return cfg;
           }),
           py::arg("buffer_length"), py::arg("learning"), py::arg("robustness"),
           py::arg("alpha") = 1.0)
      .def_readwrite("buffer_length", &RcConfig::buffer_length)
      .def_readwrite("learning", &RcConfig::learning)
      .def_readwrite("robustness", &RcConfig::robustness)
      .def_readwrite("alpha", &RcConfig::alpha);

  py::class_<RcState>(m, "RcState").def(py::init<const RcConfig&>(), py::arg("cfg"));
  m.def("rc_step", &rc_step, py::arg("state"), py::arg("cfg"), py::arg("ebar_k"));
  m.def("rc_transfer", &rc_transfer, py::arg("cfg"));

  py::class_<BasisRcConfig>(m, "BasisRcConfig")
      .def(py::init([](std::vector<double> frequencies, std::vector<double> gains) {
             BasisRcConfig cfg;
             cfg.frequencies = std::move(frequencies);
             cfg.gains = std::move(gains);
             cfg.validate();
             return cfg;
           }),
           py::arg("frequencies"), py::arg("gains"))
      .def_readwrite("frequencies", &BasisRcConfig::frequencies)
      .def_readwrite("gains", &BasisRcConfig::gains);
  m.def("basis_rc_transfer", &basis_rc_transfer, py::arg("cfg"));

  py::enum_<TheoremKind>(m, "TheoremKind")
      .value("PASSIVITY", TheoremKind::kPassivity)
      .value("SMALL_GAIN", TheoremKind::kSmallGain)
      .value("CLASSIC_EQ6", TheoremKind::kEquidistantSmallGain)
      .value("CLASSIC_EQ14", TheoremKind::kClassicPassivity);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("s1_pass", &StabilityReport::s1_pass)
      .def_readonly("s1_winding_number", &StabilityReport::s1_winding_number)
      .def_readonly("s2_pass", &StabilityReport::s2_pass)
      .def_readonly("s2_margin", &StabilityReport::s2_margin)
      .def_readonly("violation_frequencies", &StabilityReport::violation_frequencies)
      .def_readonly("grid_size", &StabilityReport::grid_size)
      .def_readonly("theorem", &StabilityReport::theorem)
      .def_readonly("grid_certified_only", &StabilityReport::grid_certified_only);

  m.def("nyquist_check", &nyquist_check, py::arg("loop_frf"));
  m.def(
      "equidistant_small_gain",
      [](const FrfData& j, const TransferFunction& l, const TransferFunction& q) {
        return equidistant_small_gain(j, l, q);
      },
      py::arg("j_frf"), py::arg("learning"), py::arg("robustness"));
  m.def("passivity_check", py::overload_cast<const FrfData&>(&passivity_check),
        py::arg("tr_frf"));
  m.def("passivity_check",
        py::overload_cast<const TransferFunction&, std::size_t>(&passivity_check),
        py::arg("tr"), py::arg("grid_size") = kDefaultGridSize);
  m.def("small_gain_check", py::overload_cast<const FrfData&>(&small_gain_check),
        py::arg("tr_frf"));
  m.def("small_gain_check",
        py::overload_cast<const TransferFunction&, std::size_t>(&small_gain_check),
        py::arg("tr"), py::arg("grid_size") = kDefaultGridSize);
  m.def("build_T_R",
        py::overload_cast<const TransferFunction&, const TransferFunction&>(&build_T_R),
        py::arg("plant"), py::arg("controller"));
  m.def("build_T_R", py::overload_cast<const FrfData&, const FrfData&>(&build_T_R),
        py::arg("plant_frf"), py::arg("controller_frf"));
  m.def("classic_tr_frf", &classic_tr_frf, py::arg("j_frf"), py::arg("learning"),
        py::arg("robustness"), py::arg("buffer_length"), py::arg("alpha"));

  py::class_<AlphaSchedule>(m, "AlphaSchedule")
      .def(py::init<>())
      .def_readwrite("factor", &AlphaSchedule::factor)
      .def_readwrite("max_iters", &AlphaSchedule::max_iters);

  py::class_<NotchSettings>(m, "NotchSettings")
      .def(py::init<>())
      .def_readwrite("enabled", &NotchSettings::enabled)
      .def_readwrite("depth", &NotchSettings::depth)
      .def_readwrite("width", &NotchSettings::width);

  py::class_<DesignSpec>(m, "DesignSpec")
      .def(py::init<>())
      .def_readwrite("plant", &DesignSpec::plant)
      .def_readwrite("measured_frf", &DesignSpec::measured_frf)
      .def_readwrite("buffer_length", &DesignSpec::buffer_length)
      .def_readwrite("q_cutoff", &DesignSpec::q_cutoff)
      .def_readwrite("q_half_order", &DesignSpec::q_half_order)
      .def_readwrite("alpha_schedule", &DesignSpec::alpha_schedule)
      .def_readwrite("notch", &DesignSpec::notch)
      .def_readwrite("grid_size", &DesignSpec::grid_size);

  py::class_<DesignIteration>(m, "DesignIteration")
      .def_readonly("iter", &DesignIteration::iter)
      .def_readonly("alpha", &DesignIteration::alpha)
      .def_readonly("passivity_margin", &DesignIteration::passivity_margin)
      .def_readonly("small_gain_margin", &DesignIteration::small_gain_margin)
      .def_readonly("q_modified", &DesignIteration::q_modified);

  py::class_<DesignReports>(m, "DesignReports")
      .def_readonly("equidistant_pass", &DesignReports::equidistant_pass)
      .def_readonly("equidistant_margin", &DesignReports::equidistant_margin)
      .def_readonly("passivity", &DesignReports::passivity)
      .def_readonly("small_gain", &DesignReports::small_gain)
      .def_readonly("crossover_omega", &DesignReports::crossover_omega);

  py::class_<DesignOutcome>(m, "DesignOutcome")
      .def_readonly("cfg", &DesignOutcome::cfg)
      .def_readonly("reports", &DesignOutcome::reports)
      .def_readonly("iterations", &DesignOutcome::iterations);

  m.def("design_nominal", &design_nominal, py::arg("spec"));
  m.def("design_intermittent", &design_intermittent, py::arg("spec"));
  m.def("evaluate_design",
        py::overload_cast<const RcConfig&, const TransferFunction&, std::size_t>(
            &evaluate_design),
        py::arg("cfg"), py::arg("plant"), py::arg("grid_size") = kDefaultGridSize);
  m.def("evaluate_design",
        py::overload_cast<const RcConfig&, const FrfData&>(&evaluate_design), py::arg("cfg"),
        py::arg("plant_frf"));

  py::class_<Harmonic>(m, "Harmonic")
      .def(py::init<>())
      .def_readwrite("harmonic", &Harmonic::harmonic)
      .def_readwrite("omega", &Harmonic::omega)
      .def_readwrite("amplitude", &Harmonic::amplitude)
      .def_readwrite("phase", &Harmonic::phase);

  py::class_<Disturbance>(m, "Disturbance")
      .def(py::init<>())
      .def_readwrite("period", &Disturbance::period)
      .def_readwrite("harmonics", &Disturbance::harmonics);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("plant", &Scenario::plant)
      .def_readwrite("disturbance", &Scenario::disturbance)
      .def_readwrite("controller", &Scenario::controller)
      .def_readwrite("timestamps", &Scenario::timestamps)
      .def_readwrite("horizon", &Scenario::horizon)
      .def_readwrite("seed", &Scenario::seed);

  py::class_<FrequencyRatio>(m, "FrequencyRatio")
      .def_readonly("omega", &FrequencyRatio::omega)
      .def_readonly("initial_amplitude", &FrequencyRatio::initial_amplitude)
      .def_readonly("converged_amplitude", &FrequencyRatio::converged_amplitude)
      .def_readonly("ratio", &FrequencyRatio::ratio);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("initial_rms", &Metrics::initial_rms)
      .def_readonly("converged_rms", &Metrics::converged_rms)
      .def_readonly("reduction_factor", &Metrics::reduction_factor)
      .def_readonly("max_abs_e", &Metrics::max_abs_e)
      .def_readonly("per_frequency", &Metrics::per_frequency)
      .def_readonly("diverged", &Metrics::diverged)
      .def_readonly("diverged_at", &Metrics::diverged_at);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("e", &SimResult::e)
      .def_readonly("ebar", &SimResult::ebar)
      .def_readonly("u", &SimResult::u)
      .def_readonly("y", &SimResult::y)
      .def_readonly("v", &SimResult::v)
      .def_readonly("psi", &SimResult::psi)
      .def_readonly("metrics", &SimResult::metrics)
      .def_readonly("period", &SimResult::period)
      .def_readonly("sample_time", &SimResult::sample_time);

  py::class_<AmplitudeSpectrum>(m, "AmplitudeSpectrum")
      .def_readonly("omegas", &AmplitudeSpectrum::omegas)
      .def_readonly("amplitude", &AmplitudeSpectrum::amplitude)
      .def_readonly("cumulative", &AmplitudeSpectrum::cumulative);

  m.def("run_closed_loop", &run_closed_loop, py::arg("scenario"));
  m.def("rms_moving_window", &rms_moving_window, py::arg("e"), py::arg("window"));
  m.def("interpolate_to_grid", &interpolate_to_grid, py::arg("psi"),
        py::arg("values_at_stamps"));
  m.def("cumulative_amplitude_spectrum", &cumulative_amplitude_spectrum, py::arg("e"));
  m.def("reduction_metrics", &reduction_metrics, py::arg("result"),
        py::arg("settle_periods"));

  m.def("read_frf_csv", &read_frf_csv, py::arg("path"));
  m.def("write_frf_csv", &write_frf_csv, py::arg("path"), py::arg("frf"));

  py::register_exception<DenominatorZeroOnGrid>(m, "DenominatorZeroOnGridError");
  py::register_exception<RootFindingFailure>(m, "RootFindingFailureError");
  py::register_exception<ZeroOnUnitCircle>(m, "ZeroOnUnitCircleError");
  py::register_exception<UnstablePlant>(m, "UnstablePlantError");
  py::register_exception<AlgebraicLoop>(m, "AlgebraicLoopError");
  py::register_exception<LengthMismatch>(m, "LengthMismatchError");
  py::register_exception<InvalidParameters>(m, "InvalidParametersError");
  py::register_exception<PreviewExceedsBuffer>(m, "PreviewExceedsBufferError");
  py::register_exception<DuplicateFrequency>(m, "DuplicateFrequencyError");
  py::register_exception<GridTooCoarse>(m, "GridTooCoarseError");
  py::register_exception<GridMismatch>(m, "GridMismatchError");
  py::register_exception<SingularReturnDifference>(m, "SingularReturnDifferenceError");
  py::register_exception<NominalDesignInfeasible>(m, "NominalDesignInfeasibleError");
  py::register_exception<DesignExhausted>(m, "DesignExhaustedError");
  py::register_exception<IllPosedLoop>(m, "IllPosedLoopError");
  py::register_exception<TooFewStamps>(m, "TooFewStampsError");
  py::register_exception<HorizonTooShort>(m, "HorizonTooShortError");
}
