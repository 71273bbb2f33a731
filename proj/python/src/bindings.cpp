#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "biotraj/arm_dynamics.hpp"
#include "biotraj/error.hpp"
#include "biotraj/io.hpp"
#include "biotraj/phase.hpp"
#include "biotraj/planner.hpp"
#include "biotraj/pso.hpp"
#include "biotraj/signal.hpp"
#include "biotraj/trajectory.hpp"

namespace py = pybind11;
using namespace biotraj;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 1) throw Error(ErrorCode::dimension_mismatch, "expected a 1-D array");
    return {a.data(), a.data() + a.size()};
}

TimeSeries to_series(const py::array_t<double, py::array::c_style | py::array::forcecast>& t,
                     const py::array_t<double, py::array::c_style | py::array::forcecast>& v)
{
    TimeSeries s{to_vector(t), to_vector(v)};
    s.validate();
    return s;
}

py::tuple from_series(const TimeSeries& s) { return py::make_tuple(to_array(s.t), to_array(s.v)); }

py::dict trajectory_dict(const SampledTrajectory& traj)
{
    py::dict d;
    d["t"] = to_array(traj.t);
    d["dt"] = traj.dt;
    d["final_step_short"] = traj.final_step_short;
    for (std::size_t j = 0; j < traj.joints.size(); ++j) {
        const auto n = std::to_string(j + 1);
        d[("theta" + n).c_str()] = to_array(traj.joints[j].theta);
        d[("omega" + n).c_str()] = to_array(traj.joints[j].omega);
        d[("alpha" + n).c_str()] = to_array(traj.joints[j].alpha);
        if (traj.has_torques()) d[("tau" + n).c_str()] = to_array(traj.joints[j].tau);
    }
    if (traj.has_torques()) d["power"] = to_array(traj.power);
    return d;
}

py::dict energy_dict(const EnergyReport& e)
{
    py::dict d;
    d["work_per_joint"] = e.work_per_joint;
    d["total_work"] = e.total_work;
    d["peak_power"] = e.peak_power;
    d["power"] = to_array(e.power_series);
    return d;
}

py::list windows(const std::vector<TimeWindow>& ws)
{
    py::list out;
    for (const auto& w : ws) out.append(py::make_tuple(w.start, w.end));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Two-link arm trajectory planning core";

    static py::exception<Error> error_type(m, "BiotrajError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<ArmModel>(m, "ArmModel")
        .def(py::init<>())
        .def_readwrite("l1", &ArmModel::l1)
        .def_readwrite("l2", &ArmModel::l2)
        .def_readwrite("m1", &ArmModel::m1)
        .def_readwrite("m2", &ArmModel::m2)
        .def_readwrite("m_payload", &ArmModel::m_payload)
        .def_readwrite("g", &ArmModel::g)
        .def("validate", &ArmModel::validate);

    m.def("inverse_dynamics",
          [](const ArmModel& arm, double q1, double q2, double w1, double w2, double a1, double a2) {
              const auto tau = inverse_dynamics(arm, {q1, q2, w1, w2, a1, a2});
              return py::make_tuple(tau.tau1, tau.tau2);
          },
          py::arg("arm"), py::arg("theta1"), py::arg("theta2"), py::arg("omega1"), py::arg("omega2"),
          py::arg("alpha1"), py::arg("alpha2"));
    m.def("forward_dynamics",
          [](const ArmModel& arm, double q1, double q2, double w1, double w2, double t1, double t2) {
              const auto a = forward_dynamics(arm, q1, q2, w1, w2, t1, t2);
              return py::make_tuple(a.alpha1, a.alpha2);
          },
          py::arg("arm"), py::arg("theta1"), py::arg("theta2"), py::arg("omega1"), py::arg("omega2"),
          py::arg("tau1"), py::arg("tau2"));
    m.def("mass_matrix", [](const ArmModel& arm, double q1, double q2) {
        const auto d = dynamics_terms(arm, q1, q2, 0.0, 0.0);
        return py::make_tuple(py::make_tuple(d.M11, d.M12), py::make_tuple(d.M21, d.M22));
    });
    m.def("kinetic_energy", [](const ArmModel& arm, double q1, double q2, double w1, double w2) {
        return kinetic_energy(arm, {q1, q2, w1, w2, 0.0, 0.0});
    });
    m.def("potential_energy", &potential_energy, py::arg("arm"), py::arg("theta1"), py::arg("theta2"));

    m.def("solve_quintic",
          [](std::array<double, 3> start, std::array<double, 3> end, double t0, double tf) {
              return solve_quintic({start[0], start[1], start[2]}, {end[0], end[1], end[2]}, t0, tf).d;
          },
          py::arg("start"), py::arg("end"), py::arg("t0"), py::arg("tf"),
          "Coefficients of theta(t) in powers of (t - t0), given (theta, omega, alpha) at each end.");
    m.def("classic_profile",
          [](const std::string& kind, double theta0, double thetaf, double duration, double dt) {
              return trajectory_dict(classic_profile(parse_profile_kind(kind), theta0, thetaf, duration, dt));
          },
          py::arg("kind"), py::arg("theta0"), py::arg("thetaf"), py::arg("duration"), py::arg("dt") = 1e-3);

    py::class_<PsoConfig>(m, "PsoConfig")
        .def(py::init<>())
        .def_readwrite("swarm_size", &PsoConfig::swarm_size)
        .def_readwrite("iterations", &PsoConfig::iterations)
        .def_readwrite("inertia", &PsoConfig::inertia)
        .def_readwrite("cognitive", &PsoConfig::cognitive)
        .def_readwrite("social", &PsoConfig::social)
        .def_readwrite("seed", &PsoConfig::seed)
        .def_readwrite("tolerance", &PsoConfig::tolerance)
        .def_readwrite("stagnation_window", &PsoConfig::stagnation_window)
        .def_readwrite("velocity_clamp", &PsoConfig::velocity_clamp)
        .def_readwrite("threads", &PsoConfig::threads);

    m.def("pso_minimize",
          [](const std::function<double(std::vector<double>)>& fn, const std::vector<std::pair<double, double>>& box,
             PsoConfig config) {
              Bounds bounds;
              for (const auto& [lo, hi] : box) bounds.push_back({lo, hi});
              // Python callables are evaluated on the calling thread.
              config.threads = 0;
              const Objective obj{bounds.size(), [&fn](std::span<const double> x) {
                                      return fn(std::vector<double>(x.begin(), x.end()));
                                  }};
              const auto r = optimize(obj, bounds, config);
              py::dict d;
              d["best_position"] = r.best_position;
              d["best_fitness"] = r.best_fitness;
              d["history"] = to_array(r.history);
              d["evaluations"] = r.evaluations;
              d["iterations_run"] = r.iterations_run;
              d["terminated_by"] = std::string(to_string(r.terminated_by));
              return d;
          },
          py::arg("fn"), py::arg("bounds"), py::arg("config") = PsoConfig{});

    py::class_<PlanningProblem>(m, "PlanningProblem")
        .def(py::init<>())
        .def_readwrite("arm", &PlanningProblem::arm)
        .def_readwrite("start_deg", &PlanningProblem::start_deg)
        .def_readwrite("end_deg", &PlanningProblem::end_deg)
        .def_readwrite("duration", &PlanningProblem::duration)
        .def_readwrite("dt", &PlanningProblem::dt)
        .def_property(
            "target_peak_angle", [](const PlanningProblem& p) { return p.phase.target_peak_angle; },
            [](PlanningProblem& p, double v) { p.phase.target_peak_angle = v; })
        .def_property(
            "w_peak_power", [](const PlanningProblem& p) { return p.weights.w_peak_power; },
            [](PlanningProblem& p, double v) { p.weights.w_peak_power = v; })
        .def("validate", &PlanningProblem::validate);

    py::class_<PlannerConfig>(m, "PlannerConfig")
        .def(py::init<>())
        .def_readwrite("problem", &PlannerConfig::problem)
        .def_readwrite("pso", &PlannerConfig::pso)
        .def_static("from_json", &parse_planner_config, py::arg("text"))
        .def_static("load", &load_planner_config, py::arg("path"))
        .def("to_json", [](const PlannerConfig& c) { return planner_config_json(c); });

    m.def("standard_plan", [](const PlanningProblem& p) { return trajectory_dict(standard_plan(p)); });
    m.def("energy_report", [](const PlanningProblem& p) { return energy_dict(energy_report(p.arm, standard_plan(p))); });

    py::class_<PlanResult>(m, "PlanResult")
        .def_readonly("work_reduction_pct", &PlanResult::work_reduction_pct)
        .def_readonly("peak_power_reduction_pct", &PlanResult::peak_power_reduction_pct)
        .def_readonly("standard_peak_angle", &PlanResult::standard_peak_angle)
        .def_readonly("peak_angle_achieved", &PlanResult::peak_angle_achieved)
        .def_readonly("limit_violation", &PlanResult::limit_violation)
        .def_readonly("feasible", &PlanResult::feasible)
        .def_readonly("decision", &PlanResult::decision)
        .def_property_readonly("standard", [](const PlanResult& r) { return trajectory_dict(r.standard); })
        .def_property_readonly("optimized", [](const PlanResult& r) { return trajectory_dict(r.optimized); })
        .def_property_readonly("standard_energy", [](const PlanResult& r) { return energy_dict(r.standard_energy); })
        .def_property_readonly("optimized_energy", [](const PlanResult& r) { return energy_dict(r.optimized_energy); })
        .def("summary_json", &plan_summary_json, py::arg("config"))
        .def("write_outputs", [](const PlanResult& r, const PsoConfig& c, const std::filesystem::path& dir) {
            write_plan_outputs(r, c, dir);
        });

    m.def("optimize_plan",
          [](const PlanningProblem& p, const PsoConfig& c) {
              py::gil_scoped_release release;
              return optimize_plan(p, c);
          },
          py::arg("problem"), py::arg("config") = PsoConfig{});

    m.def("lowpass",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> t,
             py::array_t<double, py::array::c_style | py::array::forcecast> v, double cutoff_hz, int order) {
              return from_series(lowpass_zero_phase(to_series(t, v), {cutoff_hz, order}));
          },
          py::arg("t"), py::arg("v"), py::arg("cutoff_hz") = 6.0, py::arg("order") = 2);
    m.def("emg_envelope",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> t,
             py::array_t<double, py::array::c_style | py::array::forcecast> v, double cutoff_hz, int order) {
              return from_series(emg_envelope(to_series(t, v), {cutoff_hz, order}));
          },
          py::arg("t"), py::arg("v"), py::arg("cutoff_hz") = 4.0, py::arg("order") = 2);
    m.def("numeric_derivative",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> t,
             py::array_t<double, py::array::c_style | py::array::forcecast> v) {
              return from_series(numeric_derivative(to_series(t, v)));
          });
    m.def("detect_peaks",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> t,
             py::array_t<double, py::array::c_style | py::array::forcecast> v, double min_prominence) {
              py::list out;
              for (const auto& p : detect_peaks(to_series(t, v), min_prominence)) {
                  out.append(py::make_tuple(p.time, p.value, p.prominence));
              }
              return out;
          },
          py::arg("t"), py::arg("v"), py::arg("min_prominence"));
    m.def("segment",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> t,
             py::array_t<double, py::array::c_style | py::array::forcecast> elbow_deg) {
              const auto p = segment_by_elbow_angle(to_series(t, elbow_deg));
              py::dict d;
              d["high_load"] = windows(p.high_load);
              d["weakest"] = windows(p.weakest);
              d["decel"] = windows(p.decel);
              return d;
          },
          py::arg("t"), py::arg("elbow_deg"));
    m.def("load_motion_csv", [](const std::filesystem::path& path) {
        const auto rec = load_motion_csv(path);
        py::dict d;
        d["t"] = to_array(rec.elbow_angle.t);
        d["shoulder_angle"] = to_array(rec.shoulder_angle.v);
        d["elbow_angle"] = to_array(rec.elbow_angle.v);
        if (rec.wrist_accel) d["wrist_accel"] = to_array(rec.wrist_accel->v);
        return d;
    });
}
