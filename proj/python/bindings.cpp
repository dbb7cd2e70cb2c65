// _cctf: python bindings for the simulator core. The cctf package re-exports
// everything defined here.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cctf/analysis.hpp"
#include "cctf/config_file.hpp"
#include "cctf/engine.hpp"
#include "cctf/errors.hpp"
#include "cctf/sweep.hpp"
#include "cctf/topology.hpp"

namespace py = pybind11;
using namespace cctf;

namespace {

ConfigOverrides to_overrides(const py::dict& overrides) {
  ConfigOverrides result;
  for (const auto& item : overrides) {
    result[py::cast<std::string>(item.first)] =
        py::cast<std::string>(py::str(item.second));
  }
  return result;
}

SurfaceStat stat_from_string(const std::string& stat) {
  if (stat == "mean") return SurfaceStat::mean;
  if (stat == "max") return SurfaceStat::max;
  throw std::invalid_argument("statistic must be 'mean' or 'max', got '" +
                              stat + "'");
}

}  // namespace

PYBIND11_MODULE(_cctf, m) {
  m.doc() = "Deterministic red-team / blue-team simulation on scale-free "
            "router networks";
#ifdef CCTF_VERSION
  m.attr("__version__") = CCTF_VERSION;
#else
  m.attr("__version__") = "0.0.0";
#endif

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UndefinedCorrelationError>(
      m, "UndefinedCorrelationError", PyExc_ValueError);

  py::enum_<InterceptorMode>(m, "InterceptorMode")
      .value("recover", InterceptorMode::recover)
      .value("isolate", InterceptorMode::isolate);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_routers", &SimConfig::n_routers)
      .def_readwrite("ba_m", &SimConfig::ba_m)
      .def_readwrite("team_size", &SimConfig::team_size)
      .def_readwrite("scouts", &SimConfig::scouts)
      .def_readwrite("detectors", &SimConfig::detectors)
      .def_readwrite("vul_rate", &SimConfig::vul_rate)
      .def_readwrite("p_scout", &SimConfig::p_scout)
      .def_readwrite("p_exploiter", &SimConfig::p_exploiter)
      .def_readwrite("p_det_vuln", &SimConfig::p_det_vuln)
      .def_readwrite("p_det_expl", &SimConfig::p_det_expl)
      .def_readwrite("delta_interceptor", &SimConfig::delta_interceptor)
      .def_readwrite("max_ticks", &SimConfig::max_ticks)
      .def_readwrite("interceptor_mode", &SimConfig::interceptor_mode)
      .def_readwrite("seed", &SimConfig::seed)
      .def_property_readonly("exploiters", &SimConfig::exploiters)
      .def_property_readonly("interceptors", &SimConfig::interceptors)
      .def("validate", &SimConfig::validate)
      .def("__eq__",
           [](const SimConfig& a, const SimConfig& b) { return a == b; })
      .def("__repr__", [](const SimConfig& config) {
        return "<SimConfig\n" + describe(config) + ">";
      });

  py::class_<NetworkGraph>(m, "NetworkGraph")
      .def_readonly("n", &NetworkGraph::n)
      .def_readonly("edges", &NetworkGraph::edges)
      .def_readonly("adjacency", &NetworkGraph::adjacency)
      .def("degree", &NetworkGraph::degree, py::arg("router"));

  py::class_<TopologyInfo>(m, "TopologyInfo")
      .def_readonly("peripheral", &TopologyInfo::peripheral)
      .def_readonly("central", &TopologyInfo::central)
      .def_readonly("parent", &TopologyInfo::parent)
      .def_readonly("depth", &TopologyInfo::depth)
      .def_readonly("bfs_order", &TopologyInfo::bfs_order);

  m.def("generate_scale_free", &generate_scale_free, py::arg("n"),
        py::arg("m"), py::arg("seed"));
  m.def("derive_topology", &derive_topology, py::arg("graph"));

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("mean_compromised", &RunMetrics::mean_compromised)
      .def_readonly("max_compromised", &RunMetrics::max_compromised)
      .def_readonly("mean_offline", &RunMetrics::mean_offline)
      .def_readonly("max_offline", &RunMetrics::max_offline)
      .def_readonly("two_thirds_breached", &RunMetrics::two_thirds_breached)
      .def_readonly("full_network_breached",
                    &RunMetrics::full_network_breached)
      .def_readonly("center_compromised", &RunMetrics::center_compromised)
      .def_readonly("ticks_run", &RunMetrics::ticks_run)
      .def("__eq__",
           [](const RunMetrics& a, const RunMetrics& b) { return a == b; })
      .def("__repr__", [](const RunMetrics& r) {
        std::ostringstream out;
        out << "<RunMetrics mean_compromised=" << r.mean_compromised
            << " max_compromised=" << r.max_compromised
            << " mean_offline=" << r.mean_offline
            << " max_offline=" << r.max_offline
            << " two_thirds=" << r.two_thirds_breached
            << " full=" << r.full_network_breached
            << " center=" << r.center_compromised
            << " ticks=" << r.ticks_run << ">";
        return out.str();
      });

  py::class_<TickTrace>(m, "TickTrace")
      .def_readonly("tick", &TickTrace::tick)
      .def_readonly("new_vulnerable", &TickTrace::new_vulnerable)
      .def_readonly("scout_detections", &TickTrace::scout_detections)
      .def_readonly("exploits", &TickTrace::exploits)
      .def_readonly("detections", &TickTrace::detections)
      .def_readonly("interceptions", &TickTrace::interceptions)
      .def_readonly("compromised_count", &TickTrace::compromised_count)
      .def_readonly("offline_count", &TickTrace::offline_count)
      .def_readonly("compromised_frac", &TickTrace::compromised_frac)
      .def_readonly("offline_frac", &TickTrace::offline_frac)
      .def_readonly("center_compromised", &TickTrace::center_compromised)
      .def_readonly("known_vulnerable", &TickTrace::known_vulnerable)
      .def_readonly("queue_length", &TickTrace::queue_length);

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<const SimConfig&>(), py::arg("config"))
      .def("step", &Simulation::step)
      .def("finish", &Simulation::finish,
           py::call_guard<py::gil_scoped_release>())
      .def("done", &Simulation::done)
      .def_property_readonly(
          "tick", [](const Simulation& sim) { return sim.state().tick; })
      .def_property_readonly("config", &Simulation::config,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("graph", &Simulation::graph,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("topology", &Simulation::topology,
                             py::return_value_policy::reference_internal);

  m.def(
      "run_simulation",
      [](const SimConfig& config) { return run_simulation(config); },
      py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_with_trace",
      [](const SimConfig& config) {
        std::vector<TickTrace> trace;
        const RunMetrics metrics = run_simulation(config, &trace);
        return std::make_pair(metrics, std::move(trace));
      },
      py::arg("config"), py::call_guard<py::gil_scoped_release>());

  py::class_<SweepGrid>(m, "SweepGrid")
      .def(py::init<>())
      .def_readwrite("scouts_values", &SweepGrid::scouts_values)
      .def_readwrite("detectors_values", &SweepGrid::detectors_values)
      .def_readwrite("p_det_vuln_values", &SweepGrid::p_det_vuln_values)
      .def_readwrite("p_det_expl_values", &SweepGrid::p_det_expl_values)
      .def_readwrite("trials", &SweepGrid::trials)
      .def_readwrite("base", &SweepGrid::base)
      .def_readwrite("master_seed", &SweepGrid::master_seed)
      .def_property_readonly("config_count", &SweepGrid::config_count)
      .def_property_readonly("run_count", &SweepGrid::run_count)
      .def("validate", &SweepGrid::validate)
      .def("__repr__", [](const SweepGrid& grid) {
        return "<SweepGrid\n" + describe(grid) + ">";
      });

  py::class_<DatasetRow>(m, "DatasetRow")
      .def_readonly("config_index", &DatasetRow::config_index)
      .def_readonly("trial", &DatasetRow::trial)
      .def_readonly("seed", &DatasetRow::seed)
      .def_readonly("n_routers", &DatasetRow::n_routers)
      .def_readonly("ba_m", &DatasetRow::ba_m)
      .def_readonly("team_size", &DatasetRow::team_size)
      .def_readonly("scouts", &DatasetRow::scouts)
      .def_readonly("exploiters", &DatasetRow::exploiters)
      .def_readonly("detectors", &DatasetRow::detectors)
      .def_readonly("interceptors", &DatasetRow::interceptors)
      .def_readonly("vul_rate", &DatasetRow::vul_rate)
      .def_readonly("p_scout", &DatasetRow::p_scout)
      .def_readonly("p_exploiter", &DatasetRow::p_exploiter)
      .def_readonly("p_det_vuln", &DatasetRow::p_det_vuln)
      .def_readonly("p_det_expl", &DatasetRow::p_det_expl)
      .def_readonly("delta_interceptor", &DatasetRow::delta_interceptor)
      .def_readonly("max_ticks", &DatasetRow::max_ticks)
      .def_readonly("mean_compromised", &DatasetRow::mean_compromised)
      .def_readonly("max_compromised", &DatasetRow::max_compromised)
      .def_readonly("mean_offline", &DatasetRow::mean_offline)
      .def_readonly("max_offline", &DatasetRow::max_offline)
      .def_readonly("metric2_two_thirds", &DatasetRow::metric2_two_thirds)
      .def_readonly("metric2_full", &DatasetRow::metric2_full)
      .def_readonly("metric3_center", &DatasetRow::metric3_center);

  m.attr("DATASET_HEADER") = kDatasetHeader;
  m.def("derive_run_seed", &derive_run_seed, py::arg("master_seed"),
        py::arg("config_index"), py::arg("trial"));
  m.def("enumerate_grid", &enumerate_grid, py::arg("grid"));
  m.def("run_sweep", &run_sweep, py::arg("grid"), py::arg("parallelism") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "write_dataset",
      [](const std::vector<DatasetRow>& rows, const std::filesystem::path& p) {
        write_dataset(rows, p);
      },
      py::arg("rows"), py::arg("path"));
  m.def(
      "read_dataset",
      [](const std::filesystem::path& p) { return read_dataset(p); },
      py::arg("path"));

  m.attr("CORRELATION_COLUMNS") = [] {
    py::tuple columns(kCorrelationColumns.size());
    for (std::size_t i = 0; i < kCorrelationColumns.size(); ++i) {
      columns[i] = py::str(std::string(kCorrelationColumns[i]));
    }
    return columns;
  }();

  m.def(
      "pearson_r",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return pearson_r(x, y);
      },
      py::arg("x"), py::arg("y"));

  py::class_<CorrelationTable>(m, "CorrelationTable")
      .def_readonly("attacker", &CorrelationTable::attacker)
      .def_readonly("defender", &CorrelationTable::defender);
  m.def("correlation_table", &correlation_table, py::arg("rows"),
        py::arg("per_config_means") = false);

  py::class_<SurfaceTable>(m, "SurfaceTable")
      .def_readonly("metric", &SurfaceTable::metric)
      .def_readonly("statistic", &SurfaceTable::statistic)
      .def_readonly("exploiter_values", &SurfaceTable::exploiter_values)
      .def_readonly("interceptor_values", &SurfaceTable::interceptor_values)
      .def_readonly("values", &SurfaceTable::values);
  m.def(
      "surface_table",
      [](const std::vector<DatasetRow>& rows, const std::string& metric,
         const std::string& statistic) {
        return surface_table(rows, metric, stat_from_string(statistic));
      },
      py::arg("rows"), py::arg("metric"), py::arg("statistic") = "mean");

  m.def(
      "sim_config_from_file",
      [](const std::string& path, const py::dict& overrides) {
        return make_sim_config(load_config_file(path),
                               to_overrides(overrides));
      },
      py::arg("path"), py::arg("overrides") = py::dict());
  m.def(
      "sim_config_from_text",
      [](const std::string& text, const py::dict& overrides) {
        return make_sim_config(parse_config_text(text, "<text>"),
                               to_overrides(overrides));
      },
      py::arg("text"), py::arg("overrides") = py::dict());
  m.def(
      "sweep_grid_from_file",
      [](const std::string& path, const py::dict& overrides) {
        return make_sweep_grid(load_config_file(path),
                               to_overrides(overrides));
      },
      py::arg("path"), py::arg("overrides") = py::dict());
  m.def(
      "sweep_grid_from_text",
      [](const std::string& text, const py::dict& overrides) {
        return make_sweep_grid(parse_config_text(text, "<text>"),
                               to_overrides(overrides));
      },
      py::arg("text"), py::arg("overrides") = py::dict());
  m.def("describe",
        [](const SimConfig& config) { return describe(config); });
  m.def("describe", [](const SweepGrid& grid) { return describe(grid); });
}
