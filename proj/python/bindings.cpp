#include "pcm/config.hpp"
#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"
#include "pcm/partition.hpp"
#include "pcm/selection.hpp"
#include "pcm/settlement.hpp"
#include "pcm/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace pcm;

namespace {

std::vector<double> weights_for(const MarketInstance& inst) {
    return weights(SelectionModel(inst.selection_probabilities()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Incentive pricing core";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    py::enum_<BalancingSide>(m, "BalancingSide")
        .value("up", BalancingSide::up)
        .value("down", BalancingSide::down);
    py::enum_<PriceOrder>(m, "PriceOrder")
        .value("ls_ge_wp", PriceOrder::ls_ge_wp)
        .value("ls_lt_wp", PriceOrder::ls_lt_wp);
    py::enum_<ChainMode>(m, "ChainMode")
        .value("planning", ChainMode::planning)
        .value("replay", ChainMode::replay);

    py::class_<IncentivePair>(m, "IncentivePair")
        .def(py::init<>())
        .def(py::init([](double wp, double ls) { return IncentivePair{wp, ls}; }), py::arg("r_wp"),
             py::arg("r_ls"))
        .def_readwrite("r_wp", &IncentivePair::r_wp)
        .def_readwrite("r_ls", &IncentivePair::r_ls)
        .def("__repr__", [](const IncentivePair& p) {
            return "IncentivePair(r_wp=" + std::to_string(p.r_wp) + ", r_ls=" + std::to_string(p.r_ls) + ")";
        });

    py::class_<GeneratorCost>(m, "GeneratorCost")
        .def_readwrite("a", &GeneratorCost::a)
        .def_readwrite("b", &GeneratorCost::b)
        .def_readwrite("c", &GeneratorCost::c);

    py::class_<MarketInstance>(m, "MarketInstance")
        .def_readonly("gen", &MarketInstance::gen)
        .def_readonly("horizon", &MarketInstance::horizon)
        .def_property_readonly("size", &MarketInstance::size)
        .def("selection_probabilities", &MarketInstance::selection_probabilities);

    py::class_<HourData>(m, "HourData")
        .def_property_readonly("hour", [](const HourData& h) { return h.hour.value(); })
        .def_readonly("up_price", &HourData::up_price)
        .def_readonly("down_price", &HourData::down_price)
        .def_property_readonly("size", &HourData::size)
        .def("sum_net_demand", &HourData::sum_net_demand);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<std::size_t, std::uint64_t>(), py::arg("size"), py::arg("wp_mask"))
        .def_static("from_wp_set", &Scenario::from_wp_set)
        .def_property_readonly("size", &Scenario::size)
        .def_property_readonly("mask", &Scenario::mask)
        .def_property_readonly("wp_count", &Scenario::wp_count)
        .def("wp_set", &Scenario::wp_set)
        .def("ls_set", &Scenario::ls_set)
        .def("label", &Scenario::label)
        .def("__repr__", [](const Scenario& s) { return "Scenario('" + s.label() + "')"; });

    py::class_<NeOutcome>(m, "NeOutcome")
        .def_readonly("x", &NeOutcome::x)
        .def_readonly("x_tot", &NeOutcome::x_tot);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("verify_grid", &SolverOptions::verify_grid)
        .def_readwrite("grid_size", &SolverOptions::grid_size)
        .def_readwrite("verify_equilibrium", &SolverOptions::verify_equilibrium)
        .def_readwrite("single_package", &SolverOptions::single_package)
        .def_readwrite("parallel", &SolverOptions::parallel);

    py::class_<CellResult>(m, "CellResult")
        .def_readonly("cell_id", &CellResult::cell_id)
        .def_readonly("n_sigma", &CellResult::n_sigma)
        .def_readonly("order", &CellResult::order)
        .def_property_readonly("feasible", [](const CellResult& c) { return c.status == CellStatus::optimal; })
        .def_readonly("reason", &CellResult::reason)
        .def_readonly("prices", &CellResult::prices)
        .def_readonly("cost", &CellResult::cost);

    py::class_<HourSolution>(m, "HourSolution")
        .def_property_readonly("hour", [](const HourSolution& s) { return s.hour.value(); })
        .def_readonly("prices", &HourSolution::prices)
        .def_readonly("n_sigma_star", &HourSolution::n_sigma_star)
        .def_readonly("order", &HourSolution::order)
        .def_readonly("cell_id", &HourSolution::cell_id)
        .def_readonly("expected_cost", &HourSolution::expected_cost)
        .def_readonly("budget", &HourSolution::budget)
        .def_readonly("per_cell", &HourSolution::per_cell)
        .def_readonly("x_prev_in", &HourSolution::x_prev_in)
        .def_readonly("x_prev_out", &HourSolution::x_prev_out)
        .def_readonly("warnings", &HourSolution::warnings);

    py::class_<LsPrice>(m, "LsPrice")
        .def_readonly("id", &LsPrice::id)
        .def_readonly("b_star", &LsPrice::b_star)
        .def_readonly("service", &LsPrice::service)
        .def_readonly("expected_da_cost", &LsPrice::expected_da_cost);

    py::class_<SettlementRecord>(m, "SettlementRecord")
        .def_readonly("scenario", &SettlementRecord::scenario)
        .def_readonly("x", &SettlementRecord::x)
        .def_readonly("x_tot", &SettlementRecord::x_tot)
        .def_readonly("ls_prices", &SettlementRecord::ls_prices)
        .def_readonly("ea_profit", &SettlementRecord::ea_profit)
        .def_readonly("z_hat", &SettlementRecord::z_hat)
        .def_readonly("da_demand", &SettlementRecord::da_demand)
        .def_readonly("cb_used", &SettlementRecord::cb_used);

    py::class_<UsmResult>(m, "UsmResult")
        .def_readonly("x_hat_tot", &UsmResult::x_hat_tot)
        .def_readonly("social_cost", &UsmResult::social_cost)
        .def_readonly("side", &UsmResult::side);

    m.def("load_config", [](const std::filesystem::path& p) { return load_config(p).instance; },
          py::arg("path"), "Read a JSON config and its CSVs into a validated instance.");
    m.def("validate", [](const MarketInstance& inst) { return validate(inst).to_string(); });
    m.def("hour_data", [](const MarketInstance& inst, int t) { return hour_data(inst, Hour(t)); });
    m.def("selection_weights", [](const std::vector<double>& q) { return weights(SelectionModel(q)); },
          py::arg("q"), "Q(n) for n = 0..N.");
    m.def("scenario_prob", [](const std::vector<double>& q, const Scenario& s) {
        return scenario_prob(SelectionModel(q), s);
    });
    m.def("enumerate_scenarios", &enumerate_scenarios, py::arg("n"), py::arg("cap") = kDefaultScenarioCap);
    m.def("single_package_weights", &single_package_weights);
    m.def("nash_equilibrium", &nash_equilibrium);
    m.def("best_response_oracle", &best_response_oracle);
    m.def("expected_social_cost", [](const HourData& h, IncentivePair p, const std::vector<double>& q) {
        return expected_social_cost(h, build_partition(h), p, q);
    });
    m.def(
        "solve_hour",
        [](const HourData& h, const std::vector<double>& q, double x_prev, const SolverOptions& o) {
            py::gil_scoped_release release;
            return solve_hour(h, q, x_prev, o);
        },
        py::arg("hour"), py::arg("q"), py::arg("x_prev") = 0.0, py::arg("options") = SolverOptions{});
    m.def(
        "solve_day",
        [](const MarketInstance& inst, const SolverOptions& o, ChainMode mode,
           const std::vector<Scenario>& realized) {
            const auto q = o.single_package ? single_package_weights(inst.size()) : weights_for(inst);
            py::gil_scoped_release release;
            return solve_day(inst, q, o, mode, realized);
        },
        py::arg("instance"), py::arg("options") = SolverOptions{}, py::arg("mode") = ChainMode::planning,
        py::arg("realized") = std::vector<Scenario>{});
    m.def("settle", &settle, py::arg("hour"), py::arg("solution"), py::arg("scenario"));
    m.def("usm_baseline", &usm_baseline);
}
