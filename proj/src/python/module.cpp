#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qicc/channel_oracle.hpp"
#include "qicc/cli.hpp"
#include "qicc/entropy.hpp"
#include "qicc/estimator.hpp"
#include "qicc/projgrad.hpp"
#include "qicc/rootfind.hpp"
#include "qicc/solver.hpp"

namespace py = pybind11;
using namespace qicc;
using Powers = std::vector<double>;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Power allocation for over-the-air computation over a bosonic multiple-access channel.";

    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::size_t K, std::size_t M, std::vector<double> eta, double N0, double Pc, double Pt) {
                 Scenario s{K, M, std::move(eta), N0, Pc, Pt};
                 s.validate();
                 return s;
             }),
             py::arg("K"), py::arg("M"), py::arg("eta"), py::arg("N0"), py::arg("Pc"), py::arg("Pt"))
        .def_static(
            "from_share_rule",
            [](std::size_t K, std::size_t M, double oac_share, double N0, double Pc, double Pt) {
                auto s = Scenario::from_share_rule(K, M, oac_share, N0, Pc, Pt);
                s.validate();
                return s;
            },
            py::arg("K"), py::arg("M"), py::arg("oac_share") = 0.6, py::arg("N0") = 2.0, py::arg("Pc") = 10.0,
            py::arg("Pt") = 10.0)
        .def_readonly("K", &Scenario::K)
        .def_readonly("M", &Scenario::M)
        .def_readonly("eta", &Scenario::eta)
        .def_readonly("N0", &Scenario::N0)
        .def_readonly("Pc", &Scenario::Pc)
        .def_readonly("Pt", &Scenario::Pt)
        .def("max_comm_power", &Scenario::max_comm_power)
        .def("max_oac_power", &Scenario::max_oac_power);

    m.def("von_neumann_g", [](double x) { return von_neumann_g(PhotonNumber(x)); }, py::arg("x"));
    m.def("rate_gap", [](double s, double e) { return rate_gap(PhotonNumber(s), PhotonNumber(e)); },
          py::arg("n_sig"), py::arg("n_eff"));
    m.def("max_sum_rate", &max_sum_rate, py::arg("scenario"));

    m.def("lmmse_coefficient", [](const Scenario& s, const Powers& g, double n_sig) { return lmmse_coefficient(s, g, n_sig); }, py::arg("scenario"), py::arg("g"), py::arg("n_sig"));
    m.def(
        "full_mse",
        [](const Scenario& s, std::vector<double> g, double n_sig, std::complex<double> h) {
            return full_mse(s, Allocation{std::move(g), n_sig, h});
        },
        py::arg("scenario"), py::arg("g"), py::arg("n_sig"), py::arg("h"));
    m.def("reduced_mse", [](const Scenario& s, const Powers& g, double n_sig) { return reduced_mse(s, g, n_sig); }, py::arg("scenario"), py::arg("g"), py::arg("n_sig"));
    m.def("mse_min", &mse_min, py::arg("scenario"));
    m.def("mse_max", &mse_max, py::arg("scenario"));
    m.def("mse_gradient", [](const Scenario& s, const Powers& g, double n_sig, double floor) { return mse_gradient(s, g, n_sig, floor); }, py::arg("scenario"), py::arg("g"), py::arg("n_sig"),
          py::arg("floor") = kGradientFloor);

    m.def(
        "solve_nsig",
        [](const Scenario& s, double n_eff, double r_sum, double tol) -> std::optional<double> {
            if (auto r = solve_nsig(s, n_eff, r_sum, tol)) return r->root;
            return std::nullopt;
        },
        py::arg("scenario"), py::arg("n_eff"), py::arg("r_sum"), py::arg("tolerance") = 1e-6);
    m.def(
        "solve_gamma_max", [](const Scenario& s, double r_sum, double tol) { return solve_gamma_max(s, r_sum, tol).root; },
        py::arg("scenario"), py::arg("r_sum"), py::arg("tolerance") = 1e-6);

    m.def(
        "pg_step",
        [](const Scenario& s, std::vector<double> g, double n_sig, double mu) {
            return pg_step(s, g, n_sig, PgParams{mu, kGradientFloor});
        },
        py::arg("scenario"), py::arg("g"), py::arg("n_sig"), py::arg("mu") = 1e-3);
    m.def("project_halfspace", [](const Scenario& s, const Powers& g_bar, double gamma) { return project_halfspace(s, g_bar, gamma); }, py::arg("scenario"), py::arg("g_bar"), py::arg("gamma_max"));
    m.def("split_comm_powers", &split_comm_powers, py::arg("scenario"), py::arg("n_sig"));

    m.def(
        "ao_solve",
        [](const Scenario& s, double r_sum, double mu, double eps_ao, double eps_mse, int n_max,
           bool monotone_guard) {
            SolverParams p;
            p.r_sum = r_sum;
            p.mu = mu;
            p.eps_ao = eps_ao;
            p.eps_mse = eps_mse;
            p.n_max = n_max;
            p.monotone_guard = monotone_guard;
            const Solution sol = ao_solve(s, p);
            py::list mse_trace;
            for (const auto& r : sol.trace.iterations) mse_trace.append(r.mse);
            py::dict out;
            out["g"] = sol.alloc.g;
            out["n_sig"] = sol.alloc.n_sig;
            out["h"] = sol.alloc.h.real();
            out["mse"] = sol.mse;
            out["comm_powers"] = sol.comm_powers;
            out["iterations"] = sol.iterations();
            out["terminated_by"] = to_string(sol.trace.terminated_by);
            out["gamma_max"] = sol.gamma_max.root;
            out["mse_trace"] = mse_trace;
            return out;
        },
        py::arg("scenario"), py::arg("r_sum"), py::arg("mu") = 1e-3, py::arg("eps_ao") = 1e-6,
        py::arg("eps_mse") = 1e-6, py::arg("n_max") = 1000, py::arg("monotone_guard") = false);

    m.def(
        "simulate_mse",
        [](const Scenario& s, std::vector<double> g, double n_sig, std::complex<double> h,
           std::vector<double> comm_powers, std::uint64_t seed, std::size_t n_samples, const std::string& dist) {
            const McEstimate est = simulate_mse(s, Allocation{std::move(g), n_sig, h}, comm_powers,
                                                SymbolModel{parse_distribution(dist), seed}, n_samples, 1);
            return py::make_tuple(est.mse_hat, est.std_err);
        },
        py::arg("scenario"), py::arg("g"), py::arg("n_sig"), py::arg("h"), py::arg("comm_powers"),
        py::arg("seed") = 0, py::arg("n_samples") = 100000, py::arg("distribution") = "circular_gaussian");

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            std::ostringstream out, err;
            args.insert(args.begin(), "qicc");
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
