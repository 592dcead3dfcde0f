// Copyright 2026 The icin-feedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icin/allocator.hpp"
#include "icin/bounds.hpp"
#include "icin/config.hpp"
#include "icin/errors.hpp"
#include "icin/fading.hpp"
#include "icin/numerics.hpp"
#include "icin/precoder.hpp"
#include "icin/quantizer.hpp"
#include "icin/rng.hpp"
#include "icin/scenario.hpp"
#include "icin/simulator.hpp"

namespace py = pybind11;

namespace {

icin::CVector beamformer(const icin::CVector& desired, const std::vector<icin::CVector>& nulls,
                         double cap) {
  return icin::icin_beamformer({desired, nulls}, cap).vector;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Feedback-bit partitioning for cooperative interference nulling";

  py::register_exception<icin::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<icin::SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
  py::register_exception<icin::CapacityError>(m, "CapacityError", PyExc_OverflowError);
  py::register_exception<icin::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<icin::RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"), py::arg("stream_id"))
      .def("substream", &icin::RngStream::substream, py::arg("tag"))
      .def("next_u64", &icin::RngStream::next_u64)
      .def("uniform", &icin::RngStream::uniform)
      .def("normal", &icin::RngStream::normal)
      .def("complex_normal", &icin::RngStream::complex_normal);

  m.def("bessel_j0", &icin::bessel_j0, py::arg("x"));
  m.def("ln_gamma", &icin::ln_gamma, py::arg("x"));
  m.def("beta_fn", &icin::beta_fn, py::arg("a"), py::arg("b"));

  m.def("clarke_correlation",
        [](int delay, double velocity, double carrier, double ts) {
          return icin::clarke_correlation(delay, {velocity, carrier, ts});
        },
        py::arg("delay_symbols"), py::arg("velocity_mps"), py::arg("carrier_hz"),
        py::arg("symbol_duration_s"));
  m.def("cost231_pathloss_db", &icin::cost231_pathloss_db, py::arg("distance_m"));
  m.def("rayleigh_channel", &icin::rayleigh_channel, py::arg("rng"), py::arg("nt"));

  py::class_<icin::QuantizedDirection>(m, "QuantizedDirection")
      .def_readonly("direction", &icin::QuantizedDirection::direction)
      .def_readonly("cos2_theta", &icin::QuantizedDirection::cos2_theta)
      .def_property_readonly("sin2_theta", &icin::QuantizedDirection::sin2_theta);
  m.def("rvq_quantize",
        [](const icin::CVector& dir, int bits, icin::RngStream& rng, int cap) {
          return icin::rvq_quantize(dir, bits, rng, cap);
        },
        py::arg("direction"), py::arg("bits"), py::arg("rng"),
        py::arg("explicit_cap") = icin::kDefaultExplicitCap);
  m.def("statistical_quantize",
        [](const icin::CVector& dir, int bits, icin::RngStream& rng) {
          return icin::statistical_quantize(dir, bits, rng);
        },
        py::arg("direction"), py::arg("bits"), py::arg("rng"));

  m.def("icin_beamformer", &beamformer, py::arg("desired_direction"),
        py::arg("caused_interference"), py::arg("condition_cap") = icin::kDefaultConditionCap);

  py::class_<icin::LinkParams>(m, "LinkParams")
      .def(py::init([](double rho, std::vector<double> alphas, double eta_desired,
                       std::vector<double> etas, std::size_t nt) {
             icin::LinkParams p;
             p.rho = rho;
             p.alphas = std::move(alphas);
             p.eta_desired = eta_desired;
             p.eta_interferers = std::move(etas);
             p.nt = nt;
             return p;
           }),
           py::arg("rho"), py::arg("alphas"), py::arg("eta_desired"), py::arg("eta_interferers"),
           py::arg("nt"))
      .def_readwrite("rho", &icin::LinkParams::rho)
      .def_readwrite("alphas", &icin::LinkParams::alphas)
      .def_readwrite("eta_desired", &icin::LinkParams::eta_desired)
      .def_readwrite("eta_interferers", &icin::LinkParams::eta_interferers)
      .def_readwrite("nt", &icin::LinkParams::nt)
      .def_property_readonly("n_cells", &icin::LinkParams::n_cells);

  py::class_<icin::BitAllocation>(m, "BitAllocation")
      .def(py::init([](int desired, std::vector<int> interferers) {
             return icin::BitAllocation{desired, std::move(interferers)};
           }),
           py::arg("desired_bits"), py::arg("interferer_bits"))
      .def_readwrite("desired_bits", &icin::BitAllocation::desired_bits)
      .def_readwrite("interferer_bits", &icin::BitAllocation::interferer_bits)
      .def("total", &icin::BitAllocation::total)
      .def("as_tuple",
           [](const icin::BitAllocation& a) {
             py::list out;
             out.append(a.desired_bits);
             for (int b : a.interferer_bits) out.append(b);
             return py::tuple(out);
           })
      .def("__eq__", [](const icin::BitAllocation& a, const icin::BitAllocation& b) { return a == b; })
      .def("__repr__", &icin::BitAllocation::to_tuple_string);

  m.def("lemma1_binomial_sum", &icin::lemma1_binomial_sum, py::arg("bits"), py::arg("nt"));
  m.def("lemma1_beta_form", &icin::lemma1_beta_form, py::arg("bits"), py::arg("nt"));
  m.def("interference_term_bound", &icin::interference_term_bound, py::arg("bits"), py::arg("eta"),
        py::arg("nt"));
  m.def("desired_term_bound", &icin::desired_term_bound, py::arg("bits"), py::arg("eta"),
        py::arg("nt"), py::arg("rho"));
  m.def("loss_upper_bound_user", &icin::loss_upper_bound_user, py::arg("params"),
        py::arg("allocation"));
  m.def("approx_loss_user",
        py::overload_cast<const icin::LinkParams&, const icin::BitAllocation&>(&icin::approx_loss_user),
        py::arg("params"), py::arg("allocation"));

  m.def("allocate",
        [](int btot, const icin::LinkParams& p, const std::string& regime) {
          return icin::allocate(btot, p, icin::parse_regime(regime));
        },
        py::arg("btot"), py::arg("params"), py::arg("regime") = "auto");
  m.def("equal_bit_allocation", &icin::equal_bit_allocation, py::arg("btot"), py::arg("k_cells"));
  m.def("exhaustive_allocation", &icin::exhaustive_allocation, py::arg("btot"), py::arg("params"));
  m.def("partition_interferer_bits",
        [](double budget, const std::vector<double>& weights, std::size_t nt) {
          std::vector<icin::InterfererWeight> w;
          for (std::size_t i = 0; i < weights.size(); ++i) w.push_back({i, weights[i]});
          return icin::partition_interferer_bits(budget, w, nt);
        },
        py::arg("budget_bits"), py::arg("weights"), py::arg("nt"));

  m.def("parse_config", &icin::parse_config, py::arg("json_text"));
  m.def("default_config_json", [] { return icin::config_to_json(icin::SimConfig{}); });
  m.def("user_link_params",
        [](const std::string& config_json, double d) {
          const icin::SimConfig c =
              config_json.empty() ? icin::SimConfig{} : icin::parse_config(config_json);
          return icin::user_link_params(icin::build_hex_scenario(c), d);
        },
        py::arg("config_json"), py::arg("distance_m"));
  m.def("run_sweep_csv",
        [](const std::string& kind, const std::string& config_json, unsigned threads) {
          const icin::SimConfig c =
              config_json.empty() ? icin::SimConfig{} : icin::parse_config(config_json);
          py::gil_scoped_release release;
          return icin::to_csv(icin::run_sweep(icin::parse_sweep_kind(kind), c, threads));
        },
        py::arg("kind"), py::arg("config_json") = "", py::arg("threads") = 1);
}
