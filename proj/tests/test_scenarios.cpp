// Copyright 2026 The qthermo Authors
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

#include <doctest.h>

#include <cmath>

#include "qthermo/scenarios.hpp"
#include "qthermo/thermo.hpp"
#include "support.hpp"

using namespace qthermo;
using namespace qthermo::testing;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

// Independent evaluation: build H and the dissipator by hand.
double heat_by_hand(double gamma, double e, double x, double z) {
  const Operator plus = 0.5 * (identity(2) + pauli_x());
  const Operator h = e * plus;
  const Operator rho = 0.5 * (identity(2) + x * pauli_x() + z * pauli_z());
  Operator l = Operator::Zero(2, 2);
  for (int j = 0; j < 2; ++j) {
    const Operator p = matrix_unit(2, j, j);
    l += gamma * (2.0 * p * rho * p - p * rho - rho * p);
  }
  return (h * l).trace().real();
}

}  // namespace

TEST_CASE("two-level decoherence heat over a grid") {
  for (double gamma : grid(0.1, 2.0, 5)) {
    for (double e : grid(0.5, 2.0, 5)) {
      for (double x : grid(-1.0, 1.0, 5)) {
        TwoLevelDecoherenceParams p{gamma, e, x, 0.0};
        const double q = two_level_decoherence_heat(p);
        CHECK(std::abs(std::abs(q) - gamma * e * std::abs(x)) <= 1e-12);
        CHECK(std::abs(q - (-gamma * e * x)) <= 1e-12);
        CHECK(std::abs(q - heat_by_hand(gamma, e, x, 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("two-level decoherence heat examples") {
  CHECK(two_level_decoherence_heat({1.0, 1.0, 0.0, 0.3}) == 0.0);
  CHECK(std::abs(two_level_decoherence_heat({1.0, 1.0, 0.5, 0.0})) == doctest::Approx(0.5).epsilon(1e-12));
  const double ref = two_level_decoherence_heat({0.7, 1.3, 0.4, 0.0});
  for (double z : {-0.5, 0.0, 0.5}) CHECK(two_level_decoherence_heat({0.7, 1.3, 0.4, z}) == ref);
  CHECK_THROWS_AS(two_level_decoherence_heat({1.0, 1.0, 0.8, 0.8}), Error);
  try {
    validate(TwoLevelDecoherenceParams{1.0, 1.0, 1.5, 0.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidBlochVector);
  }
  CHECK_THROWS_AS(validate(TwoLevelDecoherenceParams{-1.0, 1.0, 0.1, 0.0}), Error);
}

TEST_CASE("bloch round trip") {
  const DensityMatrix rho = bloch_state(0.3, -0.4, 0.5);
  const BlochVector b = bloch_vector(rho);
  CHECK(b.x == doctest::Approx(0.3));
  CHECK(b.y == doctest::Approx(-0.4));
  CHECK(b.z == doctest::Approx(0.5));
  CHECK(max_abs(rho.op() - 0.5 * (identity(2) + 0.3 * pauli_x() - 0.4 * pauli_y() + 0.5 * pauli_z())) < 1e-15);
}

TEST_CASE("build_device") {
  const DeviceAssembly dev = build_device(DeviceParams{});
  REQUIRE(dev.baths.size() == 3);
  CHECK(dev.left().name() == "left");
  CHECK(dev.right().name() == "right");
  CHECK(dev.dephasing()->name() == "dephasing");
  CHECK(dev.hamiltonian(kDeviceLeft, kDeviceLeft).real() == 1.5);
  CHECK(dev.hamiltonian(kDeviceRight, kDeviceRight).real() == 1.0);
  CHECK(dev.hamiltonian(kDeviceLeft, kDeviceRight).real() == doctest::Approx(0.2));
  CHECK(dev.hamiltonian(kDeviceGround, kDeviceGround).real() == 0.0);

  // dephasing leaves |0> alone
  const Operator g = dev.dephasing()->generator().apply(
      0.5 * (matrix_unit(3, 0, 0) + matrix_unit(3, 0, 1) + matrix_unit(3, 1, 0) + matrix_unit(3, 1, 1)));
  CHECK(std::abs(g(0, 1) - Complex(-0.5 * dev.params.gamma)) < 1e-15);
  CHECK(std::abs(g(0, 0)) == 0.0);

  Rng rng(9);
  const SuperOperator l = liouvillian(dev.hamiltonian, dev.baths);
  for (int trial = 0; trial < 10; ++trial) CHECK(std::abs(l.apply(random_operator(3, rng)).trace()) < 1e-13);

  DeviceParams clean;
  clean.gamma = 0.0;
  CHECK(build_device(clean).baths.size() == 2);
  CHECK(build_device(clean).dephasing() == nullptr);

  DeviceParams bad;
  bad.e_l = 0.5;
  CHECK_THROWS_AS(build_device(bad), Error);
  bad = DeviceParams{};
  bad.n_r = 0.0;
  CHECK_THROWS_AS(build_device(bad), Error);
  bad = DeviceParams{};
  bad.gamma = -0.1;
  CHECK_THROWS_AS(build_device(bad), Error);
}

TEST_CASE("decoupled device") {
  DeviceParams p;
  p.v = 0.0;
  for (double gamma : {0.0, 0.3}) {
    p.gamma = gamma;
    const DeviceReport r = device_report(p);
    CHECK(std::abs(r.coherence) < 1e-12);
    CHECK(std::abs(r.heat_l) < 1e-12);
    CHECK(std::abs(r.heat_r) < 1e-12);
    CHECK(std::abs(r.heat_d) < 1e-12);
    CHECK_FALSE(r.x_l.has_value());
  }
}

TEST_CASE("strong dephasing suppresses coherence") {
  const DeviceParams base;
  const double max_rate = device_lead_max_rate(base);
  double prev = std::numeric_limits<double>::infinity();
  for (double gamma : {0.0, 1.0, 10.0, 100.0 * max_rate}) {
    DeviceParams p = base;
    p.gamma = gamma;
    const double coh = std::abs(device_report(p).coherence);
    CAPTURE(gamma);
    CHECK(coh < prev);
    prev = coh;
  }
}

TEST_CASE("device report on the default preset") {
  const DeviceReport r = device_report(DeviceParams{}, 1.0);
  CHECK(r.m_ld == doctest::Approx(0.072).epsilon(1e-12));
  CHECK(r.m_dl == doctest::Approx(0.072).epsilon(1e-12));
  CHECK(r.residual <= 1e-9);
  CHECK(r.entropy_production > 0.0);
  REQUIRE(r.x_l.has_value());
  CHECK(*r.x_d == -*r.x_l);
  CHECK(std::abs(r.heat_l + r.heat_r + r.heat_d) <= 1e-12);
  // the left lead pumps energy in
  CHECK(r.heat_l > 0.0);
  CHECK(r.heat_r < 0.0);
  CHECK(r.coherence == r.nu.op()(kDeviceLeft, kDeviceRight));
}

TEST_CASE("device report invariants on random draws") {
  Rng rng(4321);
  for (int trial = 0; trial < 50; ++trial) {
    DeviceParams p;
    p.e_l = uniform(rng, 1.05, 3.0);
    p.e_r = uniform(rng, 0.0, 1.0);
    p.v = uniform(rng, -1.0, 1.0);
    p.n_l = uniform(rng, 0.05, 2.0);
    p.n_r = uniform(rng, 0.05, 2.0);
    p.gamma = uniform(rng, 0.0, 2.0);
    const double c = uniform(rng, 0.5, 2.0);
    const DeviceReport r = device_report(p, c);
    const double scale = std::max({std::abs(r.heat_l), std::abs(r.heat_r), 1e-30});
    CHECK(std::abs(r.heat_l + r.heat_r + r.heat_d) <= 1e-9 * scale + 1e-12);
    CHECK(r.entropy_production >= -1e-9);
    CHECK(std::abs(r.m_ld - r.m_dl) <= 1e-10);
    CHECK(r.residual <= 1e-9);
  }
}

TEST_CASE("gamma sweep") {
  const DeviceParams p;
  const double top = 100.0 * device_lead_max_rate(p);
  const std::vector<double> gammas{0.0, 0.1, 0.5, 1.0, 2.0, top};
  const auto sweep = gamma_sweep(p, gammas, 1.5);
  REQUIRE(sweep.size() == gammas.size());
  for (const SweepPoint& pt : sweep) REQUIRE(pt.report.has_value());
  CHECK(sweep.front().report->heat_d == 0.0);
  CHECK(std::abs(sweep.back().report->coherence) < std::abs(sweep.front().report->coherence));
  for (const SweepPoint& pt : sweep) {
    CHECK(pt.report->m_ld == doctest::Approx(pt.gamma * p.n_l * p.v * 1.5).epsilon(1e-10));
  }
  const double slope = (sweep[3].report->m_ld - sweep[1].report->m_ld) / (gammas[3] - gammas[1]);
  CHECK(slope == doctest::Approx(p.n_l * p.v * 1.5).epsilon(1e-10));
  CHECK_THROWS_AS(gamma_sweep(p, {1.0, 0.5}), Error);
}

TEST_CASE("two-level decoherence spec") {
  const TwoLevelDecoherenceParams p{0.5, 2.0, 0.6, 0.2};
  const EvolutionSpec spec = two_level_decoherence_spec(p, 4.0);
  CHECK(spec.baths.size() == 1);
  CHECK(spec.baths[0].name() == "dephasing");
  CHECK(spec.t_max == 4.0);
  const DensityMatrix rho = bloch_state(p.x, 0.0, p.z);
  CHECK(heat_rate(spec.hamiltonian.at(0.0), spec.baths[0], rho) == doctest::Approx(two_level_decoherence_heat(p)));
}
