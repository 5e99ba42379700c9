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
#include <limits>

#include "qthermo/scenarios.hpp"
#include "qthermo/thermo.hpp"
#include "support.hpp"

using namespace qthermo;
using namespace qthermo::testing;

namespace {

Operator diag(std::initializer_list<double> xs) {
  Operator out = Operator::Zero(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) out(i, i) = x, ++i;
  return out;
}

struct Preset {
  const char* name;
  EvolutionSpec spec;
  int dim;
};

// Specs covering the scenario baths, short enough for unit tests.
std::vector<Preset> presets() {
  std::vector<Preset> out;
  const TwoLevelDecoherenceParams tp;
  out.push_back({"two-level", two_level_decoherence_spec(tp, 3.0), 2});
  out.push_back({"thermal", make_evolution_spec(Operator(diag({0.0, 1.0})),
                                                {thermal_two_level_bath(1.0, 1.0, 1.0)}, 3.0),
                 2});
  const DeviceAssembly dev = build_device(DeviceParams{});
  out.push_back({"device", make_evolution_spec(dev.hamiltonian, dev.baths, 3.0), 3});
  DeviceParams coherent;
  coherent.gamma = 0.0;
  const DeviceAssembly dev0 = build_device(coherent);
  out.push_back({"device-coherent", make_evolution_spec(dev0.hamiltonian, dev0.baths, 3.0), 3});
  return out;
}

std::vector<Bath> scenario_baths() {
  std::vector<Bath> out;
  out.push_back(two_level_decoherence_bath(1.0));
  out.push_back(thermal_two_level_bath(1.0, 1.0, 1.0));
  const DeviceAssembly dev = build_device(DeviceParams{});
  for (const Bath& b : dev.baths) out.push_back(b);
  return out;
}

}  // namespace

TEST_CASE("energy and work rate") {
  CHECK(energy(pauli_z(), DensityMatrix::maximally_mixed(2)) == 0.0);
  const double e = 1.7, x = 0.3;
  const Operator proj = 0.5 * (identity(2) + pauli_x());
  const DensityMatrix rho(0.5 * (identity(2) + x * pauli_x()));
  CHECK(energy(e * proj, rho) == doctest::Approx(e * (1.0 + x) / 2.0).epsilon(1e-14));
  CHECK(energy(diag({0, 1, 2}), DensityMatrix(diag({0.5, 0.3, 0.2}))) == doctest::Approx(0.7));
  CHECK(work_rate(Operator::Zero(2, 2), rho) == 0.0);
  CHECK(work_rate(pauli_x(), rho) == doctest::Approx(x).epsilon(1e-14));
  CHECK_THROWS_AS(energy(matrix_unit(2, 0, 1), rho), Error);
  CHECK_THROWS_AS(work_rate(matrix_unit(2, 0, 1), rho), Error);
}

TEST_CASE("heat rate") {
  SUBCASE("dephasing in the eigenbasis of h exchanges no heat") {
    Rng rng(3);
    const Bath bath = dephasing_bath(computational_basis(3), 0.9);
    for (int trial = 0; trial < 10; ++trial)
      CHECK(std::abs(heat_rate(diag({0.0, 1.3, 2.2}), bath, random_state(3, rng))) < 1e-14);
  }
  SUBCASE("two-level decoherence") {
    const Operator h = two_level_decoherence_hamiltonian(1.0);
    const Bath bath = two_level_decoherence_bath(1.0);
    CHECK(heat_rate(h, bath, bloch_state(0.5, 0.0, 0.3)) == doctest::Approx(-0.5).epsilon(1e-12));
    // hand evaluation: Tr[H L(rho)] with L(rho) = -gamma x sigma_x
    const Operator l_rho = -1.0 * 0.5 * pauli_x();
    CHECK((h * l_rho).trace().real() == doctest::Approx(-0.5));
  }
  CHECK_THROWS_AS(heat_rate(matrix_unit(2, 0, 1), two_level_decoherence_bath(1.0),
                            DensityMatrix::maximally_mixed(2)),
                  Error);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::basis_state(3, 1)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(von_neumann_entropy(DensityMatrix(diag({2.0 / 3.0, 1.0 / 3.0}))) ==
        doctest::Approx(std::log(3.0) - 2.0 / 3.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(von_neumann_entropy(DensityMatrix(diag({2.0 / 3.0, 1.0 / 3.0}))) == doctest::Approx(0.6365).epsilon(1e-4));
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const double s = von_neumann_entropy(random_state(d, rng));
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(d)) + 1e-12);
  }
}

TEST_CASE("relative entropy to a bath") {
  const DensityMatrix plus(0.5 * (identity(2) + pauli_x()));
  CHECK(relative_entropy_to_bath(plus, two_level_decoherence_bath(0.7)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Gibbs diag(2/3, 1/3): E = ln 2 at beta = 1.
  const Bath thermal = thermal_two_level_bath(std::log(2.0), 1.0, 1.0);
  CHECK(relative_entropy_to_bath(DensityMatrix::basis_state(2, 0), thermal) ==
        doctest::Approx(-std::log(2.0 / 3.0)).epsilon(1e-12));

  const Bath cold = thermal_two_level_bath(1.0, std::numeric_limits<double>::infinity(), 1.0);
  CHECK(std::isinf(relative_entropy_to_bath(DensityMatrix::maximally_mixed(2), cold)));
  CHECK(relative_entropy_to_bath(DensityMatrix::basis_state(2, 0), cold) == doctest::Approx(0.0));

  Rng rng(5);
  for (const Bath& b : scenario_baths())
    for (int trial = 0; trial < 10; ++trial)
      CHECK(relative_entropy_to_bath(random_state(b.dim(), rng), b) >= -1e-10);
}

TEST_CASE("relative entropy vanishes exactly on the stationary set") {
  Rng rng(66);
  for (const Bath& b : scenario_baths()) {
    CAPTURE(b.name());
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_state(b.dim(), rng);
      const DensityMatrix fixed = stationary_map(b, rho);
      // stationary -> R = 0
      CHECK(std::abs(relative_entropy_to_bath(fixed, b)) < 1e-9);
      // not stationary -> R > 0
      const bool moved = max_abs(fixed.op() - rho.op()) > 1e-8;
      CHECK(moved == (relative_entropy_to_bath(rho, b) > 1e-12));
    }
  }
}

TEST_CASE("entropy flux") {
  Rng rng(21);
  SUBCASE("thermal flux is -beta times heat") {
    const double e = 1.4, beta = 0.6;
    const Bath bath = thermal_two_level_bath(e, beta, 1.0);
    const Operator h = diag({0.0, e});
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix rho = random_state(2, rng);
      CHECK(entropy_flux(bath, rho) == doctest::Approx(-beta * heat_rate(h, bath, rho)).epsilon(1e-10));
    }
  }
  SUBCASE("uniform diagonal under dephasing") {
    const Bath bath = two_level_decoherence_bath(1.0);
    CHECK(std::abs(entropy_flux(bath, bloch_state(0.6, -0.2, 0.0))) < 1e-14);
  }
  SUBCASE("stationary states carry no flux") {
    for (const Bath& b : scenario_baths()) {
      const DensityMatrix fixed = stationary_map(b, random_state(b.dim(), rng));
      CHECK(std::abs(entropy_flux(b, fixed)) < 1e-8);
    }
  }
  SUBCASE("support violation") {
    const Bath cold = thermal_two_level_bath(1.0, std::numeric_limits<double>::infinity(), 1.0);
    try {
      entropy_flux(cold, DensityMatrix::maximally_mixed(2));
      FAIL("expected SupportViolation");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::SupportViolation);
    }
  }
}

TEST_CASE("entropy production is non-negative") {
  Rng rng(2024);
  int evaluations = 0;
  const auto baths = scenario_baths();
  const DeviceAssembly dev = build_device(DeviceParams{});
  for (int trial = 0; trial < 60; ++trial) {
    const DensityMatrix q = random_state(2, rng, 0.01);
    const DensityMatrix d = random_state(3, rng, 0.01);
    CHECK(entropy_production(q, {baths[0]}) >= -1e-9);
    CHECK(entropy_production(q, {baths[1]}) >= -1e-9);
    CHECK(entropy_production(q, {baths[0], baths[1]}) >= -1e-9);
    CHECK(entropy_production(d, dev.baths) >= -1e-9);
    evaluations += 4;
  }
  CHECK(evaluations >= 200);
}

TEST_CASE("entropy production identities") {
  Rng rng(8);
  const DeviceAssembly dev = build_device(DeviceParams{});
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(3, rng);
    double flux = 0.0;
    for (const Bath& b : dev.baths) flux += entropy_flux(b, rho);
    CHECK(entropy_rate(rho, dev.baths) + flux ==
          doctest::Approx(entropy_production(rho, dev.baths)).epsilon(1e-12));
    // commutator part of the dynamics carries no entropy
    const Operator comm = dev.hamiltonian * rho.op() - rho.op() * dev.hamiltonian;
    CHECK(std::abs(trace_product(comm, matrix_log_on_support(rho.spectrum()))) < 1e-12);
  }
  const Bath thermal = thermal_two_level_bath(1.0, 2.0, 1.0);
  const DensityMatrix gibbs = stationary_map(thermal, DensityMatrix::maximally_mixed(2));
  CHECK(std::abs(entropy_production(gibbs, {thermal})) < 1e-12);
}

TEST_CASE("single-bath production equals minus the rate of relative entropy") {
  const DeviceAssembly dev = build_device(DeviceParams{});
  const DensityMatrix nu = steady_state(liouvillian(dev.hamiltonian, dev.baths));
  CHECK(entropy_production(nu, dev.baths) > 0.0);
  const Operator zero = Operator::Zero(3, 3);
  for (const Bath& b : dev.baths) {
    CAPTURE(b.name());
    const double h = 0.01;
    const EvolutionSpec spec = make_evolution_spec(zero, {b}, 8 * h, h / 4);
    const Trajectory traj = propagate(nu, spec);
    // centre at t = 4h; samples every h/4
    const std::size_t c = 16;
    auto r = [&](std::size_t k) { return relative_entropy_to_bath(traj.states[k], b); };
    const double d_h = (r(c + 4) - r(c - 4)) / (2 * h);
    const double d_h2 = (r(c + 2) - r(c - 2)) / h;
    const double rich = (4.0 * d_h2 - d_h) / 3.0;
    CHECK(-rich == doctest::Approx(entropy_production(traj.states[c], {b})).epsilon(1e-7));
  }
}

TEST_CASE("relative entropy is monotone under single-bath relaxation") {
  Rng rng(404);
  std::vector<Bath> baths = scenario_baths();
  baths.push_back(dephasing_bath(computational_basis(3), 0.5, "full-dephasing"));
  for (const Bath& b : baths) {
    CAPTURE(b.name());
    const EvolutionSpec spec = make_evolution_spec(Operator(Operator::Zero(b.dim(), b.dim())), {b}, 3.0, 0.02);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      const Trajectory traj = propagate(random_state(b.dim(), rng), spec);
      double prev = relative_entropy_to_bath(traj.states[0], b);
      for (std::size_t k = 1; k < traj.states.size(); ++k) {
        const double cur = relative_entropy_to_bath(traj.states[k], b);
        ok = ok && cur <= prev + 1e-9;
        prev = cur;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("sample_thermodynamics") {
  SUBCASE("unitary evolution") {
    const EvolutionSpec spec = make_evolution_spec(pauli_z(), {}, 2.0, 0.01);
    const Trajectory traj = propagate(bloch_state(0.3, 0.4, 0.5), spec);
    const auto samples = sample_thermodynamics(traj, spec);
    REQUIRE(samples.size() == traj.states.size());
    for (const auto& s : samples) {
      CHECK(s.energy == doctest::Approx(samples.front().energy).epsilon(1e-12));
      CHECK(s.heat_rates.empty());
      CHECK(s.work_rate == 0.0);
    }
  }
  SUBCASE("two-level heat decays at 2 gamma") {
    TwoLevelDecoherenceParams p;
    p.gamma = 0.5;
    p.e_level = 1.3;
    p.x = 0.8;
    // H fixes |+>; take H = 0 so coherence decays freely
    const EvolutionSpec spec = make_evolution_spec(Operator(Operator::Zero(2, 2)),
                                                   {two_level_decoherence_bath(p.gamma)}, 2.0, 0.01);
    const Trajectory traj = propagate(bloch_state(p.x, 0.0, p.z), spec);
    const Operator h = two_level_decoherence_hamiltonian(p.e_level);
    for (std::size_t k = 0; k < traj.states.size(); k += 20) {
      const double q = heat_rate(h, spec.baths[0], traj.states[k]);
      CHECK(std::abs(q) == doctest::Approx(p.gamma * p.e_level * p.x * std::exp(-2 * p.gamma * traj.times[k])).epsilon(1e-9));
    }
  }
  SUBCASE("device production stays non-negative from random starts") {
    Rng rng(77);
    const DeviceAssembly dev = build_device(DeviceParams{});
    const EvolutionSpec spec = make_evolution_spec(dev.hamiltonian, dev.baths, 2.0, 0.02);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto samples = sample_thermodynamics(propagate(random_state(3, rng), spec), spec);
      for (const auto& s : samples) worst = std::min(worst, s.entropy_production);
    }
    CHECK(worst >= -1e-9);
  }
  SUBCASE("support violations are flagged") {
    const Bath cold = thermal_two_level_bath(1.0, std::numeric_limits<double>::infinity(), 1.0);
    const EvolutionSpec spec = make_evolution_spec(Operator(diag({0.0, 1.0})), {cold}, 0.1, 0.01);
    const auto samples = sample_thermodynamics(propagate(DensityMatrix::maximally_mixed(2), spec), spec);
    CHECK(samples.front().support_violation);
    CHECK(std::isnan(samples.front().entropy_production));
    CHECK(std::isinf(samples.front().relative_entropies.at(cold.name())));
  }
}

TEST_CASE("first law along trajectories") {
  Rng rng(1);
  for (const Preset& p : presets()) {
    CAPTURE(p.name);
    const Trajectory traj = propagate(random_state(p.dim, rng), p.spec);
    const auto samples = sample_thermodynamics(traj, p.spec);
    const auto res = first_law_residuals(samples, traj, p.spec);
    int checked = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < res.size(); ++k) {
      if (!res[k]) continue;
      worst = std::max(worst, *res[k] / std::max(std::abs(samples[k].energy), 1.0));
      ++checked;
    }
    CHECK(checked > 0);
    CHECK(worst <= 1e-6);
  }
  SUBCASE("switch points are excluded") {
    const HamiltonianSchedule sched({{0.0, pauli_z()}, {0.5, pauli_x()}});
    const EvolutionSpec spec = make_evolution_spec(sched, {two_level_decoherence_bath(0.5)}, 1.0, 0.01);
    const Trajectory traj = propagate(bloch_state(0.2, 0.1, 0.6), spec);
    const auto samples = sample_thermodynamics(traj, spec);
    const auto res = first_law_residuals(samples, traj, spec);
    for (std::size_t k = 0; k < res.size(); ++k) {
      if (traj.times[k] > 0.485 && traj.times[k] < 0.515) CHECK_FALSE(res[k].has_value());
      if (res[k]) CHECK(*res[k] <= 1e-6 * std::max(std::abs(samples[k].energy), 1.0));
    }
  }
}

TEST_CASE("entropy balance along single-bath trajectories") {
  Rng rng(2);
  auto all = presets();
  for (const Preset& p : all) {
    if (p.spec.baths.size() != 1) continue;
    CAPTURE(p.name);
    const Trajectory traj = propagate(random_state(p.dim, rng), p.spec);
    const auto samples = sample_thermodynamics(traj, p.spec);
    const auto res = entropy_balance_residuals(samples, traj, p.spec);
    double worst = 0.0;
    for (const auto& r : res)
      if (r) worst = std::max(worst, *r);
    CHECK(worst <= 1e-6);
  }
  const DeviceAssembly dev = build_device(DeviceParams{});
  // fast initial transient from near-singular starts; default dt leaves ~4e-5 of stencil error
  const EvolutionSpec left_only =
      make_evolution_spec(dev.hamiltonian, {dev.left()}, 3.0, default_time_step(dev.hamiltonian, {dev.left()}) / 8);
  const Trajectory traj = propagate(random_state(3, rng), left_only);
  const auto samples = sample_thermodynamics(traj, left_only);
  double worst = 0.0;
  for (const auto& r : entropy_balance_residuals(samples, traj, left_only))
    if (r) worst = std::max(worst, *r);
  CHECK(worst <= 1e-6);
}

TEST_CASE("centered derivative is fourth order") {
  std::vector<double> xs;
  const double dt = 0.1;
  for (int k = 0; k < 10; ++k) xs.push_back(std::pow(k * dt, 4));
  // exact through quartics
  CHECK(centered_derivative(xs, dt, 5) == doctest::Approx(4 * std::pow(0.5, 3)).epsilon(1e-12));
  CHECK_THROWS_AS(centered_derivative(xs, dt, 1), Error);
}
