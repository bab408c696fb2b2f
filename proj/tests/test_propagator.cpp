#include "propagator.hpp"

#include "test_helpers.hpp"
#include "units.hpp"

#include <doctest.h>

#include <cmath>

using namespace xsim;

namespace {

HamiltonianFill static_fill(Matrix h) {
  return [h = std::move(h)](double, Matrix& out) { out = h; };
}

IntegratorConfig cfg_for(double dt, double max_omega, int stride = 1 << 30) {
  IntegratorConfig c;
  c.dt = dt;
  c.max_omega = max_omega;
  c.record_stride = stride;
  return c;
}

} // namespace

TEST_CASE("zero Hamiltonian leaves the state untouched") {
  Rng rng(1, 0);
  const PureState psi0(test::random_state(4, rng));
  const PureRun run = evolve_pure(static_fill(Matrix::Zero(4, 4)), psi0, 1.0e-3,
                                  cfg_for(1e-6, 1e3));
  CHECK((run.final_state() - psi0.amplitudes()).norm() < 1e-13);
}

TEST_CASE("constant-coupling pi pulse transfers |a> to |b>") {
  const double omega = from_khz(50.0);
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = omega / 2.0;
  h(1, 0) = omega / 2.0;
  const double t_pi = kPi / omega;
  for (auto method : {IntegratorConfig::Method::kRk4,
                      IntegratorConfig::Method::kMidpointExponential}) {
    IntegratorConfig c = cfg_for(0.01 / omega, omega);
    c.method = method;
    const PureRun run = evolve_pure(static_fill(h), PureState::basis_state(2, 0), t_pi, c);
    const double f = state_fidelity(PureState::basis_state(2, 1),
                                    PureState(run.final_state(), true));
    CHECK(f >= 1.0 - 1e-8);
  }
}

TEST_CASE("step validation and norm bookkeeping") {
  const double omega = from_khz(100.0);
  CHECK_THROWS_AS((void)evolve_pure(static_fill(Matrix::Zero(2, 2)),
                                    PureState::basis_state(2, 0), 1e-3,
                                    cfg_for(1.0 / omega, omega)),
                  std::invalid_argument);
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = omega / 2.0;
  h(1, 0) = omega / 2.0;
  const PureRun run = evolve_pure(static_fill(h), PureState::basis_state(2, 0), 2.0e-3,
                                  cfg_for(0.02 / omega, omega, 100));
  CHECK(run.max_norm_drift < 1e-8);

  IntegratorConfig c = cfg_for(0.02 / omega, omega, 100);
  c.norm_renormalize = true;
  const PureRun ren = evolve_pure(static_fill(h), PureState::basis_state(2, 0), 2.0e-3, c);
  CHECK(std::abs(ren.final_state().norm() - 1.0) < 1e-14);
}

TEST_CASE("noise-free basic gate reaches the integrator floor (M below -8)") {
  const double omega = from_khz(500.0), omega_g = from_khz(1.1785);
  BasicGateDrive drive(QubitKind::kD, omega, omega_g);
  CHECK(drive.duration() == doctest::Approx(0.3e-3).epsilon(1e-3));
  const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));
  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, 0, 0, 0, h); };
  const IntegratorConfig c = cfg_for(0.005 / drive.max_angular_frequency(),
                                     drive.max_angular_frequency());
  const PureRun run = evolve_pure(fill, psi0, drive.duration(), c);
  const double f = state_fidelity(drive.target(psi0), PureState(run.final_state(), true));
  CHECK(merit(f) <= -8.0);
}

TEST_CASE("qubit space is decoupled under dressing fields alone") {
  const double omega = from_khz(200.0);
  DressingOnlyDrive drive(QubitKind::kD, omega, 0.05e-3);
  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, 0, 0, 0, h); };
  const IntegratorConfig c = cfg_for(0.01 / drive.max_angular_frequency(),
                                     drive.max_angular_frequency());
  for (const Vector& v : {state_d(), state_zero_prime()}) {
    const PureRun run = evolve_pure(fill, PureState(v), drive.duration(), c);
    CHECK(std::abs(std::abs(v.dot(run.final_state())) - 1.0) < 1e-8);
  }
}

TEST_CASE("halving dt changes the end fidelity below 1e-7") {
  const double omega = from_khz(500.0), omega_g = from_khz(1.1785);
  BasicGateDrive drive(QubitKind::kD, omega, omega_g);
  const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));
  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, 0, 0, 0, h); };
  const PureState target = drive.target(psi0);
  double f[2];
  int k = 0;
  for (double scale : {0.02, 0.01}) {
    const IntegratorConfig c = cfg_for(scale / drive.max_angular_frequency(),
                                       drive.max_angular_frequency());
    const PureRun run = evolve_pure(fill, psi0, drive.duration(), c);
    f[k++] = state_fidelity(target, PureState(run.final_state(), true));
  }
  CHECK(std::abs(f[0] - f[1]) < 1e-7);
}

TEST_CASE("open evolution without collapse matches pure evolution") {
  // detuned exchange coupling on a qubit (x) 4-level Fock toy system
  const PhononSpace space{2, 4};
  const double nu = from_khz(100.0), g = from_khz(5.0);
  Matrix h = nu * space.number();
  const Matrix b = space.annihilation();
  Matrix sp = Matrix::Zero(2, 2);
  sp(0, 1) = 1.0; // |e><g| with e = index 0
  const Matrix coupling = tensor_product(Operator(sp), Operator(Matrix::Identity(4, 4))).matrix();
  h += g * (coupling * b.adjoint() + b * coupling.adjoint());

  Vector psi0v = Vector::Zero(space.dim());
  psi0v(0 * 4 + 0) = 1.0; // |e, 0>
  const PureState psi0(psi0v);
  const double span = 0.2e-3;
  const IntegratorConfig c = cfg_for(0.02 / (4 * nu), 4 * nu);

  const PureRun pure = evolve_pure(static_fill(h), psi0, span, c);
  const OpenRun open = evolve_open(static_fill(h), MixedState::from_pure(psi0), HeatingModel{},
                                   space, span, c);
  const double f = state_fidelity(PureState(pure.final_state(), true),
                                  MixedState::unchecked(open.final_rho()));
  CHECK(f >= 1.0 - 1e-8);
  CHECK(open.max_trace_drift < 1e-6);
  CHECK_FALSE(open.truncation_saturated);
}

TEST_CASE("heating-only growth rate matches d<n>/dt = rate at n = 0") {
  const PhononSpace space{1, 24};
  HeatingModel heat;
  heat.rate = 100.0;
  Vector vac = Vector::Zero(24);
  vac(0) = 1.0;
  const double span = 1.0e-4;
  const IntegratorConfig c = cfg_for(1e-6, 0.0);
  const OpenRun run = evolve_open(static_fill(Matrix::Zero(24, 24)),
                                  MixedState::from_pure(PureState(vac)), heat, space, span, c);
  const Matrix& rho = run.final_rho();
  double n_mean = 0.0;
  for (int n = 0; n < 24; ++n) n_mean += n * rho(n, n).real();
  // rate-equation oracle: d<n>/dt = rate (<n> + 1), slope rate at the vacuum
  CHECK(n_mean / span == doctest::Approx(heat.rate * span / span).epsilon(0.02));
  CHECK(run.max_trace_drift < 1e-9);

  // infinite-temperature mode has the same initial growth from vacuum
  heat.mode = HeatingModel::Mode::kInfiniteTemperature;
  const OpenRun run2 = evolve_open(static_fill(Matrix::Zero(24, 24)),
                                   MixedState::from_pure(PureState(vac)), heat, space, span, c);
  double n2 = 0.0;
  for (int n = 0; n < 24; ++n) n2 += n * run2.final_rho()(n, n).real();
  CHECK(n2 / span == doctest::Approx(heat.rate).epsilon(0.02));
}

TEST_CASE("positivity of the propagated density matrix") {
  const PhononSpace space{2, 6};
  Rng rng(77, 0);
  Matrix h = test::random_hermitian(space.dim(), rng) * from_khz(10.0);
  HeatingModel heat;
  heat.rate = 200.0;
  Vector v = Vector::Zero(space.dim());
  v(1) = 1.0;
  const OpenRun run = evolve_open(static_fill(h), MixedState::from_pure(PureState(v)), heat,
                                  space, 2.0e-4, cfg_for(2e-7, from_khz(10.0) * 10));
  CHECK(MixedState::unchecked(run.final_rho()).min_eigenvalue() >= -1e-6);
}

TEST_CASE("truncation saturation is flagged") {
  const PhononSpace space{1, 3};
  HeatingModel heat;
  heat.rate = 2.0e4;
  Vector vac = Vector::Zero(3);
  vac(0) = 1.0;
  const OpenRun run = evolve_open(static_fill(Matrix::Zero(3, 3)),
                                  MixedState::from_pure(PureState(vac)), heat, space, 1.0e-3,
                                  cfg_for(1e-6, 0.0, 100));
  CHECK(run.truncation_saturated);
}

TEST_CASE("single black trajectory equals the noise-free run") {
  const double omega = from_khz(300.0), omega_g = from_khz(1.1785);
  BasicGateDrive drive(QubitKind::kD, omega, omega_g);
  const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));

  EnsembleConfig ec;
  ec.n_traj = 1;
  ec.base_seed = 5;
  ec.integrator = cfg_for(0.01 / drive.max_angular_frequency(),
                          drive.max_angular_frequency());
  const EnsembleResult res = run_ensemble(drive, psi0, noise_preset("black"), ec);

  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, 0, 0, 0, h); };
  const PureRun pure = evolve_pure(fill, psi0, drive.duration(), ec.integrator);
  const double f = state_fidelity(drive.target(psi0), PureState(pure.final_state(), true));
  CHECK(res.end_fidelity() == doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("ensembles are deterministic and worker-count independent") {
  const double omega = from_khz(200.0), omega_g = from_khz(2.0);
  BasicGateDrive drive(QubitKind::kD, omega, omega_g);
  const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));
  EnsembleConfig ec;
  ec.n_traj = 6;
  ec.base_seed = 123;
  ec.integrator = cfg_for(0.05 / drive.max_angular_frequency(),
                          drive.max_angular_frequency(), 5000);
  const EnsembleResult a = run_ensemble(drive, psi0, noise_preset("red"), ec);
  const EnsembleResult b = run_ensemble(drive, psi0, noise_preset("red"), ec);
  CHECK(a.merit_series == b.merit_series); // bitwise
  ec.workers = 3;
  const EnsembleResult c = run_ensemble(drive, psi0, noise_preset("red"), ec);
  CHECK(a.merit_series == c.merit_series);
  CHECK(a.fidelity == c.fidelity);
  CHECK(c.trajectory_count == 6);
}

TEST_CASE("noisy merit improves with the dressing strength (trend over 5 points)") {
  const NoisePreset& red = noise_preset("red");
  const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));
  std::vector<double> merits;
  for (double om_khz : {50.0, 106.0, 224.0, 473.0, 500.0}) {
    BasicGateDrive drive(QubitKind::kD, from_khz(om_khz), from_khz(1.1785));
    EnsembleConfig ec;
    ec.n_traj = 24;
    ec.base_seed = 1777;
    ec.workers = 2;
    ec.integrator = cfg_for(0.05 / drive.max_angular_frequency(),
                            drive.max_angular_frequency());
    merits.push_back(run_ensemble(drive, psi0, red, ec).end_merit());
  }
  int inversions = 0;
  for (size_t i = 1; i < merits.size(); ++i)
    if (merits[i] >= merits[i - 1]) ++inversions;
  CHECK(inversions <= 1);
  CHECK(merits.back() < merits.front());
}

TEST_CASE("extra infidelity of the basic gate is quadratic in the RF phase error") {
  const double omega = from_khz(50.0), omega_g = from_khz(1.1785);
  auto infidelity_with = [&](double dphi) {
    SingleQubitFields f = basic_gate_fields(QubitKind::kD, omega, omega_g);
    f.delta_phi_error = dphi;
    BasicGateDrive reference(QubitKind::kD, omega, omega_g);
    const PureState psi0((state_d() + state_zero_prime()) / std::sqrt(2.0));
    HamiltonianFill fill = [&](double t, Matrix& h) { fill_hamiltonian(t, f, 0, 0, 0, h); };
    const IntegratorConfig c = cfg_for(0.005 / reference.max_angular_frequency(),
                                       reference.max_angular_frequency());
    const PureRun run = evolve_pure(fill, psi0, reference.duration(), c);
    const double fd =
        state_fidelity(reference.target(psi0), PureState(run.final_state(), true));
    return 1.0 - fd * fd;
  };
  const double base = infidelity_with(0.0);
  const double d1 = 0.005, d2 = 0.05;
  const double i1 = infidelity_with(d1) - base;
  const double i2 = infidelity_with(d2) - base;
  REQUIRE(i1 > 0.0);
  REQUIRE(i2 > 0.0);
  const double exponent = std::log(i2 / i1) / std::log(d2 / d1);
  CHECK(exponent == doctest::Approx(2.0).epsilon(0.1));
}
