#include "dressed_single.hpp"

#include "test_helpers.hpp"
#include "units.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

using namespace xsim;

namespace {

Eigen::VectorXd sorted_eigenvalues(const Operator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SingleQubitFields random_fields(Rng& rng) {
  SingleQubitFields f;
  f.omega_minus = std::abs(rng.normal()) * 1e6;
  f.omega_plus = std::abs(rng.normal()) * 1e6;
  f.theta_minus = rng.normal();
  f.theta_plus = rng.normal();
  f.theta_z = rng.normal();
  f.omega_g = std::abs(rng.normal()) * 1e4;
  f.phi_minus = rng.normal();
  f.phi_plus = rng.normal();
  f.delta_minus = rng.normal() * 1e5;
  f.delta_plus = rng.normal() * 1e5;
  f.delta_z = rng.normal() * 1e6;
  f.omega_z = std::abs(rng.normal()) * 1e4;
  f.delta_omega_mismatch = rng.normal() * 100;
  f.delta_phi_error = rng.normal() * 0.01;
  return f;
}

// Simpson quadrature of cos^2(R2) dR1 along one linear segment
double berry_segment_quadrature(std::array<double, 2> a, std::array<double, 2> b) {
  const int n = 2000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s0 = static_cast<double>(i) / n, s1 = static_cast<double>(i + 1) / n;
    const double sm = 0.5 * (s0 + s1);
    auto f = [&](double s) {
      const double r2 = a[1] + s * (b[1] - a[1]);
      return std::cos(r2) * std::cos(r2);
    };
    acc += (f(s0) + 4.0 * f(sm) + f(s1)) / 6.0 * (b[0] - a[0]) / n;
  }
  return acc;
}

} // namespace

TEST_CASE("basic D-qubit Hamiltonian has the +-Omega/sqrt2, +-Omega_g/sqrt2 spectrum") {
  const double omega = from_khz(500.0), omega_g = from_khz(1.1785);
  const Operator h = hamiltonian_at(0.0, basic_gate_fields(QubitKind::kD, omega, omega_g));
  const Eigen::VectorXd ev = sorted_eigenvalues(h);
  CHECK(ev(0) == doctest::Approx(-omega / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(-omega_g / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ev(2) == doctest::Approx(omega_g / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ev(3) == doctest::Approx(omega / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("magnetic term alone is diagonal -mu, 0, 0, +mu") {
  SingleQubitFields off;
  const double mu = from_hz(100.0);
  const Operator h = hamiltonian_at(0.0, off, mu);
  Matrix expected = Matrix::Zero(4, 4);
  expected(kIdxMinus1, kIdxMinus1) = -mu;
  expected(kIdxPlus1, kIdxPlus1) = mu;
  CHECK((h.matrix() - expected).norm() == 0.0);
}

TEST_CASE("B-qubit gate couples |B> and |0'> with real Omega_g/sqrt2 in the dressed frame") {
  const double omega = from_khz(300.0), omega_g = from_khz(2.0);
  const Operator h = hamiltonian_at(0.0, basic_gate_fields(QubitKind::kB, omega, omega_g));
  const DressedFrame frame = DressedFrame::for_qubit(QubitKind::kB);
  const Matrix hd = frame.to_dressed(h).matrix();
  CHECK(hd(DressedFrame::kQubit, DressedFrame::kZeroPrime).real() ==
        doctest::Approx(omega_g / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(hd(DressedFrame::kQubit, DressedFrame::kZeroPrime).imag()) < 1e-12);
  CHECK(hd(DressedFrame::kU, DressedFrame::kU).real() ==
        doctest::Approx(omega / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hd(DressedFrame::kDn, DressedFrame::kDn).real() ==
        doctest::Approx(-omega / std::sqrt(2.0)).epsilon(1e-12));
  // qubit row/column couples only to |0'> in the dressed picture
  CHECK(std::abs(hd(DressedFrame::kQubit, DressedFrame::kU)) < 1e-12 * omega);
  CHECK(std::abs(hd(DressedFrame::kQubit, DressedFrame::kDn)) < 1e-12 * omega);
}

TEST_CASE("D-qubit gate coupling is sigma-y-like: i Omega_g/sqrt2 |D><0'|") {
  const double omega = from_khz(300.0), omega_g = from_khz(2.0);
  const Operator h = hamiltonian_at(0.0, basic_gate_fields(QubitKind::kD, omega, omega_g));
  const DressedFrame frame = DressedFrame::for_qubit(QubitKind::kD);
  const Matrix hd = frame.to_dressed(h).matrix();
  CHECK(std::abs(hd(DressedFrame::kQubit, DressedFrame::kZeroPrime) -
                 Complex(0, omega_g / std::sqrt(2.0))) < 1e-9);
}

TEST_CASE("every assembled Hamiltonian is Hermitian and reproducible") {
  Rng rng(101, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const SingleQubitFields f = random_fields(rng);
    const double t = rng.uniform() * 1e-3;
    const Operator h = hamiltonian_at(t, f, rng.normal() * 1e3, rng.normal() * 1e3,
                                      rng.normal() * 1e2);
    CHECK(h.is_hermitian(1e-12));
  }
  SingleQubitFields bad;
  bad.omega_g = -1.0;
  CHECK_THROWS_AS((void)hamiltonian_at(0.0, bad), std::invalid_argument);
}

TEST_CASE("u and d are dressing eigenvectors at +-Omega/sqrt2") {
  const double omega = from_khz(120.0);
  const Operator h = hamiltonian_at(0.0, basic_gate_fields(QubitKind::kD, omega, 0.0));
  const Vector u = state_u(QubitKind::kD), d = state_dn(QubitKind::kD);
  CHECK((h.matrix() * u - (omega / std::sqrt(2.0)) * u).norm() < 1e-10 * omega);
  CHECK((h.matrix() * d + (omega / std::sqrt(2.0)) * d).norm() < 1e-10 * omega);
  // |D> and |0'> are exact zero-eigenvectors of the pure dressing Hamiltonian
  CHECK((h.matrix() * state_d()).norm() == 0.0);
  CHECK((h.matrix() * state_zero_prime()).norm() == 0.0);
}

TEST_CASE("dressed frame maps |-1> to (|D>+|B>)/sqrt2 and is unitary") {
  const DressedFrame frame = DressedFrame::for_qubit(QubitKind::kD);
  const PureState mapped = frame.to_dressed(PureState::basis_state(4, kIdxMinus1));
  CHECK(mapped.amplitude(DressedFrame::kU).real() == doctest::Approx(0.5));
  CHECK(mapped.amplitude(DressedFrame::kDn).real() == doctest::Approx(0.5));
  CHECK(mapped.amplitude(DressedFrame::kQubit).real() ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(mapped.amplitude(DressedFrame::kZeroPrime)) == 0.0);

  const Matrix v = frame.basis_map();
  CHECK((v.adjoint() * v - Matrix::Identity(4, 4)).norm() < 1e-12);

  Rng rng(17, 0);
  const Operator a(test::random_matrix(4, rng));
  const Operator round = frame.from_dressed(frame.to_dressed(a));
  CHECK((round.matrix() - a.matrix()).norm() < 1e-12 * a.matrix().norm());
}

TEST_CASE("pi-pulse time of the basic gate") {
  CHECK(basic_gate_pi_time(from_khz(1.1785)) == doctest::Approx(0.3e-3).epsilon(2e-4));
}

TEST_CASE("transfer schedule ramps theta over pi at the given rate") {
  const double rate = rad_per_ms_to_rad_per_s(31.416);
  const AdiabaticSchedule s = transfer_schedule(rate, QubitKind::kD);
  CHECK(s.duration == doctest::Approx(0.1e-3).epsilon(1e-4));
  CHECK(s.theta_plus(0.0) == 0.0);
  CHECK(s.theta_plus(s.duration) == doctest::Approx(kPi));
  CHECK(s.theta_plus(s.duration / 2) == doctest::Approx(kPi / 2));
  const AdiabaticSchedule back = transfer_schedule(rate, QubitKind::kB);
  CHECK(back.theta_plus(0.0) == doctest::Approx(kPi));
  CHECK(back.theta_plus(back.duration) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)transfer_schedule(0.0, QubitKind::kD), std::invalid_argument);
}

TEST_CASE("sigma-z path geometry and duration") {
  const double x = 3.1416, rate = rad_per_ms_to_rad_per_s(47.124);
  const AdiabaticSchedule s = sigmaz_path(x, rate);
  CHECK(s.duration == doctest::Approx(0.13333e-3).epsilon(1e-3));
  const auto a = s.r_at(0.0);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == doctest::Approx(kPi / 2));
  const auto b = s.r_at(x / rate);
  CHECK(b[0] == doctest::Approx(x));
  CHECK(b[1] == doctest::Approx(kPi / 2));
  const auto c = s.r_at((x + kPi / 2) / rate);
  CHECK(c[1] == doctest::Approx(0.0).epsilon(1e-9));
  // just after C the frame has jumped to R1 = 0
  const auto d = s.r_at((x + kPi / 2) / rate + 1e-9);
  CHECK(d[0] == 0.0);
  const auto end = s.r_at(s.duration);
  CHECK(end[0] == 0.0);
  CHECK(end[1] == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS((void)sigmaz_path(0.0, rate), std::invalid_argument);
  CHECK_THROWS_AS((void)sigmaz_path(7.0, rate), std::invalid_argument);
}

TEST_CASE("Berry phase of the named segments") {
  const double x = 1.7;
  // any motion along R2 = pi/2 yields no phase
  const std::array<double, 2> a{0.0, kPi / 2}, b{x, kPi / 2};
  CHECK(berry_phase(std::vector<std::array<double, 2>>{a, b}) == doctest::Approx(0.0));
  // B -> C and D -> A have dR1 = 0
  const std::array<double, 2> c{x, 0.0}, d0{0.0, 0.0}, a2{0.0, kPi / 2};
  CHECK(berry_phase(std::vector<std::array<double, 2>>{b, c}) == 0.0);
  CHECK(berry_phase(std::vector<std::array<double, 2>>{d0, a2}) == 0.0);
  // C -> D carries the whole -x
  CHECK(berry_phase(std::vector<std::array<double, 2>>{c, d0}) == doctest::Approx(-x));
  // full path including C -> D: total -x
  const auto full = sigmaz_waypoints(x, true);
  CHECK(berry_phase(full) == doctest::Approx(-x));
}

TEST_CASE("Berry phase closed form matches quadrature on random paths") {
  Rng rng(55, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::array<double, 2>> path;
    for (int k = 0; k < 5; ++k)
      path.push_back({rng.normal() * 2.0, rng.normal() * 2.0});
    double quad = 0.0;
    for (size_t k = 1; k < path.size(); ++k)
      quad += berry_segment_quadrature(path[k - 1], path[k]);
    CHECK(berry_phase(path) == doctest::Approx(quad).epsilon(1e-6));
  }
}

TEST_CASE("Berry phase is additive and antisymmetric under reversal") {
  Rng rng(56, 0);
  std::vector<std::array<double, 2>> path;
  for (int k = 0; k < 6; ++k) path.push_back({rng.normal(), rng.normal()});
  const auto half1 = std::vector<std::array<double, 2>>(path.begin(), path.begin() + 3);
  auto half2 = std::vector<std::array<double, 2>>(path.begin() + 2, path.end());
  CHECK(berry_phase(half1) + berry_phase(half2) == doctest::Approx(berry_phase(path)).epsilon(1e-12));
  auto reversed = path;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(berry_phase(reversed) == doctest::Approx(-berry_phase(path)).epsilon(1e-12));
}

TEST_CASE("Stark sigma-z configurations and predicted shifts") {
  SUBCASE("dressed variant") {
    StarkParams p;
    p.omega = from_khz(20.0);
    p.omega_z = from_khz(10.0);
    p.delta_z = from_mhz(1.0);
    const StarkGateConfig cfg = stark_sigmaz_fields(StarkVariant::kDressed, p);
    CHECK(cfg.predicted_shift / kTwoPi == doctest::Approx(-25.0).epsilon(0.01));
    CHECK(cfg.fields.omega_z == p.omega_z);
    CHECK(cfg.fields.delta_z == p.delta_z);
  }
  SUBCASE("rf variant") {
    StarkParams p;
    p.omega = from_khz(500.0);
    p.omega_g = from_khz(1.0);
    p.delta = from_khz(20.0);
    const StarkGateConfig cfg = stark_sigmaz_fields(StarkVariant::kRf, p);
    CHECK(cfg.predicted_shift / kTwoPi == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(cfg.fields.phi_plus == doctest::Approx(kPi));
    CHECK(cfg.fields.delta_plus == doctest::Approx(-p.delta));
    CHECK(cfg.fields.delta_minus == doctest::Approx(p.delta));
  }
  SUBCASE("zero coupling gives zero shift") {
    StarkParams p;
    p.omega = from_khz(20.0);
    const StarkGateConfig cfg = stark_sigmaz_fields(StarkVariant::kDressed, p);
    CHECK(cfg.predicted_shift == 0.0);
  }
  SUBCASE("constraint violations throw") {
    StarkParams p;
    p.omega = from_khz(20.0);
    p.omega_z = from_khz(15.0);
    p.delta_z = from_khz(10.0); // |Omega - sqrt2 delta_z| ~ Omega_z scale
    CHECK_THROWS_AS((void)stark_sigmaz_fields(StarkVariant::kDressed, p), std::domain_error);
    StarkParams q;
    q.omega = from_khz(500.0);
    q.omega_g = from_khz(10.0);
    q.delta = from_khz(20.0);
    CHECK_THROWS_AS((void)stark_sigmaz_fields(StarkVariant::kRf, q), std::domain_error);
  }
}

TEST_CASE("noise budget of the basic gate") {
  const double omega = from_khz(500.0), omega_g = from_khz(1.1785);
  const double sd_mu = from_hz(100.0);
  const double f = 0.01;
  const double sd_dom = std::sqrt(2.0) * f * omega;

  SUBCASE("mu = 0 leaves only the coupling correction") {
    const NoiseBudget b = noise_budget(GateKind::kBasic, omega, omega_g, 0.0, sd_dom);
    CHECK(b.second_order_shift == 0.0);
    const double gap2 = std::abs(omega * omega - omega_g * omega_g);
    CHECK(b.gate_coupling_correction ==
          doctest::Approx(sd_dom * sd_dom * omega_g / (8.0 * std::sqrt(2.0) * gap2)));
  }
  SUBCASE("constraint margin is about 70 for the headline parameters") {
    const NoiseBudget b = noise_budget(GateKind::kBasic, omega, omega_g, sd_mu, sd_dom);
    REQUIRE(b.constraint_margins.size() == 2);
    CHECK(b.constraint_margins[1] == doctest::Approx(70.0).epsilon(0.02));
    CHECK(b.constraint_margins[0] > 1.0);
    CHECK(b.leakage_terms.size() == 2);
    for (double v : b.leakage_terms) CHECK(v >= 0.0);
  }
  SUBCASE("degenerate Omega = Omega_g rejected") {
    CHECK_THROWS_AS((void)noise_budget(GateKind::kBasic, omega, omega, sd_mu, sd_dom),
                    std::domain_error);
  }
}

TEST_CASE("sigma-z budget has an interior optimum over the dressing strength") {
  const double sd_mu = from_hz(500.0);
  const double f = 0.05;
  std::vector<double> totals;
  std::vector<double> omegas;
  for (int k = 0; k <= 60; ++k) {
    const double om = from_khz(1.0) * std::pow(1000.0, k / 60.0); // 2pi*[1..1000] kHz
    omegas.push_back(om);
    totals.push_back(
        noise_budget(GateKind::kSigmaZ, om, om, sd_mu, std::sqrt(2.0) * f * om).total());
  }
  const auto it = std::min_element(totals.begin(), totals.end());
  const size_t at = static_cast<size_t>(it - totals.begin());
  CHECK(at > 0);
  CHECK(at + 1 < totals.size());
  // decreasing branch before, increasing after
  CHECK(totals.front() > *it);
  CHECK(totals.back() > *it);
}

TEST_CASE("transfer budget shapes") {
  const double omega = from_khz(200.0);
  const NoiseBudget b = noise_budget(GateKind::kTransfer, omega, 0.0, from_hz(100.0),
                                     std::sqrt(2.0) * 0.01 * omega);
  CHECK(b.second_order_shift ==
        doctest::Approx(from_hz(100.0) * std::sqrt(2.0) * 0.01 * omega / omega));
  CHECK(b.gate_coupling_correction == 0.0);
  CHECK(b.leakage_terms.size() == 4);
}

TEST_CASE("gradient shift values") {
  CHECK(gradient_shift(0.0071, from_khz(500.0)) / kTwoPi == doctest::Approx(-25.2).epsilon(0.002));
  CHECK(gradient_shift(0.0, from_khz(500.0)) == 0.0);
  const double ratio = std::abs(gradient_shift(0.0071, from_khz(500.0))) /
                       (from_khz(100.0) / std::sqrt(2.0));
  CHECK(ratio < 1e-3);
}
