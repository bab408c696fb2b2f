#include "propagator.hpp"

#include "units.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace xsim {

namespace {

const Complex kI(0.0, 1.0);

std::int64_t step_count(double t_span, double dt_bound) {
  if (dt_bound <= 0.0) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
  if (t_span <= 0.0) throw std::invalid_argument("evolve: t_span must be > 0");
  return static_cast<std::int64_t>(std::ceil(t_span / dt_bound - 1e-12));
}

// one RK4 step of dpsi/dt = -i H(t) psi
struct PureStepper {
  Matrix h;
  Vector k1, k2, k3, k4, tmp;

  explicit PureStepper(int dim)
      : h(dim, dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim) {}

  void rk4(const HamiltonianFill& fill, double t, double dt, Vector& psi) {
    fill(t, h);
    k1.noalias() = -kI * (h * psi);
    tmp = psi + (0.5 * dt) * k1;
    fill(t + 0.5 * dt, h);
    k2.noalias() = -kI * (h * tmp);
    tmp = psi + (0.5 * dt) * k2;
    k3.noalias() = -kI * (h * tmp);
    tmp = psi + dt * k3;
    fill(t + dt, h);
    k4.noalias() = -kI * (h * tmp);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  void midpoint_exp(const HamiltonianFill& fill, double t, double dt, Vector& psi) {
    fill(t + 0.5 * dt, h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Vector phases =
        (-kI * dt * es.eigenvalues().array().cast<Complex>()).exp().matrix();
    tmp.noalias() = es.eigenvectors().adjoint() * psi;
    tmp.array() *= phases.array();
    psi.noalias() = es.eigenvectors() * tmp;
  }
};

} // namespace

void validate_step(const IntegratorConfig& cfg) {
  if (cfg.dt <= 0.0) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
  if (cfg.record_stride < 1)
    throw std::invalid_argument("IntegratorConfig: record_stride must be >= 1");
  if (cfg.max_omega > 0.0 && cfg.dt * cfg.max_omega > 0.1)
    throw std::invalid_argument("IntegratorConfig: dt too coarse for the declared max omega");
}

void evolve_pure(const HamiltonianFill& fill, const PureState& psi0, double t_span,
                 const IntegratorConfig& cfg, const PureObserver& observe) {
  validate_step(cfg);
  const std::int64_t n = step_count(t_span, cfg.dt);
  const double dt = t_span / static_cast<double>(n);
  const int dim = psi0.dim();
  PureStepper st(dim);
  Vector psi = psi0.amplitudes();
  observe(0, 0.0, psi);
  for (std::int64_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    if (cfg.method == IntegratorConfig::Method::kRk4)
      st.rk4(fill, t, dt, psi);
    else
      st.midpoint_exp(fill, t, dt, psi);
    if (cfg.norm_renormalize) psi /= psi.norm();
    if ((i + 1) % cfg.record_stride == 0 || i + 1 == n)
      observe(i + 1, dt * static_cast<double>(i + 1), psi);
  }
}

PureRun evolve_pure(const HamiltonianFill& fill, const PureState& psi0, double t_span,
                    const IntegratorConfig& cfg) {
  PureRun run;
  evolve_pure(fill, psi0, t_span, cfg, [&](std::int64_t, double t, const Vector& psi) {
    run.times.push_back(t);
    run.states.push_back(psi);
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > run.max_norm_drift) run.max_norm_drift = drift;
  });
  return run;
}

Matrix PhononSpace::annihilation() const {
  Matrix b = Matrix::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix full = Matrix::Zero(dim(), dim());
  for (int e = 0; e < qubit_dim; ++e)
    full.block(e * fock_dim, e * fock_dim, fock_dim, fock_dim) = b;
  return full;
}

Matrix PhononSpace::creation() const { return annihilation().adjoint(); }

Matrix PhononSpace::number() const {
  Matrix full = Matrix::Zero(dim(), dim());
  for (int e = 0; e < qubit_dim; ++e)
    for (int n = 0; n < fock_dim; ++n)
      full(e * fock_dim + n, e * fock_dim + n) = static_cast<double>(n);
  return full;
}

namespace {

// Dissipator contributions for the truncated ladder operators, computed with
// index arithmetic (the collapse operators are phonon-local):
//   heating leg:   rate (b+ rho b  - 1/2 {b b+, rho})
//   cooling leg:   rate (b  rho b+ - 1/2 {b+ b, rho})
// The truncated products keep the trace exactly conserved.
struct Dissipator {
  int qd, fd, dim;
  std::vector<double> sq;      // sq[n] = sqrt(n)
  std::vector<double> diag_up; // (b b+) diagonal: n+1 below the top level, 0 at it
  std::vector<double> diag_dn; // (b+ b) diagonal: n

  Dissipator(const PhononSpace& s) : qd(s.qubit_dim), fd(s.fock_dim), dim(s.dim()) {
    sq.resize(fd + 1);
    for (int n = 0; n <= fd; ++n) sq[n] = std::sqrt(static_cast<double>(n));
    diag_up.resize(fd);
    diag_dn.resize(fd);
    for (int n = 0; n < fd; ++n) {
      diag_up[n] = n + 1 < fd ? static_cast<double>(n + 1) : 0.0;
      diag_dn[n] = static_cast<double>(n);
    }
  }

  void add(const Matrix& rho, double rate, HeatingModel::Mode mode, Matrix& out) const {
    if (rate <= 0.0) return;
    const bool two_leg = mode == HeatingModel::Mode::kInfiniteTemperature;
    for (int J = 0; J < dim; ++J) {
      const int nj = J % fd;
      for (int I = 0; I < dim; ++I) {
        const int ni = I % fd;
        Complex v(0.0, 0.0);
        if (ni >= 1 && nj >= 1) v += sq[ni] * sq[nj] * rho(I - 1, J - 1);
        v -= 0.5 * (diag_up[ni] + diag_up[nj]) * rho(I, J);
        if (two_leg) {
          if (ni + 1 < fd && nj + 1 < fd) v += sq[ni + 1] * sq[nj + 1] * rho(I + 1, J + 1);
          v -= 0.5 * (diag_dn[ni] + diag_dn[nj]) * rho(I, J);
        }
        out(I, J) += rate * v;
      }
    }
  }
};

struct OpenStepper {
  Matrix h, k, rhs1, rhs2, rhs3, rhs4, tmp;

  explicit OpenStepper(int dim)
      : h(dim, dim), k(dim, dim), rhs1(dim, dim), rhs2(dim, dim), rhs3(dim, dim),
        rhs4(dim, dim), tmp(dim, dim) {}

  // out = -i [H(t), rho] + dissipator; rho must be Hermitian so that
  // rho H = (H rho)^dag and the commutator costs a single product.
  void rhs(const HamiltonianFill& fill, const Dissipator& dis, const HeatingModel& heat,
           double t, const Matrix& rho, Matrix& out) {
    fill(t, h);
    k.noalias() = h * rho;
    out = -kI * (k - k.adjoint());
    dis.add(rho, heat.rate, heat.mode, out);
  }

  void rk4(const HamiltonianFill& fill, const Dissipator& dis, const HeatingModel& heat,
           double t, double dt, Matrix& rho) {
    rhs(fill, dis, heat, t, rho, rhs1);
    tmp = rho + (0.5 * dt) * rhs1;
    rhs(fill, dis, heat, t + 0.5 * dt, tmp, rhs2);
    tmp = rho + (0.5 * dt) * rhs2;
    rhs(fill, dis, heat, t + 0.5 * dt, tmp, rhs3);
    tmp = rho + dt * rhs3;
    rhs(fill, dis, heat, t + dt, tmp, rhs4);
    rho += (dt / 6.0) * (rhs1 + 2.0 * rhs2 + 2.0 * rhs3 + rhs4);
  }
};

} // namespace

void evolve_open(const HamiltonianFill& fill, const MixedState& rho0,
                 const HeatingModel& heating, const PhononSpace& space, double t_span,
                 const IntegratorConfig& cfg, const OpenObserver& observe,
                 double* max_trace_drift, bool* saturated) {
  validate_step(cfg);
  if (heating.rate < 0.0) throw std::invalid_argument("HeatingModel: rate must be >= 0");
  if (rho0.dim() != space.dim())
    throw std::invalid_argument("evolve_open: state and phonon space dims differ");
  if (cfg.method != IntegratorConfig::Method::kRk4)
    throw std::invalid_argument("evolve_open: only the rk4 method is supported");
  const std::int64_t n = step_count(t_span, cfg.dt);
  const double dt = t_span / static_cast<double>(n);
  const int dim = space.dim();
  Dissipator dis(space);
  OpenStepper st(dim);
  Matrix rho = rho0.matrix();
  double trace_drift = 0.0;
  bool sat = false;
  auto inspect = [&](const Matrix& r) {
    const double drift = std::abs(r.trace().real() - 1.0);
    if (drift > trace_drift) trace_drift = drift;
    double top = 0.0;
    for (int e = 0; e < space.qubit_dim; ++e) {
      const int idx = e * space.fock_dim + space.fock_dim - 1;
      top += r(idx, idx).real();
    }
    if (top > 1e-4) sat = true;
  };
  observe(0, 0.0, rho);
  for (std::int64_t i = 0; i < n; ++i) {
    st.rk4(fill, dis, heating, dt * static_cast<double>(i), dt, rho);
    if ((i + 1) % cfg.record_stride == 0 || i + 1 == n) {
      inspect(rho);
      observe(i + 1, dt * static_cast<double>(i + 1), rho);
    }
  }
  if (max_trace_drift) *max_trace_drift = trace_drift;
  if (saturated) *saturated = sat;
}

OpenRun evolve_open(const HamiltonianFill& fill, const MixedState& rho0,
                    const HeatingModel& heating, const PhononSpace& space, double t_span,
                    const IntegratorConfig& cfg) {
  OpenRun run;
  evolve_open(
      fill, rho0, heating, space, t_span, cfg,
      [&](std::int64_t, double t, const Matrix& rho) {
        run.times.push_back(t);
        run.rhos.push_back(rho);
      },
      &run.max_trace_drift, &run.truncation_saturated);
  return run;
}

namespace {

struct TrajectoryOutput {
  std::vector<double> times;
  std::vector<Matrix> rho; // |psi><psi| at recorded times
  std::vector<double> p;   // |<target|psi>|^2 at recorded times
  std::uint64_t seed = 0;
};

TrajectoryOutput run_trajectory(const SingleIonDrive& drive, const PureState& psi0,
                                const Vector& target, const NoisePreset& preset,
                                const EnsembleConfig& cfg, int k) {
  const OuParams mu_p{preset.tau_mu, preset.sd_mu, std::nullopt};
  const OuParams dom_p{preset.tau_f, std::sqrt(2.0) * preset.f * drive.nominal_omega(),
                       std::nullopt};
  const OuParams domg_p{preset.tau_f, preset.f * drive.nominal_omega_g(), std::nullopt};

  Rng rng_mu(cfg.base_seed, 3u * k);
  Rng rng_dom(cfg.base_seed, 3u * k + 1);
  Rng rng_domg(cfg.base_seed, 3u * k + 2);
  double mu = mu_p.stationary_sd * rng_mu.normal();
  double dom = dom_p.stationary_sd * rng_dom.normal();
  double domg = domg_p.stationary_sd * rng_domg.normal();

  const IntegratorConfig& icfg = cfg.integrator;
  validate_step(icfg);
  const std::int64_t n = step_count(drive.duration(), icfg.dt);
  const double dt = drive.duration() / static_cast<double>(n);
  // noise held constant across OU refresh chunks; the update is exact for the
  // chunk length, so chunking does not distort the process statistics
  const std::int64_t noise_every =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(cfg.noise_step / dt)));
  const double noise_dt = noise_every * dt;

  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, mu, dom, domg, h); };

  TrajectoryOutput out;
  out.seed = cfg.base_seed;
  auto observe = [&](double t, const Vector& psi) {
    out.times.push_back(t);
    out.rho.push_back(psi * psi.adjoint());
    out.p.push_back(std::norm(target.dot(psi)));
  };

  Vector psi = psi0.amplitudes();
  PureStepper st(psi0.dim());
  observe(0.0, psi);
  for (std::int64_t i = 0; i < n; ++i) {
    if (i > 0 && i % noise_every == 0) {
      mu = ou_update(mu, noise_dt, mu_p, rng_mu.normal());
      dom = ou_update(dom, noise_dt, dom_p, rng_dom.normal());
      domg = ou_update(domg, noise_dt, domg_p, rng_domg.normal());
    }
    const double t = dt * static_cast<double>(i);
    if (icfg.method == IntegratorConfig::Method::kRk4)
      st.rk4(fill, t, dt, psi);
    else
      st.midpoint_exp(fill, t, dt, psi);
    if (icfg.norm_renormalize) psi /= psi.norm();
    if ((i + 1) % icfg.record_stride == 0 || i + 1 == n)
      observe(dt * static_cast<double>(i + 1), psi);
  }
  return out;
}

} // namespace

EnsembleResult run_ensemble(const SingleIonDrive& drive, const PureState& psi0,
                            const NoisePreset& preset, const EnsembleConfig& cfg) {
  if (cfg.n_traj < 1) throw std::invalid_argument("run_ensemble: n_traj must be >= 1");
  const int workers = std::max(1, cfg.workers);
  const Vector target = drive.target(psi0).amplitudes();

  std::vector<TrajectoryOutput> outs(cfg.n_traj);
  auto work = [&](int worker) {
    for (int k = worker; k < cfg.n_traj; k += workers)
      outs[k] = run_trajectory(drive, psi0, target, preset, cfg, k);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  // fixed-order reduction over trajectory index: worker count cannot change results
  EnsembleResult res;
  res.trajectory_count = cfg.n_traj;
  res.times = outs[0].times;
  const size_t m = res.times.size();
  res.mean_density.assign(m, Matrix::Zero(psi0.dim(), psi0.dim()));
  std::vector<double> mean_p(m, 0.0);
  for (int k = 0; k < cfg.n_traj; ++k) {
    res.trajectory_seeds.push_back(outs[k].seed);
    res.per_traj_end_f2.push_back(outs[k].p.back());
    for (size_t i = 0; i < m; ++i) {
      res.mean_density[i] += outs[k].rho[i];
      mean_p[i] += outs[k].p[i];
    }
  }
  const double inv = 1.0 / cfg.n_traj;
  res.fidelity.resize(m);
  res.merit_series.resize(m);
  for (size_t i = 0; i < m; ++i) {
    res.mean_density[i] *= inv;
    double f2 = mean_p[i] * inv;
    if (f2 < 0.0) f2 = 0.0;
    if (f2 > 1.0) f2 = 1.0;
    res.fidelity[i] = std::sqrt(f2);
    res.merit_series[i] = merit(res.fidelity[i]);
  }
  if (cfg.n_traj > 1) {
    double mean = 0.0, var = 0.0;
    for (double v : res.per_traj_end_f2) mean += v;
    mean *= inv;
    for (double v : res.per_traj_end_f2) var += (v - mean) * (v - mean);
    var /= (cfg.n_traj - 1);
    res.end_f2_sem = std::sqrt(var * inv);
  }
  return res;
}

} // namespace xsim
