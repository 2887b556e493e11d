#include "chipnoise/gpe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "chipnoise/constants.hpp"
#include "chipnoise/transport.hpp"

namespace chipnoise {

using constants::pi;
using constants::two_pi;
using cplx = std::complex<double>;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t master, int realization) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(realization) + 1));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> fft_wavenumbers(int n, double box_length) {
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int f = (i <= n / 2) ? i : i - n;
        k[static_cast<std::size_t>(i)] = two_pi / box_length * f;
    }
    return k;
}

}  // namespace

void CondensateConfig::validate() const {
    if (g < 0.0) throw ConfigError("gpe: g must be >= 0");
    if (gamma < 0.0) throw ConfigError("gpe: gamma must be >= 0");
    if (l_c <= 0.0) throw ConfigError("gpe: l_c must be > 0");
    if (n_realizations < 1) throw ConfigError("gpe: need >= 1 realization");
    if (!is_power_of_two(n_z) || n_z < 16)
        throw ConfigError("gpe: n_z must be a power of two >= 16");
    if (box_length <= 0.0) throw ConfigError("gpe: box_length must be > 0");
    if (t_final < 0.0) throw ConfigError("gpe: t_final must be >= 0");
    const double dz = box_length / n_z;
    if (gamma > 0.0 && l_c < 2.0 * dz)
        throw ConfigError("gpe: l_c < 2 dz, the correlation is unresolvable "
                          "on this grid");
    const double k_max = pi / dz;
    if (dt <= 0.0 || dt * (0.5 * k_max * k_max) > 0.5)
        throw ConfigError("gpe: dt violates the split-step accuracy bound "
                          "dt * E_kin_max < 0.5");
    for (double t : snapshot_times)
        if (t < 0.0 || t > t_final + 1e-12)
            throw ConfigError("gpe: snapshot times must lie in [0, t_final]");
}

double CondensateState::norm() const {
    double s = 0.0;
    for (const cplx& a : psi) s += std::norm(a);
    return s * dz();
}

double CondensateState::rms_width() const {
    double s = 0.0, w = 0.0;
    for (int i = 0; i < n(); ++i) {
        const double d = std::norm(psi[static_cast<std::size_t>(i)]);
        const double z = z_at(i);
        s += d * z * z;
        w += d;
    }
    return std::sqrt(s / w);
}

NoiseGenerator::NoiseGenerator(int n_z, double box_length, double l_c,
                               double gamma, double dt, std::uint64_t seed)
    : n_(n_z), slice_(static_cast<std::size_t>(n_z), 0.0),
      work_(static_cast<std::size_t>(n_z)), fft_(n_z),
      rng_state_(splitmix64(seed)) {
    if (gamma < 0.0) throw ConfigError("NoiseGenerator: gamma must be >= 0");
    const double dz = box_length / n_z;
    if (gamma > 0.0 && l_c < 2.0 * dz)
        throw ConfigError("NoiseGenerator: l_c < 2 dz is unresolvable");
    amplitude_ = gamma > 0.0 ? std::sqrt(gamma / dt) : 0.0;

    // power per mode from the continuum lorentzian transform, then
    // renormalized so the discrete C(0) is exactly 1
    filter_.assign(static_cast<std::size_t>(n_z), 0.0);
    if (gamma > 0.0) {
        const auto k = fft_wavenumbers(n_z, box_length);
        double sum = 0.0;
        for (int i = 0; i < n_z; ++i) {
            const double lam = pi * l_c / dz * std::exp(-std::abs(k[i]) * l_c);
            filter_[i] = lam;
            sum += lam;
        }
        const double c0 = sum / n_z;
        for (double& f : filter_) f = std::sqrt(f / c0);
    }
}

double NoiseGenerator::gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        rng_state_ = splitmix64(rng_state_);
        u = 2.0 * (rng_state_ >> 11) * 0x1.0p-53 - 1.0;
        rng_state_ = splitmix64(rng_state_);
        v = 2.0 * (rng_state_ >> 11) * 0x1.0p-53 - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

const std::vector<double>& NoiseGenerator::next() {
    if (amplitude_ == 0.0) {
        std::fill(slice_.begin(), slice_.end(), 0.0);
        return slice_;
    }
    for (int i = 0; i < n_; ++i) work_[i] = gauss();
    fft_.forward(work_.data());
    for (int i = 0; i < n_; ++i) work_[i] *= filter_[i];
    fft_.inverse(work_.data());
    for (int i = 0; i < n_; ++i) slice_[i] = amplitude_ * work_[i].real();
    return slice_;
}

CondensateState gpe_ground_state(double g, int n_z, double box_length,
                                 double trap_omega, double* chemical_potential) {
    if (!is_power_of_two(n_z))
        throw std::invalid_argument("gpe_ground_state: n_z must be a power of two");
    CondensateState st;
    st.box_length = box_length;
    st.psi.resize(static_cast<std::size_t>(n_z));
    const double dz = box_length / n_z;

    // harmonic-oscillator gaussian as the seed; exact already for g = 0
    const double w = std::sqrt(trap_omega);
    for (int i = 0; i < n_z; ++i) {
        const double z = st.z_at(i);
        st.psi[i] = std::pow(trap_omega / pi, 0.25) * std::exp(-0.5 * w * w * z * z);
    }

    const auto k = fft_wavenumbers(n_z, box_length);
    Fft1D fft(n_z);
    const double dtau = 2e-3;
    std::vector<double> kin_half(static_cast<std::size_t>(n_z));
    for (int i = 0; i < n_z; ++i)
        kin_half[i] = std::exp(-0.25 * dtau * k[i] * k[i]);
    std::vector<double> trap(static_cast<std::size_t>(n_z));
    for (int i = 0; i < n_z; ++i) {
        const double z = st.z_at(i);
        trap[i] = 0.5 * trap_omega * trap_omega * z * z;
    }

    auto renormalize = [&]() {
        const double nrm = std::sqrt(st.norm());
        for (cplx& a : st.psi) a /= nrm;
    };
    renormalize();

    auto chemical_mu = [&]() {
        std::vector<cplx> grad(st.psi);
        fft.forward(grad.data());
        for (int i = 0; i < n_z; ++i) grad[i] *= cplx(0.0, k[i]);
        fft.inverse(grad.data());
        double mu = 0.0;
        for (int i = 0; i < n_z; ++i) {
            const double dens = std::norm(st.psi[i]);
            mu += 0.5 * std::norm(grad[i]) + trap[i] * dens + g * dens * dens;
        }
        return mu * dz;
    };

    const int check_every = 50;
    const int max_iters = 500000;
    double mu_old = chemical_mu();
    for (int it = 1; it <= max_iters; ++it) {
        fft.forward(st.psi.data());
        for (int i = 0; i < n_z; ++i) st.psi[i] *= kin_half[i];
        fft.inverse(st.psi.data());
        for (int i = 0; i < n_z; ++i)
            st.psi[i] *= std::exp(-dtau * (trap[i] + g * std::norm(st.psi[i])));
        fft.forward(st.psi.data());
        for (int i = 0; i < n_z; ++i) st.psi[i] *= kin_half[i];
        fft.inverse(st.psi.data());
        renormalize();
        if (it % check_every == 0) {
            const double mu = chemical_mu();
            if (std::abs(mu - mu_old) <
                1e-12 * check_every * std::max(1.0, std::abs(mu))) {
                if (chemical_potential) *chemical_potential = mu;
                return st;
            }
            mu_old = mu;
        }
    }
    throw NumericalError("gpe_ground_state: relaxation did not converge after " +
                         std::to_string(max_iters) + " iterations");
}

void evolve_gpe(CondensateState& state, NoiseGenerator* noise,
                const std::vector<double>* static_potential, double g,
                double dt, int n_steps) {
    const int n = state.n();
    if (static_potential && static_cast<int>(static_potential->size()) != n)
        throw std::invalid_argument("evolve_gpe: potential size mismatch");
    const auto k = fft_wavenumbers(n, state.box_length);
    Fft1D fft(n);
    std::vector<cplx> kin_half(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double phase = -0.25 * dt * k[i] * k[i];
        kin_half[i] = cplx(std::cos(phase), std::sin(phase));
    }
    for (int step = 0; step < n_steps; ++step) {
        fft.forward(state.psi.data());
        for (int i = 0; i < n; ++i) state.psi[i] *= kin_half[i];
        fft.inverse(state.psi.data());
        const std::vector<double>* v = nullptr;
        if (noise) v = &noise->next();
        for (int i = 0; i < n; ++i) {
            double pot = g * std::norm(state.psi[i]);
            if (v) pot += (*v)[i];
            if (static_potential) pot += (*static_potential)[i];
            const double phase = -dt * pot;
            state.psi[i] *= cplx(std::cos(phase), std::sin(phase));
        }
        fft.forward(state.psi.data());
        for (int i = 0; i < n; ++i) state.psi[i] *= kin_half[i];
        fft.inverse(state.psi.data());
        if (!std::isfinite(state.psi[0].real()) ||
            !std::isfinite(std::norm(state.psi[n / 2]))) {
            throw NumericalError("evolve_gpe: non-finite amplitude at step " +
                                 std::to_string(step));
        }
    }
}

namespace {

// rho(s_n) for s_n = n dz, n = 0..n_s-1, via the circular correlation
// theorem; equals the shifted-overlap sum on the periodic grid.
void coherence_row(const CondensateState& st, Fft1D& fft,
                   std::vector<cplx>& work, int n_s, cplx* out) {
    const int n = st.n();
    const double dz = st.dz();
    std::copy(st.psi.begin(), st.psi.end(), work.begin());
    fft.forward(work.data());
    for (int i = 0; i < n; ++i) work[i] = std::norm(work[i]);
    fft.forward(work.data());
    // forward DFT of |psi_hat|^2 / N gives sum_i conj(psi_{i+n}) psi_i
    const double scale = dz / n;
    for (int m = 0; m < n_s; ++m) out[m] = work[m] * scale;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHIPNOISE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

EnsembleResult run_ensemble(const CondensateConfig& config) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    CondensateState psi0 = gpe_ground_state(config.g, config.n_z, config.box_length);
    const double dz = psi0.dz();

    std::vector<double> want = config.snapshot_times;
    if (want.empty()) want.push_back(config.t_final);
    std::sort(want.begin(), want.end());
    std::vector<int> snap_steps;
    std::vector<double> times;
    for (double t : want) {
        const int steps = static_cast<int>(std::llround(t / config.dt));
        if (!snap_steps.empty() && steps == snap_steps.back()) continue;
        snap_steps.push_back(steps);
        times.push_back(steps * config.dt);
    }

    const double s_max = config.s_max > 0.0 ? config.s_max : config.box_length / 4.0;
    const int n_s = std::min(config.n_z / 2,
                             static_cast<int>(std::floor(s_max / dz)) + 1);
    const std::size_t n_t = times.size();
    const std::size_t row = static_cast<std::size_t>(n_s);
    const int n_real = config.n_realizations;

    // per-realization coherence rows, filled by the workers
    std::vector<cplx> samples(static_cast<std::size_t>(n_real) * n_t * row);

    std::atomic<int> next_index{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&]() {
        Fft1D fft(config.n_z);
        std::vector<cplx> work(static_cast<std::size_t>(config.n_z));
        for (;;) {
            const int r = next_index.fetch_add(1);
            if (r >= n_real || failed.load()) break;
            try {
                CondensateState st = psi0;
                NoiseGenerator noise(config.n_z, config.box_length, config.l_c,
                                     config.gamma, config.dt,
                                     realization_seed(config.seed, r));
                int done = 0;
                for (std::size_t m = 0; m < n_t; ++m) {
                    const int target = snap_steps[m];
                    if (target > done) {
                        evolve_gpe(st, config.gamma > 0.0 ? &noise : nullptr,
                                   nullptr, config.g, config.dt, target - done);
                        done = target;
                    }
                    coherence_row(st, fft, work, n_s,
                                  &samples[(static_cast<std::size_t>(r) * n_t + m) * row]);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure_message.empty())
                    failure_message = "realization " + std::to_string(r) + ": " + e.what();
            }
        }
    };

    const int n_threads = std::min(resolve_threads(config.n_threads), n_real);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw NumericalError("run_ensemble: " + failure_message);

    EnsembleResult res;
    res.n_realizations = n_real;
    res.times = times;
    res.s_grid.resize(row);
    for (int m = 0; m < n_s; ++m) res.s_grid[static_cast<std::size_t>(m)] = m * dz;
    const std::size_t cells = n_t * row;
    res.mean_re.assign(cells, 0.0);
    res.mean_im.assign(cells, 0.0);
    res.stderr_re.assign(cells, 0.0);
    res.stderr_im.assign(cells, 0.0);
    res.mean_abs.assign(cells, 0.0);
    res.stderr_abs.assign(cells, 0.0);
    res.norm_per_time.assign(n_t, 0.0);

    // reduce in realization order: bit-identical independent of scheduling
    for (std::size_t c = 0; c < cells; ++c) {
        double sr = 0, si = 0, sa = 0;
        for (int r = 0; r < n_real; ++r) {
            const cplx v = samples[static_cast<std::size_t>(r) * cells + c];
            sr += v.real();
            si += v.imag();
            sa += std::abs(v);
        }
        const double mr = sr / n_real, mi = si / n_real, ma = sa / n_real;
        double vr = 0, vi = 0, va = 0;
        for (int r = 0; r < n_real; ++r) {
            const cplx v = samples[static_cast<std::size_t>(r) * cells + c];
            vr += (v.real() - mr) * (v.real() - mr);
            vi += (v.imag() - mi) * (v.imag() - mi);
            va += (std::abs(v) - ma) * (std::abs(v) - ma);
        }
        const double denom = n_real > 1 ? (n_real - 1.0) * n_real : 1.0;
        res.mean_re[c] = mr;
        res.mean_im[c] = mi;
        res.mean_abs[c] = ma;
        res.stderr_re[c] = std::sqrt(vr / denom);
        res.stderr_im[c] = std::sqrt(vi / denom);
        res.stderr_abs[c] = std::sqrt(va / denom);
    }
    for (std::size_t m = 0; m < n_t; ++m)
        res.norm_per_time[m] = res.mean_re[res.idx(m, 0)];

    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return res;
}

}  // namespace chipnoise
