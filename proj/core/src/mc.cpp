#include "roughheat/mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "roughheat/errors.hpp"
#include "roughheat/rng.hpp"

namespace roughheat {

namespace {

double eval_rho(const RhoSpec& spec, double u) {
    if (const auto* q = std::get_if<QuasiLinearRho>(&spec)) {
        if (q->varsigma == 0.0) return q->lam * u;
        return q->lam * std::sqrt(q->varsigma * q->varsigma + u * u);
    }
    const auto& t = std::get<TableRho>(spec);
    const auto& xs = t.u;
    const auto& ys = t.rho;
    if (u <= xs.front())
        return ys.front() + (u - xs.front()) * (ys[1] - ys[0]) / (xs[1] - xs[0]);
    if (u >= xs.back()) {
        const size_t n = xs.size();
        return ys.back() + (u - xs.back()) * (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), u);
    const size_t hi = it - xs.begin();
    const size_t lo = hi - 1;
    const double w = (u - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

bool rho_is_zero(const RhoSpec& spec) {
    if (const auto* q = std::get_if<QuasiLinearRho>(&spec)) return q->lam == 0.0;
    const auto& t = std::get<TableRho>(spec);
    return std::all_of(t.rho.begin(), t.rho.end(), [](double v) { return v == 0.0; });
}

std::vector<double> initial_field(const MCConfig& cfg) {
    const int n = cfg.grid_points();
    std::vector<double> u(n, 0.0);
    for (const auto& c : cfg.mu.components()) {
        if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
            for (int j = 0; j < n; ++j) u[j] += l->scale;
        } else if (const auto* a = std::get_if<AtomComponent>(&c)) {
            // point mass lumped onto the nearest node as density mass/dx
            u[nearest_node(cfg, a->location)] += a->mass / cfg.dx;
        } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
            for (int j = 0; j < n; ++j) {
                const double x = -cfg.half_width + j * cfg.dx;
                u[j] += std::exp(e->rate * std::fabs(x));
            }
        } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
            for (int j = 0; j < n; ++j) u[j] += g->value(-cfg.half_width + j * cfg.dx);
        }
    }
    u.front() = 0.0;
    u.back() = 0.0;  // Dirichlet
    return u;
}

}  // namespace

void MCConfig::validate() const {
    if (!(nu > 0.0) || !(dx > 0.0) || !(dt > 0.0) || !(t_end > 0.0) || !(half_width > 0.0))
        throw config_error("MCConfig: sizes must be positive");
    if (replications < 1) throw config_error("MCConfig: need at least one replication");
    if (nu * dt / (dx * dx) > 1.0 + 1e-12)
        throw config_error("MCConfig: explicit scheme unstable (requires nu dt / dx^2 <= 1)");
    mu.validate();
}

void MCConfig::validate_query(double t, double x) const {
    if (!(t > 0.0) || t > t_end + 0.5 * dt)
        throw config_error("MCConfig: query time outside (0, t_end]");
    const double buffer = 6.0 * std::sqrt(nu * t / 2.0);
    if (std::fabs(x) > half_width - buffer)
        throw config_error("MCConfig: query point too close to the truncation boundary");
}

int MCConfig::grid_points() const {
    return 2 * static_cast<int>(std::llround(half_width / dx)) + 1;
}

int nearest_node(const MCConfig& cfg, double x) {
    const int n = cfg.grid_points();
    int j = static_cast<int>(std::llround((x + cfg.half_width) / cfg.dx));
    return std::clamp(j, 0, n - 1);
}

double snapped_x(const MCConfig& cfg, double x) {
    return -cfg.half_width + nearest_node(cfg, x) * cfg.dx;
}

double snapped_t(const MCConfig& cfg, double t) {
    return std::llround(t / cfg.dt) * cfg.dt;
}

std::vector<std::vector<double>> simulate_path(const MCConfig& cfg, int replication_index,
                                               const std::vector<double>& snapshot_times) {
    cfg.validate();
    std::vector<long> snap_steps;
    for (double t : snapshot_times) snap_steps.push_back(std::llround(t / cfg.dt));
    const long last_step = snap_steps.empty() ? 0 : *std::max_element(snap_steps.begin(), snap_steps.end());

    const int n = cfg.grid_points();
    const double r = 0.5 * cfg.nu * cfg.dt / (cfg.dx * cfg.dx);
    const double noise_scale = std::sqrt(cfg.dt / cfg.dx);
    const bool deterministic = rho_is_zero(cfg.rho);

    NormalSampler normal(replication_seed(cfg.master_seed, replication_index));
    std::vector<double> cur = initial_field(cfg);
    std::vector<double> nxt(n, 0.0);
    std::vector<std::vector<double>> snaps(snapshot_times.size());

    const auto record = [&](long step) {
        for (size_t k = 0; k < snap_steps.size(); ++k)
            if (snap_steps[k] == step) snaps[k] = cur;
    };
    record(0);

    const QuasiLinearRho* ql = std::get_if<QuasiLinearRho>(&cfg.rho);
    const bool pam = ql && ql->varsigma == 0.0;

    for (long step = 1; step <= last_step; ++step) {
        if (deterministic) {
            for (int j = 1; j < n - 1; ++j)
                nxt[j] = cur[j] + r * (cur[j + 1] - 2.0 * cur[j] + cur[j - 1]);
        } else if (pam) {
            const double lam = ql->lam;
            for (int j = 1; j < n - 1; ++j)
                nxt[j] = cur[j] + r * (cur[j + 1] - 2.0 * cur[j] + cur[j - 1]) +
                         lam * cur[j] * noise_scale * normal.next();
        } else {
            for (int j = 1; j < n - 1; ++j)
                nxt[j] = cur[j] + r * (cur[j + 1] - 2.0 * cur[j] + cur[j - 1]) +
                         eval_rho(cfg.rho, cur[j]) * noise_scale * normal.next();
        }
        nxt.front() = 0.0;
        nxt.back() = 0.0;
        cur.swap(nxt);
        record(step);
    }
    return snaps;
}

namespace {

// Runs every replication, extracts one scalar per path, reduces in
// replication order.
template <typename Extract>
MCEstimate run_estimate(const MCConfig& cfg, const std::vector<double>& snap_times,
                        Extract&& extract) {
    cfg.validate();
    const int reps = cfg.replications;
    std::vector<double> vals(reps, 0.0);

    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, reps);

    const auto worker = [&](int w) {
        for (int k = w; k < reps; k += workers) {
            const auto snaps = simulate_path(cfg, k, snap_times);
            vals[k] = extract(snaps);
        }
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    // deterministic two-pass mean/stddev in index order
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= reps;
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double sd = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;

    MCEstimate est;
    est.value = mean;
    est.stderr_ = sd / std::sqrt(static_cast<double>(reps));
    est.replications = reps;
    est.seed = cfg.master_seed;
    return est;
}

}  // namespace

MCEstimate estimate_moment(const MCConfig& cfg, int p, double t, double x) {
    if (p < 1) throw config_error("estimate_moment: requires p >= 1");
    cfg.validate_query(t, x);
    const int j = nearest_node(cfg, x);
    return run_estimate(cfg, {snapped_t(cfg, t)}, [&, j, p](const auto& snaps) {
        return std::pow(snaps[0][j], p);
    });
}

MCEstimate estimate_two_point(const MCConfig& cfg, const CorrelationQuery& q) {
    q.validate();
    cfg.validate_query(q.t, q.x);
    cfg.validate_query(q.tau, q.y);
    const int jx = nearest_node(cfg, q.x);
    const int jy = nearest_node(cfg, q.y);
    const double t0 = snapped_t(cfg, q.t);
    const double t1 = snapped_t(cfg, q.tau);
    if (t0 == t1) {
        return run_estimate(cfg, {t0}, [&, jx, jy](const auto& snaps) {
            return snaps[0][jx] * snaps[0][jy];
        });
    }
    return run_estimate(cfg, {t0, t1}, [&, jx, jy](const auto& snaps) {
        return snaps[0][jx] * snaps[1][jy];
    });
}

}  // namespace roughheat
