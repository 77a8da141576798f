#include "siruv/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace siruv::ode {

std::string to_string(Method m) {
    switch (m) {
        case Method::RK4Fixed: return "rk4";
        case Method::RKF45Adaptive: return "rkf45";
    }
    throw ValidationError("unhandled solver method");
}

Method method_from_string(const std::string& name) {
    if (name == "rk4") return Method::RK4Fixed;
    if (name == "rkf45") return Method::RKF45Adaptive;
    throw ValidationError("unknown solver method '" + name + "' (expected rk4|rkf45)");
}

void SolverConfig::validate() const {
    auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!pos(dt)) throw InvalidSolverConfig("dt must be > 0");
    if (!pos(t_end)) throw InvalidSolverConfig("t_end must be > 0");
    if (!pos(rel_tol)) throw InvalidSolverConfig("rel_tol must be > 0");
    if (!pos(abs_tol)) throw InvalidSolverConfig("abs_tol must be > 0");
    if (!pos(sample_every)) throw InvalidSolverConfig("sample_every must be > 0");
    if (static_cast<double>(max_steps) < t_end / dt - 1e-9)
        throw InvalidSolverConfig("max_steps = " + std::to_string(max_steps) +
                                  " cannot cover t_end/dt = " + std::to_string(t_end / dt));
}

namespace {

bool all_finite(std::span<const double> y) {
    for (double x : y)
        if (!std::isfinite(x)) return false;
    return true;
}

using StopFn = std::function<bool(double, std::span<const double>)>;

/// Emits samples at t = m * sample_every for m = 0..floor(t_end/sample_every).
/// The fixed-step driver interpolates linearly inside a step; the adaptive
/// driver lands on sample times exactly, so its samples are accepted states.
class Sampler {
public:
    Sampler(const SolverConfig& cfg, bool interpolate, Solution& out)
        : every_(cfg.sample_every),
          last_(static_cast<std::uint64_t>(std::floor(cfg.t_end / cfg.sample_every + 1e-9))),
          interpolate_(interpolate),
          out_(out) {}

    void start(std::span<const double> y0) {
        out_.times.push_back(0.0);
        out_.states.emplace_back(y0.begin(), y0.end());
    }

    void after_step(double t0, std::span<const double> y0, double t1,
                    std::span<const double> y1) {
        while (next_ <= last_) {
            const double ts = static_cast<double>(next_) * every_;
            if (ts > t1 + 1e-9 * std::max(1.0, std::abs(ts))) break;
            if (interpolate_ && ts < t1) {
                const double theta = std::clamp((ts - t0) / (t1 - t0), 0.0, 1.0);
                std::vector<double> yi(y1.size());
                for (std::size_t i = 0; i < yi.size(); ++i)
                    yi[i] = y0[i] + theta * (y1[i] - y0[i]);
                out_.times.push_back(ts);
                out_.states.push_back(std::move(yi));
            } else {
                out_.times.push_back(ts);
                out_.states.emplace_back(y1.begin(), y1.end());
            }
            ++next_;
        }
    }

    /// Flushes samples the step loop could not reach (ts within rounding of t_end).
    void finish(std::span<const double> y_final) {
        while (next_ <= last_) {
            out_.times.push_back(static_cast<double>(next_) * every_);
            out_.states.emplace_back(y_final.begin(), y_final.end());
            ++next_;
        }
    }

    double next_time() const {
        return next_ <= last_ ? static_cast<double>(next_) * every_
                              : std::numeric_limits<double>::infinity();
    }

private:
    double every_;
    std::uint64_t last_;
    std::uint64_t next_ = 1;
    bool interpolate_;
    Solution& out_;
};

struct DriveOutcome {
    std::vector<double> y;
    double t = 0.0;
    bool stopped = false;
};

struct Rk4Buffers {
    explicit Rk4Buffers(std::size_t d) : k1(d), k2(d), k3(d), k4(d), tmp(d) {}
    std::vector<double> k1, k2, k3, k4, tmp;
};

void rk4_step(const RhsFn& rhs, double t, double h, std::vector<double>& y, Rk4Buffers& b) {
    const std::size_t d = y.size();
    const double h2 = 0.5 * h;
    rhs(t, y, b.k1);
    for (std::size_t i = 0; i < d; ++i) b.tmp[i] = y[i] + h2 * b.k1[i];
    rhs(t + h2, b.tmp, b.k2);
    for (std::size_t i = 0; i < d; ++i) b.tmp[i] = y[i] + h2 * b.k2[i];
    rhs(t + h2, b.tmp, b.k3);
    for (std::size_t i = 0; i < d; ++i) b.tmp[i] = y[i] + h * b.k3[i];
    rhs(t + h, b.tmp, b.k4);
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < d; ++i)
        y[i] += h6 * (b.k1[i] + 2.0 * b.k2[i] + 2.0 * b.k3[i] + b.k4[i]);
}

DriveOutcome drive_rk4(const RhsFn& rhs, std::span<const double> y0, const SolverConfig& cfg,
                       Sampler* sampler, const StopFn* stop) {
    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> y_prev(y.size());
    Rk4Buffers buf(y.size());

    if (sampler) sampler->start(y);
    if (stop && (*stop)(0.0, y)) return {std::move(y), 0.0, true};

    // step times come from the index, not accumulation, so grids do not drift
    const double ratio = cfg.t_end / cfg.dt;
    const auto n_steps = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(ratio - 1e-12)));

    double t = 0.0;
    for (std::uint64_t k = 1; k <= n_steps; ++k) {
        const double t_next =
            (k == n_steps) ? cfg.t_end
                           : std::min(static_cast<double>(k) * cfg.dt, cfg.t_end);
        const double h = t_next - t;
        if (h > 0.0) {
            y_prev = y;
            rk4_step(rhs, t, h, y, buf);
            if (!all_finite(y)) throw NonFiniteState(t_next);
            if (sampler) sampler->after_step(t, y_prev, t_next, y);
        }
        t = t_next;
        if (stop && (*stop)(t, y)) return {std::move(y), t, true};
    }
    if (sampler) sampler->finish(y);
    return {std::move(y), t, false};
}

// Fehlberg 4(5) tableau
constexpr double c2 = 1.0 / 4.0, c3 = 3.0 / 8.0, c4 = 12.0 / 13.0, c6 = 1.0 / 2.0;
constexpr double a21 = 1.0 / 4.0;
constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0, a54 = -845.0 / 4104.0;
constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0, a64 = 1859.0 / 4104.0,
                 a65 = -11.0 / 40.0;
constexpr double b41 = 25.0 / 216.0, b43 = 1408.0 / 2565.0, b44 = 2197.0 / 4104.0,
                 b45 = -1.0 / 5.0;
constexpr double b51 = 16.0 / 135.0, b53 = 6656.0 / 12825.0, b54 = 28561.0 / 56430.0,
                 b55 = -9.0 / 50.0, b56 = 2.0 / 55.0;

struct RkfBuffers {
    explicit RkfBuffers(std::size_t d)
        : k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), tmp(d), y_hi(d), y_lo(d) {}
    std::vector<double> k1, k2, k3, k4, k5, k6, tmp, y_hi, y_lo;
};

// One trial step; fills y_hi (5th order, used to advance) and y_lo (4th order).
void rkf45_stages(const RhsFn& rhs, double t, double h, const std::vector<double>& y,
                  RkfBuffers& b) {
    const std::size_t d = y.size();
    rhs(t, y, b.k1);
    for (std::size_t i = 0; i < d; ++i) b.tmp[i] = y[i] + h * (a21 * b.k1[i]);
    rhs(t + c2 * h, b.tmp, b.k2);
    for (std::size_t i = 0; i < d; ++i)
        b.tmp[i] = y[i] + h * (a31 * b.k1[i] + a32 * b.k2[i]);
    rhs(t + c3 * h, b.tmp, b.k3);
    for (std::size_t i = 0; i < d; ++i)
        b.tmp[i] = y[i] + h * (a41 * b.k1[i] + a42 * b.k2[i] + a43 * b.k3[i]);
    rhs(t + c4 * h, b.tmp, b.k4);
    for (std::size_t i = 0; i < d; ++i)
        b.tmp[i] = y[i] + h * (a51 * b.k1[i] + a52 * b.k2[i] + a53 * b.k3[i] + a54 * b.k4[i]);
    rhs(t + h, b.tmp, b.k5);
    for (std::size_t i = 0; i < d; ++i)
        b.tmp[i] = y[i] + h * (a61 * b.k1[i] + a62 * b.k2[i] + a63 * b.k3[i] +
                               a64 * b.k4[i] + a65 * b.k5[i]);
    rhs(t + c6 * h, b.tmp, b.k6);
    for (std::size_t i = 0; i < d; ++i) {
        b.y_lo[i] = y[i] + h * (b41 * b.k1[i] + b43 * b.k3[i] + b44 * b.k4[i] + b45 * b.k5[i]);
        b.y_hi[i] = y[i] + h * (b51 * b.k1[i] + b53 * b.k3[i] + b54 * b.k4[i] +
                                b55 * b.k5[i] + b56 * b.k6[i]);
    }
}

DriveOutcome drive_rkf45(const RhsFn& rhs, std::span<const double> y0, const SolverConfig& cfg,
                         Sampler* sampler, const StopFn* stop) {
    std::vector<double> y(y0.begin(), y0.end());
    RkfBuffers buf(y.size());

    if (sampler) sampler->start(y);
    if (stop && (*stop)(0.0, y)) return {std::move(y), 0.0, true};

    double t = 0.0;
    double dt_want = cfg.dt;
    std::uint64_t attempts = 0;
    while (t < cfg.t_end) {
        double next_stop = cfg.t_end;
        if (sampler) next_stop = std::min(next_stop, sampler->next_time());

        const double gap = next_stop - t;
        const double h = std::min(dt_want, gap);
        if (++attempts > cfg.max_steps) throw StepLimitExceeded(t, cfg.max_steps);

        rkf45_stages(rhs, t, h, y, buf);

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(buf.y_hi[i]));
            err = std::max(err, std::abs(buf.y_hi[i] - buf.y_lo[i]) / scale);
        }

        if (err <= 1.0) {  // NaN error estimates land in the reject branch
            const double t_new = (h == gap) ? next_stop : t + h;
            std::swap(y, buf.y_hi);
            if (!all_finite(y)) throw NonFiniteState(t_new);
            if (sampler) sampler->after_step(t, buf.y_hi, t_new, y);
            t = t_new;
            if (stop && (*stop)(t, y)) return {std::move(y), t, true};
            const double factor =
                err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
            dt_want = h * factor;
        } else {
            const double factor =
                std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9) : 0.2;
            dt_want = h * factor;
            if (dt_want < min_adaptive_step) throw ToleranceUnreachable(t, dt_want);
        }
    }
    if (sampler) sampler->finish(y);
    return {std::move(y), t, false};
}

DriveOutcome drive(const RhsFn& rhs, std::span<const double> y0, const SolverConfig& cfg,
                   Sampler* sampler, const StopFn* stop) {
    if (y0.empty()) throw DimensionMismatch("empty initial state");
    switch (cfg.method) {
        case Method::RK4Fixed: return drive_rk4(rhs, y0, cfg, sampler, stop);
        case Method::RKF45Adaptive: return drive_rkf45(rhs, y0, cfg, sampler, stop);
    }
    throw InvalidSolverConfig("unhandled method");
}

} // namespace

Solution integrate(const RhsFn& rhs, std::span<const double> y0, const SolverConfig& cfg) {
    cfg.validate();
    Solution out;
    Sampler sampler(cfg, cfg.method == Method::RK4Fixed, out);
    drive(rhs, y0, cfg, &sampler, nullptr);
    return out;
}

ProbeResult integrate_until(const RhsFn& rhs, std::span<const double> y0,
                            const SolverConfig& cfg,
                            const std::function<bool(double, std::span<const double>)>& stop) {
    cfg.validate();
    DriveOutcome o = drive(rhs, y0, cfg, nullptr, &stop);
    return {std::move(o.y), o.t, o.stopped};
}

} // namespace siruv::ode
