#include "flockopt/target.hpp"

#include <algorithm>
#include <cmath>

#include "flockopt/errors.hpp"

namespace flockopt {

TargetSeries com_distance_series(const SimLog& log, const Vec2& target) {
    if (log.steps.empty()) throw ConfigError("empty simulation log");
    TargetSeries series;
    series.target = target;
    const int n = log.config.n_agents;
    double t = log.config.dt;
    for (const StepRecord& s : log.steps) {
        Vec2 com;
        for (const Vec2& p : s.positions) com += p;
        com = com / static_cast<double>(n);
        series.times.push_back(t);
        series.d_bar.push_back((target - com).norm());
        t += log.config.dt;
    }
    return series;
}

SinusoidGuess initial_guess(const TargetSeries& series) {
    const int n = static_cast<int>(series.d_bar.size());
    if (n < 16) throw ConfigError("series too short for a sinusoid fit");
    const double dt = series.times[1] - series.times[0];

    double mean = 0.0;
    for (double v : series.d_bar) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : series.d_bar) var += (v - mean) * (v - mean);
    var /= n;
    if (var < 1e-24) throw ZeroAmplitude("constant series: nothing to fit");

    // O(n^2) DFT of the mean-removed series, non-DC bins only
    int best_k = 1;
    double best_mag = -1.0;
    for (int k = 1; k <= n / 2; ++k) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j < n; ++j) {
            double angle = -2.0 * M_PI * k * j / n;
            double v = series.d_bar[j] - mean;
            re += v * std::cos(angle);
            im += v * std::sin(angle);
        }
        double mag = re * re + im * im;
        if (mag > best_mag) {
            best_mag = mag;
            best_k = k;
        }
    }

    SinusoidGuess guess;
    guess.offset = mean;
    guess.amplitude = std::sqrt(2.0 * var);
    guess.frequency = static_cast<double>(best_k) / (n * dt);
    guess.phase = 0.0;
    return guess;
}

namespace {

double rms_residual(const TargetSeries& series, double a, double w, double psi, double c) {
    double ss = 0.0;
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        double r = a * std::sin(w * series.times[k] + psi) + c - series.d_bar[k];
        ss += r * r;
    }
    return std::sqrt(ss / series.times.size());
}

// 4x4 solve by Gaussian elimination with partial pivoting
bool solve4(double m[4][4], double b[4], double x[4]) {
    int piv[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int best = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[piv[r]][col]) > std::abs(m[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        double d = m[piv[col]][col];
        if (std::abs(d) < 1e-300) return false;
        for (int r = col + 1; r < 4; ++r) {
            double f = m[piv[r]][col] / d;
            for (int c2 = col; c2 < 4; ++c2) m[piv[r]][c2] -= f * m[piv[col]][c2];
            b[piv[r]] -= f * b[piv[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double s = b[piv[col]];
        for (int c2 = col + 1; c2 < 4; ++c2) s -= m[piv[col]][c2] * x[c2];
        x[col] = s / m[piv[col]][col];
    }
    return true;
}

double wrap_phase(double psi) {
    psi = std::fmod(psi, 2.0 * M_PI);
    if (psi > M_PI) psi -= 2.0 * M_PI;
    if (psi <= -M_PI) psi += 2.0 * M_PI;
    return psi;
}

}  // namespace

SinusoidFit sinusoid_fit(const TargetSeries& series, const SinusoidGuess& guess) {
    const std::size_t n = series.times.size();
    double p[4] = {guess.amplitude, 2.0 * M_PI * guess.frequency, guess.phase,
                   guess.offset};

    auto cost = [&](const double q[4]) {
        double ss = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double r = q[0] * std::sin(q[1] * series.times[k] + q[2]) + q[3] -
                       series.d_bar[k];
            ss += r * r;
        }
        return ss;
    };

    // Coarse phase scan before refining: the quadratic model is highly
    // multimodal in psi, and a start more than ~pi/2 off locks onto a wrong
    // local minimum. The guessed phase is scanned first and kept on ties.
    double best_psi = p[2];
    double best_cost = cost(p);
    for (int k = 1; k < 16; ++k) {
        double q[4] = {p[0], p[1], p[2] + k * M_PI / 8.0, p[3]};
        double c2 = cost(q);
        if (c2 < best_cost) {
            best_cost = c2;
            best_psi = q[2];
        }
    }
    p[2] = best_psi;

    double lambda = 1e-3;
    double current = best_cost;
    int iter = 0;
    bool converged = false;
    for (; iter < 200; ++iter) {
        // JtJ and Jtr with residual r_k = model - data
        double jtj[4][4] = {};
        double jtr[4] = {};
        for (std::size_t k = 0; k < n; ++k) {
            double t = series.times[k];
            double arg = p[1] * t + p[2];
            double s = std::sin(arg), c = std::cos(arg);
            double r = p[0] * s + p[3] - series.d_bar[k];
            double j[4] = {s, p[0] * t * c, p[0] * c, 1.0};
            for (int a = 0; a < 4; ++a) {
                jtr[a] += j[a] * r;
                for (int b = a; b < 4; ++b) jtj[a][b] += j[a] * j[b];
            }
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

        bool accepted = false;
        for (int tries = 0; tries < 20; ++tries) {
            double m[4][4];
            double rhs[4];
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) m[a][b] = jtj[a][b];
                m[a][a] += lambda * std::max(jtj[a][a], 1e-12);
                rhs[a] = -jtr[a];
            }
            double delta[4];
            if (!solve4(m, rhs, delta)) {
                lambda *= 10.0;
                continue;
            }
            double cand[4] = {p[0] + delta[0], p[1] + delta[1], p[2] + delta[2],
                              p[3] + delta[3]};
            double c2 = cost(cand);
            if (c2 <= current) {
                double rel_step = 0.0;
                for (int a = 0; a < 4; ++a)
                    rel_step = std::max(rel_step,
                                        std::abs(delta[a]) / std::max(1.0, std::abs(p[a])));
                for (int a = 0; a < 4; ++a) p[a] = cand[a];
                current = c2;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (rel_step < 1e-10) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) converged = true;  // no improving step: at a minimum
        if (converged) break;
    }
    if (!converged && iter >= 200)
        throw FitFailed("sinusoid fit did not converge",
                        rms_residual(series, p[0], p[1], p[2], p[3]));

    // canonical form: a >= 0, omega >= 0, psi in (-pi, pi]
    if (p[0] < 0.0) {
        p[0] = -p[0];
        p[2] += M_PI;
    }
    if (p[1] < 0.0) {
        p[1] = -p[1];
        p[2] = M_PI - p[2];
    }
    SinusoidFit fit;
    fit.amplitude = p[0];
    fit.angular_frequency = p[1];
    fit.phase = wrap_phase(p[2]);
    fit.offset = p[3];
    fit.residual = rms_residual(series, p[0], fit.angular_frequency, fit.phase, p[3]);
    fit.iterations = iter + 1;
    return fit;
}

double target_fitness(const SinusoidFit& fit) {
    if (fit.amplitude <= 1e-9) throw DegenerateFit("fitted amplitude is degenerate");
    return fit.angular_frequency / fit.amplitude;
}

}  // namespace flockopt
