#include "centi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "centi/errors.hpp"

namespace centi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string list_ids(const std::vector<int>& ids) {
    std::string s = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
    return s + "]";
}

void require_ids(const std::vector<int>& ids, int expected, const char* what) {
    std::vector<int> missing;
    for (int id = 1; id <= expected; ++id)
        if (!std::binary_search(ids.begin(), ids.end(), id)) missing.push_back(id);
    if (!missing.empty()) throw MetricsError(std::string("missing ") + what + " ids: " + list_ids(missing));
}

/// Mean sample interval; throws if any interval departs from it by more than 1 us.
double uniform_interval(const std::vector<double>& t) {
    if (t.size() < 2) throw MetricsError("need at least 2 samples, got " + std::to_string(t.size()));
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(h > 0.0)) throw MetricsError("timestamps must be strictly increasing");
    for (std::size_t j = 1; j < t.size(); ++j)
        if (std::abs(t[j] - t[j - 1] - h) > 1e-6)
            throw MetricsError("non-uniform timestamps at sample " + std::to_string(j));
    return h;
}

/// Removes the least-squares line through (t, x).
std::vector<double> detrend(const std::vector<double>& t, const std::vector<double>& x) {
    const auto n = static_cast<double>(x.size());
    const double tm = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double xm = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double stt = 0.0, stx = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        stt += (t[j] - tm) * (t[j] - tm);
        stx += (t[j] - tm) * (x[j] - xm);
    }
    const double slope = stt > 0.0 ? stx / stt : 0.0;
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - xm - slope * (t[j] - tm);
    return out;
}

double half_range(const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return 0.5 * (*hi - *lo);
}

/// Power of the windowed signals at frequency f, summed over signals.
double power_at(const std::vector<std::vector<double>>& windowed, double h, double f) {
    const std::complex<double> rot = std::polar(1.0, -kTwoPi * f * h);
    double p = 0.0;
    for (const auto& x : windowed) {
        std::complex<double> phase = 1.0, acc = 0.0;
        for (double v : x) {
            acc += v * phase;
            phase *= rot;
        }
        p += std::norm(acc);
    }
    return p;
}

/// Fundamental of the windowed signals: the lowest spectral peak holding at
/// least a quarter of the strongest peak's power. A plain argmax would pick
/// the 2f bounce of a two-spoke stance over the f roll it rides on. Searched
/// on an 8x zero-padded grid from the lowest resolvable frequency, then
/// refined locally. Hann window.
double dominant_frequency(const std::vector<std::vector<double>>& signals, double h) {
    const std::size_t n = signals.front().size();
    std::vector<std::vector<double>> windowed = signals;
    double energy = 0.0;
    for (auto& x : windowed)
        for (std::size_t j = 0; j < n; ++j) {
            x[j] *= 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n - 1));
            energy += x[j] * x[j];
        }
    if (energy < 1e-18) return 0.0;

    const double span = h * static_cast<double>(n);
    const double df = 1.0 / (8.0 * span);
    const double f_lo = 1.0 / span, f_hi = 0.5 / h;
    std::vector<double> grid, power;
    for (double f = f_lo; f <= f_hi; f += df) {
        grid.push_back(f);
        power.push_back(power_at(windowed, h, f));
    }
    const double p_max = *std::max_element(power.begin(), power.end());
    std::size_t pick = static_cast<std::size_t>(std::max_element(power.begin(), power.end()) - power.begin());
    for (std::size_t i = 1; i + 1 < power.size(); ++i) {
        const bool peak = power[i] >= power[i - 1] && power[i] >= power[i + 1];
        if (peak && power[i] >= 0.25 * p_max) {
            pick = i;
            break;
        }
    }

    double best_f = grid[pick], best_p = power[pick];
    const double fine = df / 32.0;
    for (int k = -32; k <= 32; ++k) {
        const double f = grid[pick] + k * fine;
        if (f < f_lo || f > f_hi) continue;
        const double p = power_at(windowed, h, f);
        if (p > best_p) {
            best_p = p;
            best_f = f;
        }
    }
    return best_f;
}

}  // namespace

std::string Condition::label() const {
    return std::string(to_string(world)) + "/" + std::string(to_string(leg)) + "/" + std::string(to_string(mode));
}

std::string Condition::slug() const {
    return std::string(to_string(world)) + "_" + std::string(to_string(leg)) + "_" + std::string(to_string(mode));
}

PlanarVelocity mean_velocity(const MarkerLog& markers, int expected_markers) {
    require_ids(markers.ids, expected_markers, "marker");
    const double h = uniform_interval(markers.time);
    const std::size_t intervals = markers.time.size() - 1;

    PlanarVelocity out;
    for (int id = 1; id <= expected_markers; ++id) {
        const auto& track = *markers.find(id);
        double sx = 0.0, sy = 0.0;
        for (std::size_t j = 0; j < intervals; ++j) {
            sx += (track[j + 1].x() - track[j].x()) / h;
            sy += (track[j + 1].y() - track[j].y()) / h;
        }
        out.vx += sx / static_cast<double>(intervals);
        out.vy += sy / static_cast<double>(intervals);
    }
    out.vx /= expected_markers;
    out.vy /= expected_markers;
    out.v = std::hypot(out.vx, out.vy);
    return out;
}

double mean_circumferential_velocity(const MotorLog& motors, const LegSpec& leg, WorldKind world,
                                     int expected_legs) {
    require_ids(motors.ids, expected_legs, "leg");
    if (motors.time.empty()) throw MetricsError("motor log has no samples");
    const double r_mm = 1000.0 * leg_radius(leg, world);
    double sum = 0.0;
    for (int id = 1; id <= expected_legs; ++id) {
        const auto& track = *motors.find(id);
        double n = 0.0;
        for (const auto& s : track) n += s.speed;
        n /= static_cast<double>(track.size());
        sum += kTwoPi * r_mm * n;
    }
    return sum / expected_legs;
}

double slip_ratio(double v, double vf) {
    if (!(vf > 0.0)) throw MetricsError("slip ratio undefined for circumferential velocity <= 0");
    return v / vf * 100.0;
}

EnergyResult energy(const MotorLog& motors) {
    if (motors.ids.empty() || motors.time.empty()) throw MetricsError("energy of an empty motor log");
    const double h = motors.time.size() > 1
                         ? (motors.time.back() - motors.time.front()) / static_cast<double>(motors.time.size() - 1)
                         : 0.0;
    EnergyResult out;
    for (const auto& track : motors.samples) {
        double sum = 0.0;
        for (const auto& s : track) sum += s.current * s.voltage;
        out.literal += sum / static_cast<double>(track.size());
        out.physical += sum * h;
    }
    out.literal /= static_cast<double>(motors.ids.size());
    return out;
}

BodyWave body_wave_metrics(const MarkerLog& markers, double gait_frequency) {
    const auto* m1 = markers.find(1);
    const auto* m2 = markers.find(2);
    if (!m1 || !m2) throw MetricsError("body wave needs markers 1 and 2");
    const double h = uniform_interval(markers.time);
    const double span = markers.time.back() - markers.time.front() + h;
    if (!(gait_frequency > 0.0) || span * gait_frequency < 2.0 - 1e-9)
        throw MetricsError("record spans fewer than 2 gait periods");

    const std::size_t n = markers.time.size();
    std::vector<double> roll(n), heave(n), z1(n), z2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec3 d = (*m2)[j] - (*m1)[j];
        roll[j] = std::atan2(d.z(), std::hypot(d.x(), d.y()));
        heave[j] = 0.5 * ((*m1)[j].z() + (*m2)[j].z());
        z1[j] = (*m1)[j].z();
        z2[j] = (*m2)[j].z();
    }
    BodyWave out;
    out.roll_amp = half_range(detrend(markers.time, roll));
    out.heave_amp = half_range(detrend(markers.time, heave));
    out.frequency = dominant_frequency({detrend(markers.time, z1), detrend(markers.time, z2)}, h);
    return out;
}

MetricsReport analyze(const MarkerLog& markers, const MotorLog& motors, const LegSpec& leg, WorldKind world,
                      double gait_frequency) {
    MetricsReport r;
    r.v = mean_velocity(markers).v;
    r.v_f = mean_circumferential_velocity(motors, leg, world);
    r.alpha = slip_ratio(r.v, r.v_f);
    const auto e = energy(motors);
    r.e = e.literal;
    r.e_phys = e.physical;
    const auto wave = body_wave_metrics(markers, gait_frequency);
    r.roll_amp = wave.roll_amp;
    r.heave_amp = wave.heave_amp;
    r.frequency = wave.frequency;
    return r;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) return out;
    const auto n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

AggregateRow aggregate(const std::vector<MetricsReport>& trials) {
    if (trials.empty()) throw MetricsError("aggregate of zero trials");
    auto column = [&](double MetricsReport::*field) {
        std::vector<double> v;
        v.reserve(trials.size());
        for (const auto& t : trials) v.push_back(t.*field);
        return mean_std(v);
    };
    AggregateRow row;
    row.condition = trials.front().condition;
    row.trials = static_cast<int>(trials.size());
    row.v = column(&MetricsReport::v);
    row.v_f = column(&MetricsReport::v_f);
    row.alpha = column(&MetricsReport::alpha);
    row.e = column(&MetricsReport::e);
    row.e_phys = column(&MetricsReport::e_phys);
    row.roll_amp = column(&MetricsReport::roll_amp);
    row.heave_amp = column(&MetricsReport::heave_amp);
    return row;
}

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string format_mean_std(const MeanStd& m, int decimals) {
    return fixed(m.mean, decimals) + "±" + fixed(m.std, decimals);
}

}  // namespace centi
