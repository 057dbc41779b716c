#include "centi/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "centi/errors.hpp"

namespace centi {

namespace {

constexpr LegShape kLegs[] = {LegShape::Normal, LegShape::Fin, LegShape::Web};
constexpr WorldKind kWorlds[] = {WorldKind::Land, WorldKind::Water};
constexpr LrMode kModes[] = {LrMode::Antiphase, LrMode::InPhase};

auto order_key(const Condition& c) {
    return std::tuple(static_cast<int>(c.world), static_cast<int>(c.leg), static_cast<int>(c.mode));
}

std::string pad(std::string s, std::size_t width, bool right = false) {
    if (s.size() >= width) return s;
    // '±' is two bytes but one column
    const auto extra = static_cast<std::size_t>(std::count(s.begin(), s.end(), '\xC2'));
    const auto fill = width + extra > s.size() ? width + extra - s.size() : 0;
    return right ? std::string(fill, ' ') + s : s + std::string(fill, ' ');
}

std::string ms(const MeanStd& m) { return format_mean_std(m, 1); }

double to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + std::string(name) + "' (expected text or csv)");
}

std::string render_report(std::vector<AggregateRow> rows, ReportFormat format) {
    std::stable_sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
        return order_key(a.condition) < order_key(b.condition);
    });

    std::string out;
    if (format == ReportFormat::Csv) {
        out = "environment,leg,lr_mode,trials,V_mm_s,V_f_mm_s,alpha_mean,alpha_std,E_mean,E_std,E_phys_mean,"
              "roll_amp_rad,heave_amp_mm\n";
        for (const auto& r : rows) {
            const auto& c = r.condition;
            out += std::string(to_string(c.world)) + "," + std::string(to_string(c.leg)) + "," +
                   std::string(to_string(c.mode)) + "," + std::to_string(r.trials) + "," + fixed(r.v.mean, 1) + "," +
                   fixed(r.v_f.mean, 1) + "," + fixed(r.alpha.mean, 1) + "," + fixed(r.alpha.std, 1) + "," +
                   fixed(r.e.mean, 1) + "," + fixed(r.e.std, 1) + "," + fixed(r.e_phys.mean, 1) + "," +
                   fixed(r.roll_amp.mean, 4) + "," + fixed(r.heave_amp.mean, 2) + "\n";
        }
        return out;
    }

    auto find = [&](WorldKind w, LegShape l, LrMode m) -> const AggregateRow* {
        for (const auto& r : rows)
            if (r.condition == Condition{w, l, m}) return &r;
        return nullptr;
    };
    constexpr std::size_t kLeg = 8, kV = 8, kA = 11, kE = 10;
    const std::size_t group = kV * 2 + kA + kE;
    bool first = true;
    for (auto mode : kModes) {
        bool any = false;
        for (const auto& r : rows) any = any || r.condition.mode == mode;
        if (!any) continue;
        if (!first) out += "\n";
        first = false;
        out += "lr_mode: " + std::string(to_string(mode)) + "\n";
        std::string head1 = pad("", kLeg), head2 = pad("leg", kLeg);
        for (auto w : kWorlds) {
            head1 += "| " + pad(w == WorldKind::Land ? "Land" : "Water", group);
            head2 += "| " + pad("V", kV) + pad("V_f", kV) + pad("alpha %", kA) + pad("E", kE);
        }
        for (auto* h : {&head1, &head2})
            while (!h->empty() && h->back() == ' ') h->pop_back();
        out += head1 + "\n" + head2 + "\n";
        for (auto leg : kLegs) {
            std::string line = pad(std::string(to_string(leg)), kLeg);
            bool present = false;
            for (auto w : kWorlds) {
                line += "| ";
                if (const auto* r = find(w, leg, mode)) {
                    present = true;
                    line += pad(fixed(r->v.mean, 1), kV) + pad(fixed(r->v_f.mean, 1), kV) + pad(ms(r->alpha), kA) +
                            pad(ms(r->e), kE);
                } else {
                    line += pad("-", kV) + pad("-", kV) + pad("-", kA) + pad("-", kE);
                }
            }
            if (present) {
                while (!line.empty() && line.back() == ' ') line.pop_back();
                out += line + "\n";
            }
        }
    }
    return out;
}

std::string render_sweep(const std::vector<SweepRow>& rows, ReportFormat format) {
    std::vector<std::size_t> by_alpha(rows.size()), by_e(rows.size());
    std::iota(by_alpha.begin(), by_alpha.end(), 0);
    std::iota(by_e.begin(), by_e.end(), 0);
    std::stable_sort(by_alpha.begin(), by_alpha.end(),
                     [&](auto a, auto b) { return rows[a].row.alpha.mean > rows[b].row.alpha.mean; });
    std::stable_sort(by_e.begin(), by_e.end(), [&](auto a, auto b) { return rows[a].row.e.mean < rows[b].row.e.mean; });
    std::vector<int> rank_alpha(rows.size()), rank_e(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rank_alpha[by_alpha[k]] = static_cast<int>(k) + 1;
        rank_e[by_e[k]] = static_cast<int>(k) + 1;
    }

    std::string out;
    if (format == ReportFormat::Csv) {
        out = "offset_deg,environment,leg,lr_mode,trials,V_mm_s,alpha_mean,alpha_std,E_mean,E_std,E_phys_mean,"
              "rank_alpha,rank_E\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i].row;
            out += fixed(to_deg(rows[i].offset), 1) + "," + std::string(to_string(r.condition.world)) + "," +
                   std::string(to_string(r.condition.leg)) + "," + std::string(to_string(r.condition.mode)) + "," +
                   std::to_string(r.trials) + "," + fixed(r.v.mean, 1) + "," + fixed(r.alpha.mean, 1) + "," +
                   fixed(r.alpha.std, 1) + "," + fixed(r.e.mean, 1) + "," + fixed(r.e.std, 1) + "," +
                   fixed(r.e_phys.mean, 1) + "," + std::to_string(rank_alpha[i]) + "," + std::to_string(rank_e[i]) +
                   "\n";
        }
        return out;
    }

    auto table = [&](const std::vector<std::size_t>& order, bool ranked) {
        std::string t = ranked ? pad("rank", 6) : "";
        t += pad("offset deg", 12) + pad("V", 8) + pad("alpha %", 12) + pad("E", 10) + "E_phys J\n";
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto& r = rows[order[k]];
            if (ranked) t += pad(std::to_string(k + 1), 6);
            t += pad(fixed(to_deg(r.offset), 1), 12) + pad(fixed(r.row.v.mean, 1), 8) + pad(ms(r.row.alpha), 12) +
                 pad(ms(r.row.e), 10) + fixed(r.row.e_phys.mean, 1) + "\n";
        }
        return t;
    };
    std::vector<std::size_t> natural(rows.size());
    std::iota(natural.begin(), natural.end(), 0);
    if (!rows.empty())
        out += "sweep: " + rows.front().row.condition.label() + ", " + std::to_string(rows.front().row.trials) +
               " trials per offset\n";
    out += table(natural, false);
    out += "\nranked by alpha (high to low)\n" + table(by_alpha, true);
    out += "\nranked by E (low to high)\n" + table(by_e, true);
    return out;
}

}  // namespace centi
