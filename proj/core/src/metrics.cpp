#include "fcprog/metrics.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fcprog/csv_io.hpp"
#include "fcprog/errors.hpp"

namespace fcprog {

std::pair<double, double> cr_ph_bounds(double rul_true, double eol_true,
                                       const MetricConfig& cfg) {
    if (!(eol_true > 0.0)) throw BadSpecError("end of life must be > 0");
    return {rul_true - cfg.alpha_low * eol_true, rul_true + cfg.alpha_up * eol_true};
}

std::pair<double, double> alpha_lambda_bounds(double rul_true, const MetricConfig& cfg) {
    if (rul_true < 0.0) throw BadSpecError("true RUL must be >= 0");
    return {rul_true * (1.0 - cfg.alpha_low), rul_true * (1.0 + cfg.alpha_up)};
}

double relative_accuracy(double rul_true, double rul_pred) {
    if (rul_true == 0.0) throw ZeroTrueRulError("relative accuracy undefined at end of life");
    return 1.0 - std::abs(rul_true - rul_pred) / rul_true;
}

double prognostics_horizon(const std::vector<EvalEntry>& entries, double eol_true) {
    if (entries.empty()) throw EmptyEntriesError("horizon needs at least one evaluation point");
    // Walk backwards: the qualifying suffix is the maximal all-inside tail.
    std::size_t first_good = entries.size();
    for (std::size_t i = entries.size(); i-- > 0;) {
        if (!entries[i].in_cr_ph) break;
        first_good = i;
    }
    if (first_good == entries.size()) return 0.0;
    return eol_true - entries[first_good].t;
}

EvaluationRecord evaluate_threshold(double ft, double eol_true,
                                    const std::vector<std::pair<double, double>>& predictions,
                                    const MetricConfig& cfg) {
    EvaluationRecord record;
    record.ft = ft;
    record.eol_true = eol_true;

    double ra_sum = 0.0;
    std::size_t al_hits = 0;
    for (const auto& [t, rul_pred] : predictions) {
        const double rul_true = eol_true - t;
        if (!(rul_true > 0.0)) continue;
        EvalEntry entry;
        entry.t = t;
        entry.rul_true = rul_true;
        entry.rul_pred = rul_pred;
        const auto [ph_lo, ph_hi] = cr_ph_bounds(rul_true, eol_true, cfg);
        entry.in_cr_ph = rul_pred >= ph_lo && rul_pred <= ph_hi;
        const auto [al_lo, al_hi] = alpha_lambda_bounds(rul_true, cfg);
        entry.in_alpha_lambda = rul_pred >= al_lo && rul_pred <= al_hi;
        entry.ra = relative_accuracy(rul_true, rul_pred);
        ra_sum += entry.ra;
        if (entry.in_alpha_lambda) ++al_hits;
        record.entries.push_back(entry);
    }

    record.ph = record.entries.empty() ? 0.0 : prognostics_horizon(record.entries, eol_true);
    record.mean_ra = record.entries.empty()
                         ? 0.0
                         : ra_sum / static_cast<double>(record.entries.size());
    record.alpha_lambda_pass_rate =
        record.entries.empty() ? 0.0
                               : static_cast<double>(al_hits) /
                                     static_cast<double>(record.entries.size());
    return record;
}

void write_evaluation_csv(const std::string& path,
                          const std::vector<EvaluationRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& record : records) {
        for (const auto& e : record.entries) {
            rows.push_back({format_double(record.ft), format_double(e.t),
                            format_double(e.rul_true), format_double(e.rul_pred),
                            e.in_cr_ph ? "1" : "0", e.in_alpha_lambda ? "1" : "0",
                            format_double(e.ra)});
        }
    }
    write_csv(path, {"ft", "t", "rul_true", "rul_pred", "in_cr_ph", "in_alpha_lambda", "ra"},
              rows);
}

void write_evaluation_summary_json(const std::string& path,
                                   const std::vector<EvaluationRecord>& records) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& record : records) {
        nlohmann::ordered_json item;
        item["ft"] = record.ft;
        item["eol_true"] = record.eol_true;
        item["ph"] = record.ph;
        item["mean_ra"] = record.mean_ra;
        item["alpha_lambda_pass_rate"] = record.alpha_lambda_pass_rate;
        doc.push_back(std::move(item));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fcprog
