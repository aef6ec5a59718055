#include "fcprog/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fcprog/errors.hpp"

namespace fcprog {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Value {
    enum class Kind { number, string, boolean, array } kind = Kind::number;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<double> arr;
    std::size_t line = 0;
};

double parse_number(const std::string& text, std::size_t line) {
    std::string t = trim(text);
    if (t.empty()) throw ParseError("empty value", line);
    const char* b = t.data();
    const char* e = b + t.size();
    if (*b == '+') ++b;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e || !std::isfinite(out))
        throw ParseError("bad number '" + t + "'", line);
    return out;
}

Value parse_value(const std::string& raw, std::size_t line) {
    Value v;
    v.line = line;
    std::string t = trim(raw);
    if (t.empty()) throw ParseError("missing value", line);
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"')
            throw ParseError("unterminated string", line);
        v.kind = Value::Kind::string;
        v.str = t.substr(1, t.size() - 2);
        if (v.str.find('"') != std::string::npos)
            throw ParseError("stray quote in string", line);
        return v;
    }
    if (t == "true" || t == "false") {
        v.kind = Value::Kind::boolean;
        v.flag = (t == "true");
        return v;
    }
    if (t.front() == '[') {
        if (t.back() != ']') throw ParseError("unterminated array", line);
        v.kind = Value::Kind::array;
        std::string body = t.substr(1, t.size() - 2);
        std::string item;
        std::istringstream ss(body);
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty() && ss.eof() && v.arr.empty()) break;
            v.arr.push_back(parse_number(item, line));
        }
        return v;
    }
    v.kind = Value::Kind::number;
    v.num = parse_number(t, line);
    return v;
}

double need_number(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::number)
        throw ParseError("key '" + key + "' expects a number", v.line);
    return v.num;
}

std::string need_string(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::string)
        throw ParseError("key '" + key + "' expects a string", v.line);
    return v.str;
}

std::vector<double> need_array(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::array)
        throw ParseError("key '" + key + "' expects an array", v.line);
    return v.arr;
}

long long need_integer(const Value& v, const std::string& key) {
    double d = need_number(v, key);
    double r = std::round(d);
    if (std::abs(d - r) > 1e-9 || std::abs(r) > 9.2e18)
        throw ParseError("key '" + key + "' expects an integer", v.line);
    return static_cast<long long>(r);
}

std::size_t need_size(const Value& v, const std::string& key) {
    long long n = need_integer(v, key);
    if (n < 0) throw ParseError("key '" + key + "' must be non-negative", v.line);
    return static_cast<std::size_t>(n);
}

std::uint64_t need_u64(const Value& v, const std::string& key) {
    double d = need_number(v, key);
    if (d < 0 || d > 18446744073709549568.0 || std::abs(d - std::round(d)) > 0.5)
        throw ParseError("key '" + key + "' expects an unsigned integer", v.line);
    return static_cast<std::uint64_t>(d);
}

void apply(PipelineConfig& cfg, const std::string& section,
           const std::string& key, const Value& v) {
    const std::string where =
        section.empty() ? key : section + "." + key;
    if (section.empty()) {
        if (key == "schema_version") {
            cfg.schema_version = static_cast<int>(need_integer(v, where));
        } else if (key == "seed") {
            cfg.seed = need_u64(v, where);
        } else if (key == "out_dir") {
            cfg.out_dir = need_string(v, where);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(need_integer(v, where));
        } else {
            throw ParseError("unknown key '" + key + "'", v.line);
        }
        return;
    }
    if (section == "synth") {
        if (key == "profile") cfg.synth_profile = need_string(v, where);
        else if (key == "trend") cfg.synth_trend = need_string(v, where);
        else if (key == "v0") cfg.synth_v0 = need_number(v, where);
        else if (key == "total_hours") cfg.synth_total_hours = need_number(v, where);
        else if (key == "dt_seconds") cfg.synth_dt_seconds = need_number(v, where);
        else if (key == "rate_pct_per_h") cfg.synth_rate_pct_per_h = need_number(v, where);
        else if (key == "noise_pct") cfg.synth_noise_pct = need_number(v, where);
        else if (key == "load_swing_pct") cfg.synth_load_swing_pct = need_number(v, where);
        else if (key == "load_time_scale") cfg.synth_load_time_scale = need_number(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "sift") {
        if (key == "max_sift_iters") cfg.sift.max_sift_iters = static_cast<int>(need_integer(v, where));
        else if (key == "sd_threshold") cfg.sift.sd_threshold = need_number(v, where);
        else if (key == "max_imfs") cfg.sift.max_imfs = static_cast<int>(need_integer(v, where));
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "extract") {
        if (key == "threshold_hz") cfg.threshold_hz = need_number(v, where);
        else if (key == "spectrum_bins") cfg.spectrum_bins = need_size(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "abba") {
        if (key == "tol") cfg.abba_tol = need_number(v, where);
        else if (key == "max_k") cfg.abba_max_k = need_size(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "train") {
        if (key == "learning_rate") cfg.train.learning_rate = need_number(v, where);
        else if (key == "batch_size") cfg.train.batch_size = need_size(v, where);
        else if (key == "max_epochs") cfg.train.max_epochs = static_cast<int>(need_integer(v, where));
        else if (key == "window") cfg.train.window = need_size(v, where);
        else if (key == "early_stop_patience") cfg.train.early_stop_patience = static_cast<int>(need_integer(v, where));
        else if (key == "early_stop_min_delta") cfg.train.early_stop_min_delta = need_number(v, where);
        else if (key == "layers") cfg.gru_layers = need_size(v, where);
        else if (key == "hidden") cfg.gru_hidden = need_size(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "rul") {
        if (key == "n_models") cfg.n_models = static_cast<int>(need_integer(v, where));
        else if (key == "forecast_span_factor") cfg.forecast_span_factor = need_number(v, where);
        else if (key == "forecast_max_symbols") cfg.forecast_max_symbols = need_size(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "metrics") {
        if (key == "alpha_low") cfg.metrics.alpha_low = need_number(v, where);
        else if (key == "alpha_up") cfg.metrics.alpha_up = need_number(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    if (section == "evaluate") {
        if (key == "thresholds") cfg.thresholds = need_array(v, where);
        else if (key == "points_frac") cfg.points_frac = need_array(v, where);
        else if (key == "points_hours") cfg.points_hours = need_array(v, where);
        else throw ParseError("unknown key '" + where + "'", v.line);
        return;
    }
    throw ParseError("unknown section [" + section + "]", v.line);
}

void check(bool ok, const std::string& msg) {
    if (!ok) throw ParseError("config: " + msg, 0);
}

}  // namespace

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'", 0);
    PipelineConfig cfg;
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        // Strip comments outside of strings.
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            else if (line[i] == '#' && !in_str) {
                line.erase(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ParseError("empty section name", line_no);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", line_no);
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line_no);
        Value v = parse_value(line.substr(eq + 1), line_no);
        apply(cfg, section, key, v);
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const PipelineConfig& cfg) {
    check(cfg.schema_version == 1, "unsupported schema_version");
    check(cfg.jobs >= 1, "jobs must be >= 1");
    check(cfg.synth_profile == "fc1" || cfg.synth_profile == "fc2",
          "synth.profile must be fc1 or fc2");
    check(cfg.synth_trend == "linear" || cfg.synth_trend == "piecewise" ||
              cfg.synth_trend == "exponential",
          "synth.trend must be linear, piecewise or exponential");
    check(cfg.synth_v0 > 0, "synth.v0 must be positive");
    check(cfg.synth_total_hours > 0, "synth.total_hours must be positive");
    check(cfg.synth_dt_seconds > 0, "synth.dt_seconds must be positive");
    check(cfg.synth_rate_pct_per_h > 0, "synth.rate_pct_per_h must be positive");
    check(cfg.synth_noise_pct >= 0, "synth.noise_pct must be non-negative");
    check(cfg.synth_load_swing_pct >= 0, "synth.load_swing_pct must be non-negative");
    check(cfg.synth_load_time_scale > 0, "synth.load_time_scale must be positive");
    check(cfg.sift.max_sift_iters >= 1, "sift.max_sift_iters must be >= 1");
    check(cfg.sift.sd_threshold > 0, "sift.sd_threshold must be positive");
    check(cfg.sift.max_imfs >= 1, "sift.max_imfs must be >= 1");
    check(cfg.threshold_hz > 0, "extract.threshold_hz must be positive");
    check(cfg.spectrum_bins >= 1, "extract.spectrum_bins must be >= 1");
    check(cfg.abba_tol > 0, "abba.tol must be positive");
    check(cfg.abba_max_k >= 1, "abba.max_k must be >= 1");
    check(cfg.train.learning_rate > 0, "train.learning_rate must be positive");
    check(cfg.train.batch_size >= 1, "train.batch_size must be >= 1");
    check(cfg.train.max_epochs >= 1, "train.max_epochs must be >= 1");
    check(cfg.train.window >= 1, "train.window must be >= 1");
    check(cfg.train.early_stop_patience >= 1,
          "train.early_stop_patience must be >= 1");
    check(cfg.train.early_stop_min_delta >= 0,
          "train.early_stop_min_delta must be non-negative");
    check(cfg.gru_layers >= 1, "train.layers must be >= 1");
    check(cfg.gru_hidden >= 1, "train.hidden must be >= 1");
    check(cfg.n_models >= 1, "rul.n_models must be >= 1");
    check(cfg.forecast_span_factor > 0, "rul.forecast_span_factor must be positive");
    check(cfg.forecast_max_symbols >= 1, "rul.forecast_max_symbols must be >= 1");
    check(cfg.metrics.alpha_low > 0, "metrics.alpha_low must be positive");
    check(cfg.metrics.alpha_up > 0, "metrics.alpha_up must be positive");
    check(!cfg.thresholds.empty(), "evaluate.thresholds must be non-empty");
    for (double ft : cfg.thresholds)
        check(ft >= 0 && ft < 1, "evaluate.thresholds entries must lie in [0, 1)");
    check(std::is_sorted(cfg.thresholds.begin(), cfg.thresholds.end()),
          "evaluate.thresholds must be sorted ascending");
    for (double f : cfg.points_frac)
        check(f > 0 && f < 1, "evaluate.points_frac entries must lie in (0, 1)");
    for (double t : cfg.points_hours)
        check(t > 0, "evaluate.points_hours entries must be positive");
    check(!cfg.points_frac.empty() || !cfg.points_hours.empty(),
          "evaluate needs points_frac or points_hours");
}

nlohmann::ordered_json config_echo(const PipelineConfig& cfg) {
    nlohmann::ordered_json j;
    j["schema_version"] = cfg.schema_version;
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    j["jobs"] = cfg.jobs;
    j["synth"] = {{"profile", cfg.synth_profile},
                  {"trend", cfg.synth_trend},
                  {"v0", cfg.synth_v0},
                  {"total_hours", cfg.synth_total_hours},
                  {"dt_seconds", cfg.synth_dt_seconds},
                  {"rate_pct_per_h", cfg.synth_rate_pct_per_h},
                  {"noise_pct", cfg.synth_noise_pct},
                  {"load_swing_pct", cfg.synth_load_swing_pct},
                  {"load_time_scale", cfg.synth_load_time_scale}};
    j["sift"] = {{"max_sift_iters", cfg.sift.max_sift_iters},
                 {"sd_threshold", cfg.sift.sd_threshold},
                 {"max_imfs", cfg.sift.max_imfs}};
    j["extract"] = {{"threshold_hz", cfg.threshold_hz},
                    {"spectrum_bins", cfg.spectrum_bins}};
    j["abba"] = {{"tol", cfg.abba_tol}, {"max_k", cfg.abba_max_k}};
    j["train"] = {{"learning_rate", cfg.train.learning_rate},
                  {"batch_size", cfg.train.batch_size},
                  {"max_epochs", cfg.train.max_epochs},
                  {"window", cfg.train.window},
                  {"early_stop_patience", cfg.train.early_stop_patience},
                  {"early_stop_min_delta", cfg.train.early_stop_min_delta},
                  {"layers", cfg.gru_layers},
                  {"hidden", cfg.gru_hidden}};
    j["rul"] = {{"n_models", cfg.n_models},
                {"forecast_span_factor", cfg.forecast_span_factor},
                {"forecast_max_symbols", cfg.forecast_max_symbols}};
    j["metrics"] = {{"alpha_low", cfg.metrics.alpha_low},
                    {"alpha_up", cfg.metrics.alpha_up}};
    j["evaluate"] = {{"thresholds", cfg.thresholds},
                     {"points_frac", cfg.points_frac},
                     {"points_hours", cfg.points_hours}};
    return j;
}

}  // namespace fcprog
