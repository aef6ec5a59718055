#include "fcprog/gru.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fcprog/csv_io.hpp"
#include "fcprog/rng.hpp"

namespace fcprog {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void matvec_into(const Mat& m, const Vec& x, Vec& out) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* row = m.a.data() + i * m.cols;
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += row[j] * x[j];
        out[i] += s;
    }
}

void matvec_t_into(const Mat& m, const Vec& d, Vec& out) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double di = d[i];
        const double* row = m.a.data() + i * m.cols;
        for (std::size_t j = 0; j < m.cols; ++j) out[j] += row[j] * di;
    }
}

void outer_into(Mat& m, const Vec& d, const Vec& x) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        double* row = m.a.data() + i * m.cols;
        const double di = d[i];
        for (std::size_t j = 0; j < m.cols; ++j) row[j] += di * x[j];
    }
}

void add_col_into(const Mat& m, std::size_t col, Vec& out) {
    for (std::size_t i = 0; i < m.rows; ++i) out[i] += m(i, col);
}

void col_outer_into(Mat& m, const Vec& d, std::size_t col) {
    for (std::size_t i = 0; i < m.rows; ++i) m(i, col) += d[i];
}

// Per-window activations kept for backpropagation; reused across windows to
// avoid reallocation inside the training loop.
struct ForwardCache {
    // [layer][timestep] hidden-sized vectors
    std::vector<std::vector<Vec>> r, z, cand, h, rh;
    Vec logits, probs;
    Vec zero_h;  // shared all-zero initial state (layers share hidden size)

    void resize(const GruNetwork& net, std::size_t T) {
        const std::size_t L = net.layers.size();
        auto shape = [&](std::vector<std::vector<Vec>>& field) {
            field.resize(L);
            for (std::size_t l = 0; l < L; ++l) {
                field[l].resize(T);
                for (auto& v : field[l]) v.assign(net.layers[l].hidden_size, 0.0);
            }
        };
        shape(r);
        shape(z);
        shape(cand);
        shape(h);
        shape(rh);
        logits.assign(net.alphabet_size, 0.0);
        probs.assign(net.alphabet_size, 0.0);
        std::size_t max_hidden = 0;
        for (const auto& layer : net.layers) max_hidden = std::max(max_hidden, layer.hidden_size);
        zero_h.assign(max_hidden, 0.0);
    }
};

void check_symbols(const GruNetwork& net, const std::vector<std::size_t>& symbols) {
    for (std::size_t s : symbols)
        if (s >= net.alphabet_size)
            throw UnknownSymbolError("symbol " + std::to_string(s) + " outside alphabet of " +
                                     std::to_string(net.alphabet_size));
}

// One cell step; input is either dense (x != nullptr) or one-hot (column
// onehot). Writes r, z, rh = r*h_prev, cand and h.
void step_layer(const GruCellParams& p, const Vec* x, std::size_t onehot, const Vec& h_prev,
                Vec& r, Vec& z, Vec& rh, Vec& cand, Vec& h) {
    const std::size_t H = p.hidden_size;
    std::copy(p.b_r.begin(), p.b_r.end(), r.begin());
    std::copy(p.b_z.begin(), p.b_z.end(), z.begin());
    std::copy(p.b_h.begin(), p.b_h.end(), cand.begin());
    if (x) {
        matvec_into(p.W_r, *x, r);
        matvec_into(p.W_z, *x, z);
        matvec_into(p.W_h, *x, cand);
    } else {
        add_col_into(p.W_r, onehot, r);
        add_col_into(p.W_z, onehot, z);
        add_col_into(p.W_h, onehot, cand);
    }
    matvec_into(p.U_r, h_prev, r);
    matvec_into(p.U_z, h_prev, z);
    for (std::size_t i = 0; i < H; ++i) {
        r[i] = sigmoid(r[i]);
        z[i] = sigmoid(z[i]);
        rh[i] = r[i] * h_prev[i];
    }
    matvec_into(p.U_h, rh, cand);
    for (std::size_t i = 0; i < H; ++i) {
        cand[i] = std::tanh(cand[i]);
        h[i] = (1.0 - z[i]) * h_prev[i] + z[i] * cand[i];
    }
}

// Runs the whole window; returns the cross-entropy loss for `target` (or 0
// when target == npos, forecast path).
double run_forward(const GruNetwork& net, const std::vector<std::size_t>& window,
                   std::size_t target, ForwardCache& c) {
    const std::size_t L = net.layers.size();
    const std::size_t T = window.size();
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t l = 0; l < L; ++l) {
            const Vec& h_prev = (t == 0) ? c.zero_h : c.h[l][t - 1];
            const Vec* x = (l == 0) ? nullptr : &c.h[l - 1][t];
            step_layer(net.layers[l], x, window[t], h_prev, c.r[l][t], c.z[l][t], c.rh[l][t],
                       c.cand[l][t], c.h[l][t]);
        }
    }
    const Vec& h_last = c.h[L - 1][T - 1];
    std::copy(net.readout_b.begin(), net.readout_b.end(), c.logits.begin());
    matvec_into(net.readout_w, h_last, c.logits);

    double max_logit = c.logits[0];
    for (double v : c.logits) max_logit = std::max(max_logit, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < c.logits.size(); ++i) {
        c.probs[i] = std::exp(c.logits[i] - max_logit);
        sum += c.probs[i];
    }
    for (double& p : c.probs) p /= sum;
    if (target == static_cast<std::size_t>(-1)) return 0.0;
    const double lse = max_logit + std::log(sum);
    return lse - c.logits[target];
}

struct BackpropScratch {
    std::vector<Vec> dh_carry;  // per layer
    Vec dh, dx, d_rh, da_r, da_z, da_h, dlogits;

    void resize(const GruNetwork& net) {
        const std::size_t L = net.layers.size();
        dh_carry.resize(L);
        std::size_t max_hidden = 0;
        for (std::size_t l = 0; l < L; ++l) {
            dh_carry[l].assign(net.layers[l].hidden_size, 0.0);
            max_hidden = std::max(max_hidden, net.layers[l].hidden_size);
        }
        dh.assign(max_hidden, 0.0);
        dx.assign(max_hidden, 0.0);
        d_rh.assign(max_hidden, 0.0);
        da_r.assign(max_hidden, 0.0);
        da_z.assign(max_hidden, 0.0);
        da_h.assign(max_hidden, 0.0);
        dlogits.assign(net.alphabet_size, 0.0);
    }
};

GruGradients make_zero_grads(const GruNetwork& net) {
    GruGradients g;
    g.layers.reserve(net.layers.size());
    for (const auto& layer : net.layers) g.layers.emplace_back(layer.input_size, layer.hidden_size);
    g.readout_w = Mat(net.readout_w.rows, net.readout_w.cols);
    g.readout_b.assign(net.readout_b.size(), 0.0);
    return g;
}

void zero_grads(GruGradients& g) {
    for (auto& layer : g.layers) {
        std::fill(layer.W_r.a.begin(), layer.W_r.a.end(), 0.0);
        std::fill(layer.W_z.a.begin(), layer.W_z.a.end(), 0.0);
        std::fill(layer.W_h.a.begin(), layer.W_h.a.end(), 0.0);
        std::fill(layer.U_r.a.begin(), layer.U_r.a.end(), 0.0);
        std::fill(layer.U_z.a.begin(), layer.U_z.a.end(), 0.0);
        std::fill(layer.U_h.a.begin(), layer.U_h.a.end(), 0.0);
        std::fill(layer.b_r.begin(), layer.b_r.end(), 0.0);
        std::fill(layer.b_z.begin(), layer.b_z.end(), 0.0);
        std::fill(layer.b_h.begin(), layer.b_h.end(), 0.0);
    }
    std::fill(g.readout_w.a.begin(), g.readout_w.a.end(), 0.0);
    std::fill(g.readout_b.begin(), g.readout_b.end(), 0.0);
}

// Backward pass through the cached forward; adds this window's gradient into
// `g`. The update-gate path follows h' = (1-z)*h_prev + z*cand.
void backprop_into(const GruNetwork& net, const std::vector<std::size_t>& window,
                   std::size_t target, ForwardCache& c, BackpropScratch& s, GruGradients& g) {
    const std::size_t L = net.layers.size();
    const std::size_t T = window.size();
    const std::size_t K = net.alphabet_size;

    for (std::size_t i = 0; i < K; ++i) s.dlogits[i] = c.probs[i];
    s.dlogits[target] -= 1.0;
    outer_into(g.readout_w, s.dlogits, c.h[L - 1][T - 1]);
    for (std::size_t i = 0; i < K; ++i) g.readout_b[i] += s.dlogits[i];

    for (std::size_t l = 0; l < L; ++l)
        std::fill(s.dh_carry[l].begin(), s.dh_carry[l].end(), 0.0);
    matvec_t_into(net.readout_w, s.dlogits, s.dh_carry[L - 1]);

    for (std::size_t t = T; t-- > 0;) {
        // dx of the layer above, feeding into the layer below at this t.
        bool have_dx = false;
        for (std::size_t l = L; l-- > 0;) {
            const GruCellParams& p = net.layers[l];
            GruCellParams& pg = g.layers[l];
            const std::size_t H = p.hidden_size;
            const Vec& h_prev = (t == 0) ? c.zero_h : c.h[l][t - 1];
            const Vec& r = c.r[l][t];
            const Vec& z = c.z[l][t];
            const Vec& cand = c.cand[l][t];
            const Vec& rh = c.rh[l][t];

            std::copy(s.dh_carry[l].begin(), s.dh_carry[l].end(), s.dh.begin());
            if (have_dx) {
                for (std::size_t i = 0; i < H; ++i) s.dh[i] += s.dx[i];
            }

            for (std::size_t i = 0; i < H; ++i) {
                const double dh_i = s.dh[i];
                const double dz = dh_i * (cand[i] - h_prev[i]);
                const double dcand = dh_i * z[i];
                s.dh_carry[l][i] = dh_i * (1.0 - z[i]);  // becomes dh_prev
                s.da_h[i] = dcand * (1.0 - cand[i] * cand[i]);
                s.da_z[i] = dz * z[i] * (1.0 - z[i]);
            }

            std::fill(s.d_rh.begin(), s.d_rh.begin() + static_cast<std::ptrdiff_t>(H), 0.0);
            matvec_t_into(p.U_h, s.da_h, s.d_rh);
            for (std::size_t i = 0; i < H; ++i) {
                const double dr = s.d_rh[i] * h_prev[i];
                s.dh_carry[l][i] += s.d_rh[i] * r[i];
                s.da_r[i] = dr * r[i] * (1.0 - r[i]);
            }

            const Vec* x = (l == 0) ? nullptr : &c.h[l - 1][t];
            if (x) {
                outer_into(pg.W_r, s.da_r, *x);
                outer_into(pg.W_z, s.da_z, *x);
                outer_into(pg.W_h, s.da_h, *x);
            } else {
                col_outer_into(pg.W_r, s.da_r, window[t]);
                col_outer_into(pg.W_z, s.da_z, window[t]);
                col_outer_into(pg.W_h, s.da_h, window[t]);
            }
            outer_into(pg.U_r, s.da_r, h_prev);
            outer_into(pg.U_z, s.da_z, h_prev);
            outer_into(pg.U_h, s.da_h, rh);
            for (std::size_t i = 0; i < H; ++i) {
                pg.b_r[i] += s.da_r[i];
                pg.b_z[i] += s.da_z[i];
                pg.b_h[i] += s.da_h[i];
            }

            matvec_t_into(p.U_r, s.da_r, s.dh_carry[l]);
            matvec_t_into(p.U_z, s.da_z, s.dh_carry[l]);

            if (l > 0) {
                std::fill(s.dx.begin(), s.dx.begin() + static_cast<std::ptrdiff_t>(p.input_size), 0.0);
                matvec_t_into(p.W_r, s.da_r, s.dx);
                matvec_t_into(p.W_z, s.da_z, s.dx);
                matvec_t_into(p.W_h, s.da_h, s.dx);
                have_dx = true;
            } else {
                have_dx = false;
            }
        }
    }
}

void flatten_cell(const GruCellParams& p, std::vector<double>& out) {
    auto push_mat = [&](const Mat& m) { out.insert(out.end(), m.a.begin(), m.a.end()); };
    auto push_vec = [&](const Vec& v) { out.insert(out.end(), v.begin(), v.end()); };
    push_mat(p.W_r);
    push_mat(p.W_z);
    push_mat(p.W_h);
    push_mat(p.U_r);
    push_mat(p.U_z);
    push_mat(p.U_h);
    push_vec(p.b_r);
    push_vec(p.b_z);
    push_vec(p.b_h);
}

void unflatten_cell(GruCellParams& p, const std::vector<double>& flat, std::size_t& pos) {
    auto pull_mat = [&](Mat& m) {
        std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                  flat.begin() + static_cast<std::ptrdiff_t>(pos + m.a.size()), m.a.begin());
        pos += m.a.size();
    };
    auto pull_vec = [&](Vec& v) {
        std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                  flat.begin() + static_cast<std::ptrdiff_t>(pos + v.size()), v.begin());
        pos += v.size();
    };
    pull_mat(p.W_r);
    pull_mat(p.W_z);
    pull_mat(p.W_h);
    pull_mat(p.U_r);
    pull_mat(p.U_z);
    pull_mat(p.U_h);
    pull_vec(p.b_r);
    pull_vec(p.b_z);
    pull_vec(p.b_h);
}

}  // namespace

GruCellParams::GruCellParams(std::size_t input, std::size_t hidden)
    : input_size(input),
      hidden_size(hidden),
      W_r(hidden, input),
      W_z(hidden, input),
      W_h(hidden, input),
      U_r(hidden, hidden),
      U_z(hidden, hidden),
      U_h(hidden, hidden),
      b_r(hidden, 0.0),
      b_z(hidden, 0.0),
      b_h(hidden, 0.0) {}

GruNetwork make_gru_network(std::size_t alphabet_size, std::size_t num_layers,
                            std::size_t hidden_size, std::uint64_t seed) {
    if (alphabet_size == 0 || num_layers == 0 || hidden_size == 0)
        throw BadSpecError("network dimensions must be positive");
    GruNetwork net;
    net.alphabet_size = alphabet_size;
    net.seed = seed;
    Rng rng(seed);
    auto fill = [&](Mat& m) {
        for (double& v : m.a) v = rng.uniform(-0.08, 0.08);
    };
    for (std::size_t l = 0; l < num_layers; ++l) {
        const std::size_t input = (l == 0) ? alphabet_size : hidden_size;
        GruCellParams p(input, hidden_size);
        fill(p.W_r);
        fill(p.W_z);
        fill(p.W_h);
        fill(p.U_r);
        fill(p.U_z);
        fill(p.U_h);
        net.layers.push_back(std::move(p));
    }
    net.readout_w = Mat(alphabet_size, hidden_size);
    fill(net.readout_w);
    net.readout_b.assign(alphabet_size, 0.0);
    return net;
}

Vec cell_forward(const GruCellParams& params, const Vec& input, const Vec& h_prev) {
    if (input.size() != params.input_size || h_prev.size() != params.hidden_size)
        throw ShapeMismatchError("cell input/hidden sizes do not match parameters");
    const std::size_t H = params.hidden_size;
    Vec r(H), z(H), rh(H), cand(H), h(H);
    step_layer(params, &input, 0, h_prev, r, z, rh, cand, h);
    return h;
}

Vec forward_logits(const GruNetwork& net, const std::vector<std::size_t>& window) {
    if (window.empty()) throw InsufficientDataError("forward needs a non-empty window");
    check_symbols(net, window);
    ForwardCache cache;
    cache.resize(net, window.size());
    run_forward(net, window, static_cast<std::size_t>(-1), cache);
    return cache.logits;
}

Vec softmax(const Vec& logits) {
    double max_logit = -std::numeric_limits<double>::infinity();
    for (double v : logits) max_logit = std::max(max_logit, v);
    Vec out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - max_logit);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

double window_loss(const GruNetwork& net, const std::vector<std::size_t>& window,
                   std::size_t target) {
    check_symbols(net, window);
    if (target >= net.alphabet_size) throw UnknownSymbolError("target outside alphabet");
    ForwardCache cache;
    cache.resize(net, window.size());
    return run_forward(net, window, target, cache);
}

GruGradients backprop_window(const GruNetwork& net, const std::vector<std::size_t>& window,
                             std::size_t target, double* loss_out) {
    check_symbols(net, window);
    if (target >= net.alphabet_size) throw UnknownSymbolError("target outside alphabet");
    ForwardCache cache;
    cache.resize(net, window.size());
    const double loss = run_forward(net, window, target, cache);
    if (loss_out) *loss_out = loss;
    BackpropScratch scratch;
    scratch.resize(net);
    GruGradients grads = make_zero_grads(net);
    backprop_into(net, window, target, cache, scratch, grads);
    return grads;
}

TrainResult train(GruNetwork& net, const std::vector<std::size_t>& symbols,
                  const TrainConfig& cfg) {
    if (cfg.window == 0) throw BadSpecError("window must be >= 1");
    if (symbols.size() <= cfg.window + 1)
        throw InsufficientDataError("need more symbols than window + 1, got " +
                                    std::to_string(symbols.size()));
    check_symbols(net, symbols);

    const std::size_t num_windows = symbols.size() - cfg.window;
    std::vector<std::size_t> order(num_windows);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> params = flatten_params(net);
    std::vector<double> adam_m(params.size(), 0.0);
    std::vector<double> adam_v(params.size(), 0.0);
    long long adam_t = 0;

    ForwardCache cache;
    cache.resize(net, cfg.window);
    BackpropScratch scratch;
    scratch.resize(net);
    GruGradients grads = make_zero_grads(net);

    Rng rng(cfg.seed);
    TrainResult result;
    double best_loss = std::numeric_limits<double>::infinity();
    int stale_epochs = 0;
    std::vector<std::size_t> window(cfg.window);

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t batch_start = 0; batch_start < num_windows;
             batch_start += cfg.batch_size) {
            const std::size_t batch_end = std::min(batch_start + cfg.batch_size, num_windows);
            const double batch_count = static_cast<double>(batch_end - batch_start);
            zero_grads(grads);
            for (std::size_t b = batch_start; b < batch_end; ++b) {
                const std::size_t start = order[b];
                std::copy(symbols.begin() + static_cast<std::ptrdiff_t>(start),
                          symbols.begin() + static_cast<std::ptrdiff_t>(start + cfg.window),
                          window.begin());
                epoch_loss += run_forward(net, window, symbols[start + cfg.window], cache);
                backprop_into(net, window, symbols[start + cfg.window], cache, scratch, grads);
            }

            std::vector<double> flat_g = flatten_grads(grads);
            ++adam_t;
            const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(adam_t));
            const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(adam_t));
            for (std::size_t i = 0; i < params.size(); ++i) {
                const double gi = flat_g[i] / batch_count;
                adam_m[i] = cfg.adam_beta1 * adam_m[i] + (1.0 - cfg.adam_beta1) * gi;
                adam_v[i] = cfg.adam_beta2 * adam_v[i] + (1.0 - cfg.adam_beta2) * gi * gi;
                const double m_hat = adam_m[i] / bc1;
                const double v_hat = adam_v[i] / bc2;
                params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
            }
            set_flat_params(net, params);
        }

        epoch_loss /= static_cast<double>(num_windows);
        if (!std::isfinite(epoch_loss))
            throw DivergedLossError("training loss became non-finite at epoch " +
                                    std::to_string(epoch + 1));
        result.loss_history.push_back(epoch_loss);
        result.epochs_run = epoch + 1;

        if (epoch_loss < best_loss - cfg.early_stop_min_delta) {
            best_loss = epoch_loss;
            stale_epochs = 0;
        } else {
            ++stale_epochs;
        }
        if (stale_epochs >= cfg.early_stop_patience) {
            result.early_stopped = true;
            break;
        }
    }
    return result;
}

std::vector<std::size_t> forecast(const GruNetwork& net,
                                  const std::vector<std::size_t>& seed_symbols,
                                  std::size_t window, std::size_t max_symbols) {
    if (window == 0) throw BadSpecError("window must be >= 1");
    if (seed_symbols.size() < window)
        throw InsufficientDataError("forecast seed shorter than window");
    check_symbols(net, seed_symbols);

    ForwardCache cache;
    cache.resize(net, window);
    std::vector<std::size_t> rolling(seed_symbols.end() - static_cast<std::ptrdiff_t>(window),
                                     seed_symbols.end());
    std::vector<std::size_t> out;
    out.reserve(max_symbols);
    for (std::size_t step = 0; step < max_symbols; ++step) {
        run_forward(net, rolling, static_cast<std::size_t>(-1), cache);
        std::size_t best = 0;
        for (std::size_t i = 1; i < cache.logits.size(); ++i)
            if (cache.logits[i] > cache.logits[best]) best = i;
        out.push_back(best);
        rolling.erase(rolling.begin());
        rolling.push_back(best);
    }
    return out;
}

double next_symbol_accuracy(const GruNetwork& net, const std::vector<std::size_t>& symbols,
                            std::size_t window) {
    if (symbols.size() <= window)
        throw InsufficientDataError("accuracy needs more symbols than the window");
    check_symbols(net, symbols);
    ForwardCache cache;
    cache.resize(net, window);
    std::vector<std::size_t> w(window);
    std::size_t hits = 0;
    const std::size_t total = symbols.size() - window;
    for (std::size_t start = 0; start < total; ++start) {
        std::copy(symbols.begin() + static_cast<std::ptrdiff_t>(start),
                  symbols.begin() + static_cast<std::ptrdiff_t>(start + window), w.begin());
        run_forward(net, w, static_cast<std::size_t>(-1), cache);
        std::size_t best = 0;
        for (std::size_t i = 1; i < cache.logits.size(); ++i)
            if (cache.logits[i] > cache.logits[best]) best = i;
        if (best == symbols[start + window]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<double> flatten_params(const GruNetwork& net) {
    std::vector<double> out;
    for (const auto& layer : net.layers) flatten_cell(layer, out);
    out.insert(out.end(), net.readout_w.a.begin(), net.readout_w.a.end());
    out.insert(out.end(), net.readout_b.begin(), net.readout_b.end());
    return out;
}

void set_flat_params(GruNetwork& net, const std::vector<double>& flat) {
    std::size_t pos = 0;
    for (auto& layer : net.layers) unflatten_cell(layer, flat, pos);
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
              flat.begin() + static_cast<std::ptrdiff_t>(pos + net.readout_w.a.size()),
              net.readout_w.a.begin());
    pos += net.readout_w.a.size();
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
              flat.begin() + static_cast<std::ptrdiff_t>(pos + net.readout_b.size()),
              net.readout_b.begin());
    pos += net.readout_b.size();
    if (pos != flat.size()) throw ShapeMismatchError("flat parameter size mismatch");
}

std::vector<double> flatten_grads(const GruGradients& grads) {
    std::vector<double> out;
    for (const auto& layer : grads.layers) flatten_cell(layer, out);
    out.insert(out.end(), grads.readout_w.a.begin(), grads.readout_w.a.end());
    out.insert(out.end(), grads.readout_b.begin(), grads.readout_b.end());
    return out;
}

void write_gru_checkpoint_json(const std::string& path, const GruNetwork& net) {
    nlohmann::ordered_json doc;
    doc["alphabet_size"] = net.alphabet_size;
    doc["seed"] = net.seed;
    auto layers = nlohmann::ordered_json::array();
    for (const auto& p : net.layers) {
        nlohmann::ordered_json layer;
        layer["input_size"] = p.input_size;
        layer["hidden_size"] = p.hidden_size;
        layer["W_r"] = p.W_r.a;
        layer["W_z"] = p.W_z.a;
        layer["W_h"] = p.W_h.a;
        layer["U_r"] = p.U_r.a;
        layer["U_z"] = p.U_z.a;
        layer["U_h"] = p.U_h.a;
        layer["b_r"] = p.b_r;
        layer["b_z"] = p.b_z;
        layer["b_h"] = p.b_h;
        layers.push_back(std::move(layer));
    }
    doc["layers"] = std::move(layers);
    doc["readout_w"] = net.readout_w.a;
    doc["readout_b"] = net.readout_b;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump() << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

GruNetwork read_gru_checkpoint_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
        GruNetwork net;
        net.alphabet_size = doc.at("alphabet_size").get<std::size_t>();
        net.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& layer : doc.at("layers")) {
            GruCellParams p(layer.at("input_size").get<std::size_t>(),
                            layer.at("hidden_size").get<std::size_t>());
            p.W_r.a = layer.at("W_r").get<std::vector<double>>();
            p.W_z.a = layer.at("W_z").get<std::vector<double>>();
            p.W_h.a = layer.at("W_h").get<std::vector<double>>();
            p.U_r.a = layer.at("U_r").get<std::vector<double>>();
            p.U_z.a = layer.at("U_z").get<std::vector<double>>();
            p.U_h.a = layer.at("U_h").get<std::vector<double>>();
            p.b_r = layer.at("b_r").get<Vec>();
            p.b_z = layer.at("b_z").get<Vec>();
            p.b_h = layer.at("b_h").get<Vec>();
            net.layers.push_back(std::move(p));
        }
        net.readout_w = Mat(net.alphabet_size, net.layers.back().hidden_size);
        net.readout_w.a = doc.at("readout_w").get<std::vector<double>>();
        net.readout_b = doc.at("readout_b").get<Vec>();
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad checkpoint JSON: ") + e.what());
    }
}

void write_loss_history_csv(const std::string& path, const std::vector<double>& losses) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i)
        rows.push_back({std::to_string(i + 1), format_double(losses[i])});
    write_csv(path, {"epoch", "loss"}, rows);
}

}  // namespace fcprog
