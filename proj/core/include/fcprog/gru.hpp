#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

/// Row-major dense matrix, just enough for the recurrent cells.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

using Vec = std::vector<double>;

/// One gated recurrent cell. W_* act on the input, U_* on the previous
/// hidden state, b_* are biases. Also reused as the gradient container
/// (same shapes).
struct GruCellParams {
    std::size_t input_size = 0;
    std::size_t hidden_size = 0;
    Mat W_r, W_z, W_h;
    Mat U_r, U_z, U_h;
    Vec b_r, b_z, b_h;

    GruCellParams() = default;
    GruCellParams(std::size_t input, std::size_t hidden);
};

/// Stacked cells over one-hot symbol input plus a dense readout to symbol
/// logits. The final hidden state feeds the readout; softmax over logits
/// gives the next-symbol distribution.
struct GruNetwork {
    std::vector<GruCellParams> layers;
    Mat readout_w;  // alphabet x hidden
    Vec readout_b;
    std::size_t alphabet_size = 0;
    std::uint64_t seed = 0;
};

/// Weights drawn uniform(-0.08, 0.08) from the seed, biases zero.
GruNetwork make_gru_network(std::size_t alphabet_size, std::size_t num_layers,
                            std::size_t hidden_size, std::uint64_t seed);

/// r = sigmoid(W_r x + U_r h + b_r); z = sigmoid(W_z x + U_z h + b_z);
/// cand = tanh(W_h x + U_h (r*h) + b_h); h' = (1-z)*h + z*cand.
Vec cell_forward(const GruCellParams& params, const Vec& input, const Vec& h_prev);

/// Runs the window through the stack from zero initial hidden state and
/// returns readout logits. Throws UnknownSymbolError on out-of-alphabet
/// symbols.
Vec forward_logits(const GruNetwork& net, const std::vector<std::size_t>& window);

Vec softmax(const Vec& logits);

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t batch_size = 128;
    int max_epochs = 10000;
    std::size_t window = 10;
    int early_stop_patience = 200;
    double early_stop_min_delta = 1e-5;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
};

struct TrainResult {
    std::vector<double> loss_history;  // mean cross-entropy per epoch
    int epochs_run = 0;
    bool early_stopped = false;
};

/// Next-symbol cross-entropy over all sliding windows, minimized with Adam
/// over shuffled mini-batches; full backpropagation through time. Stops
/// early when the epoch loss stops improving by early_stop_min_delta for
/// early_stop_patience epochs. Deterministic for fixed (net seed, cfg seed).
TrainResult train(GruNetwork& net, const std::vector<std::size_t>& symbols,
                  const TrainConfig& cfg);

/// Closed-loop decoding: argmax next symbol (ties to the lowest index),
/// append, slide the window, repeat max_symbols times.
std::vector<std::size_t> forecast(const GruNetwork& net,
                                  const std::vector<std::size_t>& seed_symbols,
                                  std::size_t window, std::size_t max_symbols);

/// Fraction of sliding windows whose argmax prediction matches the target.
double next_symbol_accuracy(const GruNetwork& net, const std::vector<std::size_t>& symbols,
                            std::size_t window);

/// Gradient of one window's cross-entropy with respect to every parameter;
/// shapes mirror the network. Used by training and the derivative checks.
struct GruGradients {
    std::vector<GruCellParams> layers;
    Mat readout_w;
    Vec readout_b;
};
GruGradients backprop_window(const GruNetwork& net, const std::vector<std::size_t>& window,
                             std::size_t target, double* loss_out = nullptr);

double window_loss(const GruNetwork& net, const std::vector<std::size_t>& window,
                   std::size_t target);

/// Canonical flat parameter order: per layer W_r,W_z,W_h,U_r,U_z,U_h,
/// b_r,b_z,b_h, then readout weights and bias.
std::vector<double> flatten_params(const GruNetwork& net);
void set_flat_params(GruNetwork& net, const std::vector<double>& flat);
std::vector<double> flatten_grads(const GruGradients& grads);

/// JSON checkpoint: shapes, flat row-major weights, seed, alphabet.
void write_gru_checkpoint_json(const std::string& path, const GruNetwork& net);
GruNetwork read_gru_checkpoint_json(const std::string& path);

/// CSV: epoch,loss.
void write_loss_history_csv(const std::string& path, const std::vector<double>& losses);

}  // namespace fcprog
