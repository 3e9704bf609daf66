#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hexlb/trafficgen.hpp"

namespace hexlb {

/// Raised when training or inference produces non-finite numbers.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int epochs = 120;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;  // global gradient norm
  double beta1 = 0.9;      // first-moment coefficient
  double beta2 = 0.999;    // second-moment coefficient
  // Two weekly periods per window. With a single period, a fresh level
  // shift is indistinguishable from a weekend bump until it has persisted
  // past the window edge; seeing each weekday twice disambiguates the two
  // and halves the forecast error on changepoint series.
  int window = 14;
  int hidden = 32;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Affine map of the training range onto [0, 1]. A constant series has zero
/// range; the scaler then falls back to unit range and flags it.
struct MinMaxScaler {
  double min = 0.0;
  double max = 1.0;
  bool degenerate = false;

  double range() const { return degenerate ? 1.0 : max - min; }
  double scale(double x) const { return (x - min) / range(); }
  double unscale(double s) const { return s * range() + min; }
};

/// Single-layer LSTM with a linear head, univariate input. Gate weights are
/// hidden x (hidden + 1) row-major: the first `hidden` columns multiply the
/// previous hidden state, the last column the scalar input. Plain value
/// type; reads are safe concurrently once training has finished.
struct LstmModel {
  int hidden = 0;
  int window = 0;
  MinMaxScaler scaler;

  std::vector<double> w_forget, w_input, w_cand, w_output;
  std::vector<double> b_forget, b_input, b_cand, b_output;
  std::vector<double> w_head;  // 1 x hidden projection
  double b_head = 0.0;

  int param_count() const;
};

/// Fresh model: weights uniform in [-1/sqrt(hidden), 1/sqrt(hidden)] from
/// the seeded stream, biases zero except the forget-gate bias at 1.
LstmModel init_model(int hidden, int window, std::uint64_t seed);

struct LstmState {
  std::vector<double> hidden;
  std::vector<double> cell;

  static LstmState zero(int hidden_size);
};

/// Per-step activations retained for backpropagation through time.
struct GateCache {
  double input = 0.0;
  std::vector<double> forget, in, cand, out;
  std::vector<double> cell, tanh_cell, hidden;
  std::vector<double> prev_hidden, prev_cell;
};

/// One LSTM cell step:
///   f = sig(Wf.[h, x] + bf)   i = sig(Wi.[h, x] + bi)
///   a = tanh(Wa.[h, x] + ba)  c' = f*c + i*a
///   o = sig(Wo.[h, x] + bo)   h' = o*tanh(c')
/// Throws NumericError on non-finite input or state.
LstmState lstm_cell_forward(const LstmModel& m, double input,
                            const LstmState& prev,
                            GateCache* cache = nullptr);

/// Runs a scaled window through the network and head; returns the scaled
/// prediction. `caches`, when given, receives one entry per step.
double forward_window(const LstmModel& m, std::span<const double> scaled_window,
                      std::vector<GateCache>* caches = nullptr);

/// Gradient accumulator shaped like the model parameters.
struct LstmGrads {
  std::vector<double> w_forget, w_input, w_cand, w_output;
  std::vector<double> b_forget, b_input, b_cand, b_output;
  std::vector<double> w_head;
  double b_head = 0.0;

  static LstmGrads zero(const LstmModel& m);
  double squared_norm() const;
  void scale(double k);
};

/// Squared-error loss (pred - target)^2 in scaled space.
double window_loss(const LstmModel& m, std::span<const double> scaled_window,
                   double scaled_target);

/// Analytic BPTT gradients of window_loss w.r.t. every parameter.
LstmGrads lstm_gradients(const LstmModel& m,
                         std::span<const double> scaled_window,
                         double scaled_target, double* loss_out = nullptr);

/// Compares analytic gradients against central finite differences
/// (step 1e-5) for every parameter; returns the max over parameters of
/// |ga - gn| / max(1e-8, |ga| + |gn|). Window and target are in raw units
/// and pass through the model's scaler. Diagnostic; intended for small
/// hidden sizes.
double grad_check(const LstmModel& m, std::span<const double> window,
                  double target);

/// Trains on sliding windows pooled from the given segments (windows never
/// cross a segment boundary). Min-max scaling is fit over all segments;
/// optimization is per-window Adam with deterministic shuffling, gradient
/// clipping at cfg.clip_norm, MSE loss. Deterministic given cfg.seed.
/// Throws NumericError if the loss turns non-finite.
LstmModel train(const std::vector<std::vector<double>>& segments,
                const TrainConfig& cfg,
                std::vector<double>* epoch_loss = nullptr);

LstmModel train(const Series& series, const TrainConfig& cfg,
                std::vector<double>* epoch_loss = nullptr);

/// One-step forecast from a raw window of exactly m.window values.
double predict_next(const LstmModel& m, std::span<const double> window);

/// Rolling one-step forecasts: predictions[i] forecasts values[from + i]
/// from the actual window ending at from + i - 1, for from + i <= to.
/// Requires from >= m.window.
std::vector<double> rolling_forecast(const LstmModel& m,
                                     std::span<const double> values, int from,
                                     int to);

/// Mean absolute percentage error, in percent. Skips near-zero actuals.
double mape(std::span<const double> actual, std::span<const double> predicted);

}  // namespace hexlb
