#include "hexlb/lstm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <type_traits>

#include "hexlb/rng.hpp"

namespace hexlb {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericError(std::string("non-finite ") + what);
}

// Gate pre-activation: w is hidden x (hidden + 1) row-major, the last
// column multiplying the scalar input.
void gate_preact(const std::vector<double>& w, const std::vector<double>& b,
                 const std::vector<double>& h_prev, double x, int hidden,
                 std::vector<double>& out) {
  out.resize(hidden);
  for (int r = 0; r < hidden; ++r) {
    const double* row = w.data() + static_cast<std::size_t>(r) * (hidden + 1);
    double acc = b[r] + row[hidden] * x;
    for (int c = 0; c < hidden; ++c) acc += row[c] * h_prev[c];
    out[r] = acc;
  }
}

// Parameter blocks in serialization/optimizer order; works for LstmModel
// and LstmGrads alike. The scalar head bias is handled by callers.
template <class T>
auto blocks(T& x) {
  using Vec = std::conditional_t<std::is_const_v<T>, const std::vector<double>,
                                 std::vector<double>>;
  return std::array<Vec*, 9>{&x.w_forget, &x.w_input, &x.w_cand, &x.w_output,
                             &x.b_forget, &x.b_input, &x.b_cand, &x.b_output,
                             &x.w_head};
}

struct WindowRef {
  int segment = 0;
  int start = 0;
};

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(clip_norm > 0)) throw std::invalid_argument("clip norm must be > 0");
  if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1))
    throw std::invalid_argument("moment coefficients must lie in [0, 1)");
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  if (hidden < 1) throw std::invalid_argument("hidden size must be >= 1");
}

int LstmModel::param_count() const {
  return 4 * hidden * (hidden + 1) + 4 * hidden + hidden + 1;
}

LstmModel init_model(int hidden, int window, std::uint64_t seed) {
  LstmModel m;
  m.hidden = hidden;
  m.window = window;
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  SplitMix64 rng(seed);
  for (auto* w : {&m.w_forget, &m.w_input, &m.w_cand, &m.w_output}) {
    w->resize(static_cast<std::size_t>(hidden) * (hidden + 1));
    for (double& v : *w) v = rng.next_uniform(-bound, bound);
  }
  m.b_forget.assign(hidden, 1.0);  // open forget gates at the start
  m.b_input.assign(hidden, 0.0);
  m.b_cand.assign(hidden, 0.0);
  m.b_output.assign(hidden, 0.0);
  m.w_head.resize(hidden);
  for (double& v : m.w_head) v = rng.next_uniform(-bound, bound);
  m.b_head = 0.0;
  return m;
}

LstmState LstmState::zero(int hidden_size) {
  return {std::vector<double>(hidden_size, 0.0),
          std::vector<double>(hidden_size, 0.0)};
}

LstmState lstm_cell_forward(const LstmModel& m, double input,
                            const LstmState& prev, GateCache* cache) {
  check_finite(input, "cell input");
  if (static_cast<int>(prev.hidden.size()) != m.hidden ||
      static_cast<int>(prev.cell.size()) != m.hidden)
    throw std::invalid_argument("state size does not match hidden size");
  for (double v : prev.hidden) check_finite(v, "hidden state");
  for (double v : prev.cell) check_finite(v, "cell state");

  const int h = m.hidden;
  std::vector<double> f, i, a, o;
  gate_preact(m.w_forget, m.b_forget, prev.hidden, input, h, f);
  gate_preact(m.w_input, m.b_input, prev.hidden, input, h, i);
  gate_preact(m.w_cand, m.b_cand, prev.hidden, input, h, a);
  gate_preact(m.w_output, m.b_output, prev.hidden, input, h, o);

  LstmState next = LstmState::zero(h);
  std::vector<double> tanh_cell(h);
  for (int r = 0; r < h; ++r) {
    f[r] = sigmoid(f[r]);
    i[r] = sigmoid(i[r]);
    a[r] = std::tanh(a[r]);
    o[r] = sigmoid(o[r]);
    next.cell[r] = f[r] * prev.cell[r] + i[r] * a[r];
    tanh_cell[r] = std::tanh(next.cell[r]);
    next.hidden[r] = o[r] * tanh_cell[r];
  }

  if (cache) {
    cache->input = input;
    cache->forget = std::move(f);
    cache->in = std::move(i);
    cache->cand = std::move(a);
    cache->out = std::move(o);
    cache->cell = next.cell;
    cache->tanh_cell = std::move(tanh_cell);
    cache->hidden = next.hidden;
    cache->prev_hidden = prev.hidden;
    cache->prev_cell = prev.cell;
  }
  return next;
}

double forward_window(const LstmModel& m, std::span<const double> scaled_window,
                      std::vector<GateCache>* caches) {
  if (caches) caches->resize(scaled_window.size());
  LstmState state = LstmState::zero(m.hidden);
  for (std::size_t t = 0; t < scaled_window.size(); ++t)
    state = lstm_cell_forward(m, scaled_window[t], state,
                              caches ? &(*caches)[t] : nullptr);
  double pred = m.b_head;
  for (int r = 0; r < m.hidden; ++r) pred += m.w_head[r] * state.hidden[r];
  return pred;
}

LstmGrads LstmGrads::zero(const LstmModel& m) {
  LstmGrads g;
  const std::size_t wsize = static_cast<std::size_t>(m.hidden) * (m.hidden + 1);
  for (auto* w : {&g.w_forget, &g.w_input, &g.w_cand, &g.w_output})
    w->assign(wsize, 0.0);
  for (auto* b : {&g.b_forget, &g.b_input, &g.b_cand, &g.b_output})
    b->assign(m.hidden, 0.0);
  g.w_head.assign(m.hidden, 0.0);
  g.b_head = 0.0;
  return g;
}

double LstmGrads::squared_norm() const {
  double acc = b_head * b_head;
  for (const auto* blk : blocks(*this))
    for (double v : *blk) acc += v * v;
  return acc;
}

void LstmGrads::scale(double k) {
  b_head *= k;
  for (auto* blk : blocks(*this))
    for (double& v : *blk) v *= k;
}

double window_loss(const LstmModel& m, std::span<const double> scaled_window,
                   double scaled_target) {
  const double diff = forward_window(m, scaled_window) - scaled_target;
  return diff * diff;
}

LstmGrads lstm_gradients(const LstmModel& m,
                         std::span<const double> scaled_window,
                         double scaled_target, double* loss_out) {
  const int h = m.hidden;
  const int steps = static_cast<int>(scaled_window.size());
  std::vector<GateCache> caches;
  const double pred = forward_window(m, scaled_window, &caches);
  const double diff = pred - scaled_target;
  if (loss_out) *loss_out = diff * diff;

  LstmGrads g = LstmGrads::zero(m);
  const double dpred = 2.0 * diff;
  std::vector<double> dh(h, 0.0), dc(h, 0.0);
  const auto& last = caches.back().hidden;
  for (int r = 0; r < h; ++r) {
    g.w_head[r] = dpred * last[r];
    dh[r] = dpred * m.w_head[r];
  }
  g.b_head = dpred;

  std::vector<double> dpre_f(h), dpre_i(h), dpre_a(h), dpre_o(h);
  for (int t = steps - 1; t >= 0; --t) {
    const GateCache& cc = caches[t];
    for (int r = 0; r < h; ++r) {
      const double tc = cc.tanh_cell[r];
      dc[r] += dh[r] * cc.out[r] * (1.0 - tc * tc);
      dpre_o[r] = dh[r] * tc * cc.out[r] * (1.0 - cc.out[r]);
      dpre_f[r] = dc[r] * cc.prev_cell[r] * cc.forget[r] * (1.0 - cc.forget[r]);
      dpre_i[r] = dc[r] * cc.cand[r] * cc.in[r] * (1.0 - cc.in[r]);
      dpre_a[r] = dc[r] * cc.in[r] * (1.0 - cc.cand[r] * cc.cand[r]);
    }

    const std::array<const std::vector<double>*, 4> pres = {
        &dpre_f, &dpre_i, &dpre_a, &dpre_o};
    const std::array<std::vector<double>*, 4> gws = {
        &g.w_forget, &g.w_input, &g.w_cand, &g.w_output};
    const std::array<std::vector<double>*, 4> gbs = {
        &g.b_forget, &g.b_input, &g.b_cand, &g.b_output};
    const std::array<const std::vector<double>*, 4> ws = {
        &m.w_forget, &m.w_input, &m.w_cand, &m.w_output};

    std::vector<double> dh_prev(h, 0.0);
    for (int k = 0; k < 4; ++k) {
      const std::vector<double>& dpre = *pres[k];
      std::vector<double>& gw = *gws[k];
      std::vector<double>& gb = *gbs[k];
      const std::vector<double>& w = *ws[k];
      for (int r = 0; r < h; ++r) {
        const double d = dpre[r];
        double* grow = gw.data() + static_cast<std::size_t>(r) * (h + 1);
        const double* wrow = w.data() + static_cast<std::size_t>(r) * (h + 1);
        for (int c = 0; c < h; ++c) {
          grow[c] += d * cc.prev_hidden[c];
          dh_prev[c] += wrow[c] * d;
        }
        grow[h] += d * cc.input;
        gb[r] += d;
      }
    }

    for (int r = 0; r < h; ++r) dc[r] *= cc.forget[r];
    dh = std::move(dh_prev);
  }
  return g;
}

double grad_check(const LstmModel& m, std::span<const double> window,
                  double target) {
  std::vector<double> scaled(window.size());
  for (std::size_t k = 0; k < window.size(); ++k)
    scaled[k] = m.scaler.scale(window[k]);
  const double starget = m.scaler.scale(target);

  LstmGrads analytic = lstm_gradients(m, scaled, starget);

  LstmModel probe = m;
  const double h = 1e-5;
  double max_rel = 0.0;
  auto probe_param = [&](double& p, double ga) {
    const double saved = p;
    p = saved + h;
    const double lp = window_loss(probe, scaled, starget);
    p = saved - h;
    const double lm = window_loss(probe, scaled, starget);
    p = saved;
    const double gn = (lp - lm) / (2.0 * h);
    const double rel = std::abs(ga - gn) /
                       std::max(1e-8, std::abs(ga) + std::abs(gn));
    max_rel = std::max(max_rel, rel);
  };

  auto mblocks = blocks(probe);
  auto gblocks = blocks(analytic);
  for (std::size_t b = 0; b < mblocks.size(); ++b)
    for (std::size_t k = 0; k < mblocks[b]->size(); ++k)
      probe_param((*mblocks[b])[k], (*gblocks[b])[k]);
  probe_param(probe.b_head, analytic.b_head);
  return max_rel;
}

LstmModel train(const std::vector<std::vector<double>>& segments,
                const TrainConfig& cfg, std::vector<double>* epoch_loss) {
  cfg.validate();
  if (segments.empty())
    throw std::invalid_argument("no training segments given");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<WindowRef> windows;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    for (double v : seg) {
      check_finite(v, "training value");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (int start = 0;
         start + cfg.window < static_cast<int>(seg.size()); ++start)
      windows.push_back({static_cast<int>(s), start});
  }
  if (windows.empty())
    throw std::invalid_argument("series shorter than window; nothing to train on");

  LstmModel m = init_model(cfg.hidden, cfg.window, cfg.seed);
  m.scaler.min = lo;
  m.scaler.max = hi;
  m.scaler.degenerate = (hi - lo) <= 1e-12 * std::max(1.0, std::abs(hi));

  std::vector<std::vector<double>> scaled(segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    scaled[s].resize(segments[s].size());
    for (std::size_t k = 0; k < segments[s].size(); ++k)
      scaled[s][k] = m.scaler.scale(segments[s][k]);
  }

  SplitMix64 shuffle_rng(mix_seed(cfg.seed, 0x73687566ULL, 0));
  LstmGrads moment1 = LstmGrads::zero(m);
  LstmGrads moment2 = LstmGrads::zero(m);
  long long step = 0;

  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t k = order.size() - 1; k > 0; --k)
      std::swap(order[k], order[shuffle_rng.next_below(k + 1)]);

    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      const WindowRef& ref = windows[idx];
      const std::span<const double> win(scaled[ref.segment].data() + ref.start,
                                        static_cast<std::size_t>(cfg.window));
      const double target = scaled[ref.segment][ref.start + cfg.window];

      double loss = 0.0;
      LstmGrads g = lstm_gradients(m, win, target, &loss);
      if (!std::isfinite(loss))
        throw NumericError("training loss became non-finite at epoch " +
                           std::to_string(epoch));
      loss_sum += loss;

      const double norm = std::sqrt(g.squared_norm());
      if (norm > cfg.clip_norm) g.scale(cfg.clip_norm / norm);

      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto pb = blocks(m);
      auto gb = blocks(g);
      auto m1b = blocks(moment1);
      auto m2b = blocks(moment2);
      auto adam = [&](double& p, double grad, double& m1, double& m2) {
        m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * grad;
        m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * grad * grad;
        p -= cfg.learning_rate * (m1 / c1) / (std::sqrt(m2 / c2) + 1e-8);
      };
      for (std::size_t b = 0; b < pb.size(); ++b)
        for (std::size_t j = 0; j < pb[b]->size(); ++j)
          adam((*pb[b])[j], (*gb[b])[j], (*m1b[b])[j], (*m2b[b])[j]);
      adam(m.b_head, g.b_head, moment1.b_head, moment2.b_head);
    }
    if (epoch_loss)
      epoch_loss->push_back(loss_sum / static_cast<double>(order.size()));
  }
  return m;
}

LstmModel train(const Series& series, const TrainConfig& cfg,
                std::vector<double>* epoch_loss) {
  return train(std::vector<std::vector<double>>{series.values}, cfg,
               epoch_loss);
}

double predict_next(const LstmModel& m, std::span<const double> window) {
  if (static_cast<int>(window.size()) != m.window)
    throw std::invalid_argument("expected window of " +
                                std::to_string(m.window) + " values, got " +
                                std::to_string(window.size()));
  std::vector<double> scaled(window.size());
  for (std::size_t k = 0; k < window.size(); ++k) {
    check_finite(window[k], "window value");
    scaled[k] = m.scaler.scale(window[k]);
  }
  const double out = m.scaler.unscale(forward_window(m, scaled));
  check_finite(out, "prediction");
  return out;
}

std::vector<double> rolling_forecast(const LstmModel& m,
                                     std::span<const double> values, int from,
                                     int to) {
  if (from < m.window || to >= static_cast<int>(values.size()) || from > to)
    throw std::invalid_argument("rolling forecast range out of bounds");
  std::vector<double> out;
  out.reserve(to - from + 1);
  for (int r = from; r <= to; ++r)
    out.push_back(predict_next(m, values.subspan(r - m.window, m.window)));
  return out;
}

double mape(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size() || actual.empty())
    throw std::invalid_argument("mape needs equal-length non-empty inputs");
  double acc = 0.0;
  int counted = 0;
  for (std::size_t k = 0; k < actual.size(); ++k) {
    if (std::abs(actual[k]) < 1e-12) continue;
    acc += std::abs(actual[k] - predicted[k]) / std::abs(actual[k]);
    ++counted;
  }
  return counted ? 100.0 * acc / counted : 0.0;
}

}  // namespace hexlb
