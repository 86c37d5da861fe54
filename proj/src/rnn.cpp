#include "attackcast/rnn.hpp"

#include "attackcast/errors.hpp"
#include "attackcast/optim.hpp"
#include "attackcast/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace attackcast {

namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

VectorXd sigmoid(const VectorXd& v) {
    return (1.0 / (1.0 + (-v.array()).exp())).matrix();
}

void check_input(const MatrixXd& x_seq, int input, const char* where) {
    if (x_seq.cols() != input) {
        throw DimensionError(std::string(where) + ": input dimension " +
                             std::to_string(x_seq.cols()) + " != " + std::to_string(input));
    }
    if (x_seq.rows() < 1) {
        throw DimensionError(std::string(where) + ": empty sequence");
    }
}

struct GruTrace {
    std::vector<VectorXd> z, r, hh, u, h;
};

VectorXd gru_step(const GruWeights& w, const VectorXd& x, const VectorXd& h_prev,
                  GruTrace* trace) {
    const int hidden = w.hidden();
    const VectorXd z = sigmoid(w.W_z * x + w.U_z * h_prev + w.b_z);
    const VectorXd r = sigmoid(w.W_r * x + w.U_r * h_prev + w.b_r);
    VectorXd u(hidden + static_cast<int>(x.size()));
    u.head(hidden) = r.cwiseProduct(h_prev);
    u.tail(x.size()) = x;
    const VectorXd hh = (w.W * u + w.b_h).array().tanh().matrix();
    const VectorXd h = (1.0 - z.array()).matrix().cwiseProduct(h_prev) + z.cwiseProduct(hh);
    if (trace != nullptr) {
        trace->z.push_back(z);
        trace->r.push_back(r);
        trace->hh.push_back(hh);
        trace->u.push_back(u);
        trace->h.push_back(h);
    }
    return h;
}

struct LstmTrace {
    std::vector<VectorXd> f, i, o, cc, c, tanh_c, u, h;
};

std::pair<VectorXd, VectorXd> lstm_step(const LstmWeights& w, const VectorXd& x,
                                        const VectorXd& h_prev, const VectorXd& c_prev,
                                        LstmTrace* trace) {
    const int hidden = w.hidden();
    VectorXd u(hidden + static_cast<int>(x.size()));
    u.head(hidden) = h_prev;
    u.tail(x.size()) = x;
    const VectorXd f = sigmoid(w.W_f * u + w.b_f);
    const VectorXd i = sigmoid(w.W_i * u + w.b_i);
    const VectorXd o = sigmoid(w.W_o * u + w.b_o);
    const VectorXd cc = (w.W_c * u + w.b_c).array().tanh().matrix();
    const VectorXd c = f.cwiseProduct(c_prev) + i.cwiseProduct(cc);
    const VectorXd tanh_c = c.array().tanh().matrix();
    const VectorXd h = o.cwiseProduct(tanh_c);
    if (trace != nullptr) {
        trace->f.push_back(f);
        trace->i.push_back(i);
        trace->o.push_back(o);
        trace->cc.push_back(cc);
        trace->c.push_back(c);
        trace->tanh_c.push_back(tanh_c);
        trace->u.push_back(u);
        trace->h.push_back(h);
    }
    return {h, c};
}

// accumulates one sample's gradient contribution, weighted by dpred
void gru_backward(const GruWeights& w, const MatrixXd& x_seq, const GruTrace& trace,
                  const VectorXd& h0, double dpred, GruWeights& grad) {
    const int hidden = w.hidden();
    const auto steps = static_cast<int>(x_seq.rows());

    grad.W_out += dpred * trace.h.back().transpose();
    grad.b_out += dpred;

    VectorXd dh = w.W_out.transpose() * dpred;
    for (int t = steps - 1; t >= 0; --t) {
        const VectorXd& h_prev = t > 0 ? trace.h[static_cast<std::size_t>(t - 1)] : h0;
        const VectorXd& z = trace.z[static_cast<std::size_t>(t)];
        const VectorXd& r = trace.r[static_cast<std::size_t>(t)];
        const VectorXd& hh = trace.hh[static_cast<std::size_t>(t)];
        const VectorXd& u = trace.u[static_cast<std::size_t>(t)];
        const VectorXd x = x_seq.row(t).transpose();

        const VectorXd dz = dh.cwiseProduct(hh - h_prev);
        const VectorXd da_z = dz.cwiseProduct(z).cwiseProduct((1.0 - z.array()).matrix());
        const VectorXd dhh = dh.cwiseProduct(z);
        const VectorXd da_h = dhh.cwiseProduct((1.0 - hh.array().square()).matrix());

        grad.W += da_h * u.transpose();
        grad.b_h += da_h;

        const VectorXd du = w.W.transpose() * da_h;
        const VectorXd du_rh = du.head(hidden);
        const VectorXd dr = du_rh.cwiseProduct(h_prev);
        const VectorXd da_r = dr.cwiseProduct(r).cwiseProduct((1.0 - r.array()).matrix());

        grad.W_z += da_z * x.transpose();
        grad.U_z += da_z * h_prev.transpose();
        grad.b_z += da_z;
        grad.W_r += da_r * x.transpose();
        grad.U_r += da_r * h_prev.transpose();
        grad.b_r += da_r;

        dh = dh.cwiseProduct((1.0 - z.array()).matrix()) + w.U_z.transpose() * da_z +
             w.U_r.transpose() * da_r + du_rh.cwiseProduct(r);
    }
}

void lstm_backward(const LstmWeights& w, const MatrixXd& x_seq, const LstmTrace& trace,
                   const VectorXd& c0, double dpred, LstmWeights& grad) {
    const int hidden = w.hidden();
    const auto steps = static_cast<int>(x_seq.rows());

    grad.W_out += dpred * trace.h.back().transpose();
    grad.b_out += dpred;

    VectorXd dh = w.W_out.transpose() * dpred;
    VectorXd dc = VectorXd::Zero(hidden);
    for (int t = steps - 1; t >= 0; --t) {
        const VectorXd& c_prev = t > 0 ? trace.c[static_cast<std::size_t>(t - 1)] : c0;
        const VectorXd& f = trace.f[static_cast<std::size_t>(t)];
        const VectorXd& i = trace.i[static_cast<std::size_t>(t)];
        const VectorXd& o = trace.o[static_cast<std::size_t>(t)];
        const VectorXd& cc = trace.cc[static_cast<std::size_t>(t)];
        const VectorXd& tanh_c = trace.tanh_c[static_cast<std::size_t>(t)];
        const VectorXd& u = trace.u[static_cast<std::size_t>(t)];

        const VectorXd do_ = dh.cwiseProduct(tanh_c);
        const VectorXd da_o = do_.cwiseProduct(o).cwiseProduct((1.0 - o.array()).matrix());
        dc += dh.cwiseProduct(o).cwiseProduct((1.0 - tanh_c.array().square()).matrix());

        const VectorXd df = dc.cwiseProduct(c_prev);
        const VectorXd da_f = df.cwiseProduct(f).cwiseProduct((1.0 - f.array()).matrix());
        const VectorXd di = dc.cwiseProduct(cc);
        const VectorXd da_i = di.cwiseProduct(i).cwiseProduct((1.0 - i.array()).matrix());
        const VectorXd dcc = dc.cwiseProduct(i);
        const VectorXd da_c = dcc.cwiseProduct((1.0 - cc.array().square()).matrix());

        grad.W_f += da_f * u.transpose();
        grad.W_i += da_i * u.transpose();
        grad.W_o += da_o * u.transpose();
        grad.W_c += da_c * u.transpose();
        grad.b_f += da_f;
        grad.b_i += da_i;
        grad.b_o += da_o;
        grad.b_c += da_c;

        const VectorXd du = w.W_f.transpose() * da_f + w.W_i.transpose() * da_i +
                            w.W_o.transpose() * da_o + w.W_c.transpose() * da_c;
        dh = du.head(hidden);
        dc = dc.cwiseProduct(f);
    }
}

// tensors in the stable flatten order (b_out handled separately)
auto tensor_refs(GruWeights& w) {
    return std::tie(w.W_z, w.U_z, w.W_r, w.U_r, w.W, w.b_z, w.b_r, w.b_h, w.W_out);
}
auto tensor_refs(const GruWeights& w) {
    return std::tie(w.W_z, w.U_z, w.W_r, w.U_r, w.W, w.b_z, w.b_r, w.b_h, w.W_out);
}
auto tensor_refs(LstmWeights& w) {
    return std::tie(w.W_f, w.W_i, w.W_o, w.W_c, w.b_f, w.b_i, w.b_o, w.b_c, w.W_out);
}
auto tensor_refs(const LstmWeights& w) {
    return std::tie(w.W_f, w.W_i, w.W_o, w.W_c, w.b_f, w.b_i, w.b_o, w.b_c, w.W_out);
}

template <typename W>
Eigen::VectorXd flatten_weights(const W& weights) {
    Eigen::Index total = 1; // b_out
    std::apply([&total](const auto&... m) { ((total += m.size()), ...); }, tensor_refs(weights));
    VectorXd flat(total);
    Eigen::Index pos = 0;
    std::apply(
        [&flat, &pos](const auto&... m) {
            ((flat.segment(pos, m.size()) = Eigen::Map<const VectorXd>(m.data(), m.size()),
              pos += m.size()),
             ...);
        },
        tensor_refs(weights));
    flat[pos] = weights.b_out;
    return flat;
}

template <typename W>
void unflatten_weights(W& weights, const VectorXd& flat) {
    Eigen::Index total = 1;
    std::apply([&total](const auto&... m) { ((total += m.size()), ...); }, tensor_refs(weights));
    if (total != flat.size()) {
        throw DimensionError("unflatten: expected " + std::to_string(total) +
                             " parameters, got " + std::to_string(flat.size()));
    }
    Eigen::Index pos = 0;
    std::apply(
        [&flat, &pos](auto&... m) {
            ((Eigen::Map<VectorXd>(m.data(), m.size()) = flat.segment(pos, m.size()),
              pos += m.size()),
             ...);
        },
        tensor_refs(weights));
    weights.b_out = flat[pos];
}

double z_score(double v, const Scaling& s) { return (v - s.mean) / s.sd; }
double un_z(double z, const Scaling& s) { return z * s.sd + s.mean; }

Scaling scaling_of(std::span<const double> v) {
    double sum = 0.0, sum2 = 0.0;
    for (const double x : v) {
        sum += x;
        sum2 += x * x;
    }
    const double n = static_cast<double>(v.size());
    const double mean = sum / n;
    const double var = std::max(sum2 / n - mean * mean, 0.0);
    const double sd = std::sqrt(var);
    return Scaling{mean, sd > 1e-12 ? sd : 1.0};
}

} // namespace

std::string to_string(CellKind kind) { return kind == CellKind::GRU ? "gru" : "lstm"; }

CellKind parse_cell_kind(const std::string& text) {
    if (text == "gru") return CellKind::GRU;
    if (text == "lstm") return CellKind::LSTM;
    throw ConfigError("unknown cell kind '" + text + "'");
}

GruWeights GruWeights::zeros(int hidden, int input) {
    GruWeights w;
    w.W_z = MatrixXd::Zero(hidden, input);
    w.U_z = MatrixXd::Zero(hidden, hidden);
    w.W_r = MatrixXd::Zero(hidden, input);
    w.U_r = MatrixXd::Zero(hidden, hidden);
    w.W = MatrixXd::Zero(hidden, hidden + input);
    w.b_z = VectorXd::Zero(hidden);
    w.b_r = VectorXd::Zero(hidden);
    w.b_h = VectorXd::Zero(hidden);
    w.W_out = RowVectorXd::Zero(hidden);
    w.b_out = 0.0;
    return w;
}

LstmWeights LstmWeights::zeros(int hidden, int input) {
    LstmWeights w;
    w.W_f = MatrixXd::Zero(hidden, hidden + input);
    w.W_i = MatrixXd::Zero(hidden, hidden + input);
    w.W_o = MatrixXd::Zero(hidden, hidden + input);
    w.W_c = MatrixXd::Zero(hidden, hidden + input);
    w.b_f = VectorXd::Zero(hidden);
    w.b_i = VectorXd::Zero(hidden);
    w.b_o = VectorXd::Zero(hidden);
    w.b_c = VectorXd::Zero(hidden);
    w.W_out = RowVectorXd::Zero(hidden);
    w.b_out = 0.0;
    return w;
}

GruForward gru_forward(const GruWeights& w, const MatrixXd& x_seq, const VectorXd& h0) {
    check_input(x_seq, w.input(), "gru_forward");
    if (h0.size() != w.hidden()) {
        throw DimensionError("gru_forward: bad h0 dimension");
    }
    GruForward out;
    out.h_seq.resize(x_seq.rows(), w.hidden());
    VectorXd h = h0;
    for (Eigen::Index t = 0; t < x_seq.rows(); ++t) {
        h = gru_step(w, x_seq.row(t).transpose(), h, nullptr);
        out.h_seq.row(t) = h.transpose();
    }
    out.prediction = w.W_out.dot(h) + w.b_out;
    return out;
}

LstmForward lstm_forward(const LstmWeights& w, const MatrixXd& x_seq, const VectorXd& h0,
                         const VectorXd& c0) {
    check_input(x_seq, w.input(), "lstm_forward");
    if (h0.size() != w.hidden() || c0.size() != w.hidden()) {
        throw DimensionError("lstm_forward: bad state dimension");
    }
    LstmForward out;
    out.h_seq.resize(x_seq.rows(), w.hidden());
    out.c_seq.resize(x_seq.rows(), w.hidden());
    VectorXd h = h0, c = c0;
    for (Eigen::Index t = 0; t < x_seq.rows(); ++t) {
        std::tie(h, c) = lstm_step(w, x_seq.row(t).transpose(), h, c, nullptr);
        out.h_seq.row(t) = h.transpose();
        out.c_seq.row(t) = c.transpose();
    }
    out.prediction = w.W_out.dot(h) + w.b_out;
    return out;
}

BpttResult bptt_gradients(const RnnWeights& weights, std::span<const TrainSample> batch) {
    if (batch.empty()) {
        throw LengthError("bptt_gradients: empty batch");
    }
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    BpttResult result;
    result.loss = 0.0;

    if (std::holds_alternative<GruWeights>(weights)) {
        const auto& w = std::get<GruWeights>(weights);
        GruWeights grad = GruWeights::zeros(w.hidden(), w.input());
        const VectorXd h0 = VectorXd::Zero(w.hidden());
        for (const auto& sample : batch) {
            check_input(sample.x_seq, w.input(), "bptt_gradients");
            GruTrace trace;
            VectorXd h = h0;
            for (Eigen::Index t = 0; t < sample.x_seq.rows(); ++t) {
                h = gru_step(w, sample.x_seq.row(t).transpose(), h, &trace);
            }
            const double pred = w.W_out.dot(h) + w.b_out;
            const double err = pred - sample.target;
            result.loss += err * err * inv_b;
            gru_backward(w, sample.x_seq, trace, h0, 2.0 * err * inv_b, grad);
        }
        result.gradients = std::move(grad);
    } else {
        const auto& w = std::get<LstmWeights>(weights);
        LstmWeights grad = LstmWeights::zeros(w.hidden(), w.input());
        const VectorXd zero = VectorXd::Zero(w.hidden());
        for (const auto& sample : batch) {
            check_input(sample.x_seq, w.input(), "bptt_gradients");
            LstmTrace trace;
            VectorXd h = zero, c = zero;
            for (Eigen::Index t = 0; t < sample.x_seq.rows(); ++t) {
                std::tie(h, c) = lstm_step(w, sample.x_seq.row(t).transpose(), h, c, &trace);
            }
            const double pred = w.W_out.dot(h) + w.b_out;
            const double err = pred - sample.target;
            result.loss += err * err * inv_b;
            lstm_backward(w, sample.x_seq, trace, zero, 2.0 * err * inv_b, grad);
        }
        result.gradients = std::move(grad);
    }
    return result;
}

Eigen::VectorXd flatten(const RnnWeights& weights) {
    if (std::holds_alternative<GruWeights>(weights)) {
        return flatten_weights(std::get<GruWeights>(weights));
    }
    return flatten_weights(std::get<LstmWeights>(weights));
}

RnnWeights unflatten(CellKind kind, const VectorXd& flat, int hidden, int input) {
    if (kind == CellKind::GRU) {
        GruWeights w = GruWeights::zeros(hidden, input);
        unflatten_weights(w, flat);
        return w;
    }
    LstmWeights w = LstmWeights::zeros(hidden, input);
    unflatten_weights(w, flat);
    return w;
}

SampleSet build_samples(const RnnConfig& config, const DailySeries& y,
                        const std::vector<DailySeries>& exog) {
    const int lookback = config.lookback;
    const auto n = static_cast<int>(y.size());
    if (n < lookback + 10) {
        throw TooShortError("build_samples: need at least " + std::to_string(lookback + 10) +
                            " days, got " + std::to_string(n));
    }
    if (config.validation_fraction < 0.0 || config.validation_fraction >= 0.5) {
        throw ConfigError("validation_fraction must be in [0, 0.5)");
    }

    SampleSet set;
    set.y_scale = scaling_of(y.values());
    for (const auto& sig : exog) {
        for (DayIndex day = y.start_day(); day < y.end_day(); ++day) {
            if (!sig.covers(day)) {
                throw CoverageError("build_samples: exogenous signal missing day " +
                                    format_date(day));
            }
        }
        std::vector<double> window;
        window.reserve(y.size() - 1);
        for (DayIndex day = y.start_day(); day < y.end_day(); ++day) {
            window.push_back(sig.value_on(day));
        }
        set.exog_scales.push_back(scaling_of(window));
    }

    const int input_dim = 1 + static_cast<int>(exog.size());
    std::vector<TrainSample> samples;
    for (int t = lookback; t < n; ++t) {
        TrainSample sample;
        sample.x_seq.resize(lookback, input_dim);
        for (int i = 0; i < lookback; ++i) {
            const int idx = t - lookback + i;
            const DayIndex day = y.start_day() + idx;
            sample.x_seq(i, 0) = z_score(y[static_cast<std::size_t>(idx)], set.y_scale);
            for (std::size_t k = 0; k < exog.size(); ++k) {
                sample.x_seq(i, 1 + static_cast<int>(k)) =
                    z_score(exog[k].value_on(day), set.exog_scales[k]);
            }
        }
        sample.target = z_score(y[static_cast<std::size_t>(t)], set.y_scale);
        samples.push_back(std::move(sample));
    }

    const auto n_val = static_cast<std::size_t>(config.validation_fraction *
                                                static_cast<double>(samples.size()));
    set.train.assign(samples.begin(), samples.end() - static_cast<std::ptrdiff_t>(n_val));
    set.val.assign(samples.end() - static_cast<std::ptrdiff_t>(n_val), samples.end());
    return set;
}

namespace {

double batch_mse(const RnnWeights& weights, std::span<const TrainSample> batch) {
    double loss = 0.0;
    if (std::holds_alternative<GruWeights>(weights)) {
        const auto& w = std::get<GruWeights>(weights);
        const VectorXd h0 = VectorXd::Zero(w.hidden());
        for (const auto& s : batch) {
            const double err = gru_forward(w, s.x_seq, h0).prediction - s.target;
            loss += err * err;
        }
    } else {
        const auto& w = std::get<LstmWeights>(weights);
        const VectorXd zero = VectorXd::Zero(w.hidden());
        for (const auto& s : batch) {
            const double err = lstm_forward(w, s.x_seq, zero, zero).prediction - s.target;
            loss += err * err;
        }
    }
    return loss / static_cast<double>(batch.size());
}

} // namespace

RnnModel train_rnn(const RnnConfig& config, const DailySeries& y,
                   const std::vector<DailySeries>& exog) {
    if (config.hidden_dim < 1 || config.lookback < 1) {
        throw ConfigError("train_rnn: hidden_dim and lookback must be >= 1");
    }
    RnnModel model;
    model.config = config;
    model.config.input_dim = 1 + static_cast<int>(exog.size());

    SampleSet set = build_samples(model.config, y, exog);
    model.y_scale = set.y_scale;
    model.exog_scales = set.exog_scales;

    // seeded flat init in the stable flatten order
    const RnnWeights zero_shape =
        config.cell == CellKind::GRU
            ? RnnWeights(GruWeights::zeros(config.hidden_dim, model.config.input_dim))
            : RnnWeights(LstmWeights::zeros(config.hidden_dim, model.config.input_dim));
    VectorXd params = flatten(zero_shape);
    Rng rng(config.seed);
    for (Eigen::Index i = 0; i < params.size(); ++i) params[i] = rng.uniform(-0.08, 0.08);
    model.weights = unflatten(config.cell, params, config.hidden_dim, model.config.input_dim);

    if (config.epochs <= 0 || set.train.empty()) {
        return model;
    }

    AdamState adam = AdamState::init(params.size(), config.learning_rate);
    VectorXd best_params = params;
    double best_val = std::numeric_limits<double>::infinity();
    int since_best = 0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const RnnWeights weights =
            unflatten(config.cell, params, config.hidden_dim, model.config.input_dim);
        const BpttResult bptt = bptt_gradients(weights, set.train);
        model.train_curve.push_back(bptt.loss);

        std::tie(adam, params) = adam_step(adam, params, flatten(bptt.gradients));

        if (!set.val.empty()) {
            const RnnWeights updated =
                unflatten(config.cell, params, config.hidden_dim, model.config.input_dim);
            const double val = batch_mse(updated, set.val);
            model.val_curve.push_back(val);
            if (val < best_val) {
                best_val = val;
                best_params = params;
                model.best_epoch = epoch;
                since_best = 0;
            } else if (++since_best >= config.patience) {
                break;
            }
        } else {
            best_params = params;
            model.best_epoch = epoch;
        }
    }

    model.weights =
        unflatten(config.cell, best_params, config.hidden_dim, model.config.input_dim);
    return model;
}

double forward_prediction(const RnnModel& model, const MatrixXd& x_seq) {
    if (std::holds_alternative<GruWeights>(model.weights)) {
        const auto& w = std::get<GruWeights>(model.weights);
        return gru_forward(w, x_seq, VectorXd::Zero(w.hidden())).prediction;
    }
    const auto& w = std::get<LstmWeights>(model.weights);
    return lstm_forward(w, x_seq, VectorXd::Zero(w.hidden()), VectorXd::Zero(w.hidden()))
        .prediction;
}

DailySeries predict_rnn(const RnnModel& model, const DailySeries& y_history,
                        const std::vector<DailySeries>& exog_full, int gap_len, int horizon) {
    if (gap_len < 0 || horizon < 1) {
        throw LengthError("predict_rnn: need gap_len >= 0 and horizon >= 1");
    }
    const int lookback = model.config.lookback;
    if (static_cast<int>(y_history.size()) < lookback) {
        throw TooShortError("predict_rnn: history shorter than the lookback window");
    }
    if (exog_full.size() != model.exog_scales.size()) {
        throw DimensionError("predict_rnn: model expects " +
                             std::to_string(model.exog_scales.size()) + " exogenous signals");
    }
    const int input_dim = model.config.input_dim;

    const auto feature_row = [&](DayIndex day, double y_z) {
        Eigen::RowVectorXd row(input_dim);
        row[0] = y_z;
        for (std::size_t k = 0; k < exog_full.size(); ++k) {
            if (!exog_full[k].covers(day)) {
                throw CoverageError("predict_rnn: exogenous signal " +
                                    (model.exog_ids.empty() ? std::to_string(k)
                                                            : model.exog_ids[k]) +
                                    " missing day " + format_date(day));
            }
            row[1 + static_cast<int>(k)] = z_score(exog_full[k].value_on(day),
                                                   model.exog_scales[k]);
        }
        return row;
    };

    // rolling window of the last `lookback` feature rows
    MatrixXd window(lookback, input_dim);
    for (int i = 0; i < lookback; ++i) {
        const DayIndex day = y_history.end_day() - lookback + 1 + i;
        window.row(i) = feature_row(day, z_score(y_history.value_on(day), model.y_scale));
    }

    const int steps = gap_len + horizon;
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        const DayIndex day = y_history.end_day() + 1 + s;
        const double pred_z = forward_prediction(model, window);
        levels.push_back(un_z(pred_z, model.y_scale));
        // slide the window: predictions feed back unclamped
        window.topRows(lookback - 1) = window.bottomRows(lookback - 1).eval();
        window.row(lookback - 1) = feature_row(day, pred_z);
    }

    std::vector<double> out(levels.begin() + gap_len, levels.end());
    for (double& v : out) v = std::max(v, 0.0);
    return DailySeries(y_history.end_day() + 1 + gap_len, std::move(out),
                       SeriesKind::SignalValue);
}

nlohmann::json rnn_to_json(const RnnModel& model) {
    nlohmann::json j;
    j["type"] = "rnn";
    j["cell"] = to_string(model.config.cell);
    j["input_dim"] = model.config.input_dim;
    j["hidden_dim"] = model.config.hidden_dim;
    j["lookback"] = model.config.lookback;
    j["epochs"] = model.config.epochs;
    j["learning_rate"] = model.config.learning_rate;
    j["seed"] = model.config.seed;
    j["validation_fraction"] = model.config.validation_fraction;
    j["patience"] = model.config.patience;
    const VectorXd flat = flatten(model.weights);
    j["weights"] = std::vector<double>(flat.begin(), flat.end());
    j["y_scale"] = {{"mean", model.y_scale.mean}, {"sd", model.y_scale.sd}};
    nlohmann::json scales = nlohmann::json::array();
    for (const auto& s : model.exog_scales) scales.push_back({{"mean", s.mean}, {"sd", s.sd}});
    j["exog_scales"] = std::move(scales);
    j["exog_ids"] = model.exog_ids;
    j["train_curve"] = model.train_curve;
    j["val_curve"] = model.val_curve;
    j["best_epoch"] = model.best_epoch;
    return j;
}

RnnModel rnn_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "rnn") {
        throw ParseError("not an rnn model document", 0);
    }
    RnnModel model;
    model.config.cell = parse_cell_kind(j.at("cell").get<std::string>());
    model.config.input_dim = j.at("input_dim").get<int>();
    model.config.hidden_dim = j.at("hidden_dim").get<int>();
    model.config.lookback = j.at("lookback").get<int>();
    model.config.epochs = j.at("epochs").get<int>();
    model.config.learning_rate = j.at("learning_rate").get<double>();
    model.config.seed = j.at("seed").get<std::uint64_t>();
    model.config.validation_fraction = j.at("validation_fraction").get<double>();
    model.config.patience = j.at("patience").get<int>();
    const auto flat_vec = j.at("weights").get<std::vector<double>>();
    const VectorXd flat =
        Eigen::Map<const VectorXd>(flat_vec.data(), static_cast<Eigen::Index>(flat_vec.size()));
    model.weights =
        unflatten(model.config.cell, flat, model.config.hidden_dim, model.config.input_dim);
    model.y_scale = Scaling{j.at("y_scale").at("mean").get<double>(),
                            j.at("y_scale").at("sd").get<double>()};
    for (const auto& s : j.at("exog_scales")) {
        model.exog_scales.push_back(
            Scaling{s.at("mean").get<double>(), s.at("sd").get<double>()});
    }
    model.exog_ids = j.at("exog_ids").get<std::vector<std::string>>();
    model.train_curve = j.at("train_curve").get<std::vector<double>>();
    model.val_curve = j.at("val_curve").get<std::vector<double>>();
    model.best_epoch = j.at("best_epoch").get<int>();
    return model;
}

} // namespace attackcast
