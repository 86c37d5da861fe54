#pragma once

#include "attackcast/series.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace attackcast {

enum class CellKind { GRU, LSTM };
std::string to_string(CellKind kind);
CellKind parse_cell_kind(const std::string& text);

struct RnnConfig {
    CellKind cell = CellKind::GRU;
    int input_dim = 1; // 1 + number of exogenous signals
    int hidden_dim = 16;
    int lookback = 7; // days of history per training window
    int epochs = 200;
    double learning_rate = 1e-2;
    std::uint64_t seed = 0;
    double validation_fraction = 0.2;
    int patience = 10; // early-stopping patience on holdout MSE
};

/// Update gate z = sigma(W_z x + U_z h + b_z), reset gate r likewise, and
/// candidate hh = tanh(W [r.h, x] + b_h); h' = (1-z) h + z hh. The printed
/// recurrences omit gate biases; b_z and b_r are included here as in the
/// standard formulation.
struct GruWeights {
    Eigen::MatrixXd W_z, U_z, W_r, U_r, W; // W is hidden x (hidden + input)
    Eigen::VectorXd b_z, b_r, b_h;
    Eigen::RowVectorXd W_out; // affine readout of the final hidden state
    double b_out = 0.0;

    static GruWeights zeros(int hidden, int input);
    int hidden() const { return static_cast<int>(W_z.rows()); }
    int input() const { return static_cast<int>(W_z.cols()); }
};

/// Four-gate cell over the concatenation [h, x] with cell state
/// C' = f.C + i.tanh(W_c [h,x] + b_c) and h' = o.tanh(C').
struct LstmWeights {
    Eigen::MatrixXd W_f, W_i, W_o, W_c; // hidden x (hidden + input)
    Eigen::VectorXd b_f, b_i, b_o, b_c;
    Eigen::RowVectorXd W_out;
    double b_out = 0.0;

    static LstmWeights zeros(int hidden, int input);
    int hidden() const { return static_cast<int>(W_f.rows()); }
    int input() const { return static_cast<int>(W_f.cols()) - hidden(); }
};

using RnnWeights = std::variant<GruWeights, LstmWeights>;

struct GruForward {
    Eigen::MatrixXd h_seq; // one row per step
    double prediction;
};
GruForward gru_forward(const GruWeights& w, const Eigen::MatrixXd& x_seq,
                       const Eigen::VectorXd& h0);

struct LstmForward {
    Eigen::MatrixXd h_seq;
    Eigen::MatrixXd c_seq;
    double prediction;
};
LstmForward lstm_forward(const LstmWeights& w, const Eigen::MatrixXd& x_seq,
                         const Eigen::VectorXd& h0, const Eigen::VectorXd& c0);

struct TrainSample {
    Eigen::MatrixXd x_seq; // lookback x input_dim
    double target;
};

/// Exact gradients of the batch mean squared error with respect to every
/// weight and bias, via backpropagation through time. Zero initial states.
struct BpttResult {
    RnnWeights gradients;
    double loss;
};
BpttResult bptt_gradients(const RnnWeights& weights, std::span<const TrainSample> batch);

// stable flatten order used by training, serialization and gradient checks
Eigen::VectorXd flatten(const RnnWeights& weights);
RnnWeights unflatten(CellKind kind, const Eigen::VectorXd& flat, int hidden, int input);

struct Scaling {
    double mean = 0.0;
    double sd = 1.0;
};

struct RnnModel {
    RnnConfig config;
    RnnWeights weights;
    Scaling y_scale;
    std::vector<Scaling> exog_scales;
    std::vector<std::string> exog_ids;
    std::vector<double> train_curve; // batch MSE per epoch
    std::vector<double> val_curve;   // holdout MSE per epoch (empty when no holdout)
    int best_epoch = 0;
};

struct SampleSet {
    std::vector<TrainSample> train;
    std::vector<TrainSample> val; // most recent windows
    Scaling y_scale;
    std::vector<Scaling> exog_scales;
};

/// Sliding z-scored windows: inputs are the lookback days before the target
/// day (count joined with exogenous rows), target is the next day's count.
SampleSet build_samples(const RnnConfig& config, const DailySeries& y,
                        const std::vector<DailySeries>& exog);

/// Full-batch Adam with early stopping on holdout MSE; weight init is seeded
/// uniform in [-0.08, 0.08], so equal seeds give bitwise-equal models.
RnnModel train_rnn(const RnnConfig& config, const DailySeries& y,
                   const std::vector<DailySeries>& exog);

/// z-space prediction for one feature window.
double forward_prediction(const RnnModel& model, const Eigen::MatrixXd& x_seq);

/// Recursive prediction: the model's own outputs fill the gap and feed later
/// windows; outputs are un-scaled to count space and clamped at zero.
DailySeries predict_rnn(const RnnModel& model, const DailySeries& y_history,
                        const std::vector<DailySeries>& exog_full, int gap_len, int horizon);

nlohmann::json rnn_to_json(const RnnModel& model);
RnnModel rnn_from_json(const nlohmann::json& j);

} // namespace attackcast
