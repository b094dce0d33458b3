#include "uavsim/neural.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavsim {

Mlp Mlp::init(const std::vector<int>& layer_sizes, Rng& rng) {
    if (layer_sizes.size() < 2) {
        throw std::invalid_argument("Mlp::init: need at least input and output sizes");
    }
    Mlp net;
    net.sizes = layer_sizes;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        std::vector<double> w(static_cast<std::size_t>(fan_in) * fan_out);
        for (double& v : w) v = rng.uniform(-bound, bound);
        net.weights.push_back(std::move(w));
        net.biases.emplace_back(fan_out, 0.0);
    }
    return net;
}

void MlpScratch::resize_for(const Mlp& net) {
    const std::size_t layers = net.weights.size();
    pre.resize(layers);
    delta.resize(layers);
    act.resize(layers + 1);
    act[0].resize(net.sizes[0]);
    for (std::size_t l = 0; l < layers; ++l) {
        pre[l].resize(net.sizes[l + 1]);
        delta[l].resize(net.sizes[l + 1]);
        act[l + 1].resize(net.sizes[l + 1]);
    }
}

void forward_into(const Mlp& net, const std::vector<double>& input, MlpScratch& scratch) {
    if (static_cast<int>(input.size()) != net.input_size()) {
        throw std::invalid_argument("forward: input length does not match the network");
    }
    scratch.resize_for(net);
    scratch.act[0] = input;
    const int layers = net.layer_count();
    for (int l = 0; l < layers; ++l) {
        const int rows = net.sizes[l + 1];
        const int cols = net.sizes[l];
        const double* w = net.weights[l].data();
        const double* x = scratch.act[l].data();
        for (int r = 0; r < rows; ++r) {
            double acc = net.biases[l][r];
            const double* wr = w + static_cast<std::size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) acc += wr[c] * x[c];
            scratch.pre[l][r] = acc;
            scratch.act[l + 1][r] = (l + 1 < layers) ? std::max(acc, 0.0) : acc;
        }
    }
}

std::vector<double> Mlp::forward(const std::vector<double>& input) const {
    MlpScratch scratch;
    forward_into(*this, input, scratch);
    return scratch.act.back();
}

Gradients Gradients::zeros_like(const Mlp& net) {
    Gradients g;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        g.weights.emplace_back(net.weights[l].size(), 0.0);
        g.biases.emplace_back(net.biases[l].size(), 0.0);
    }
    return g;
}

void Gradients::clear() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
}

void Gradients::scale(double factor) {
    for (auto& w : weights)
        for (double& v : w) v *= factor;
    for (auto& b : biases)
        for (double& v : b) v *= factor;
}

void backward_accumulate(const Mlp& net, const std::vector<double>& input, int action,
                         double target, MlpScratch& scratch, Gradients& grads) {
    forward_into(net, input, scratch);
    const int layers = net.layer_count();
    const int last = layers - 1;

    // d/dq of (target - q[action])^2, zero everywhere else.
    std::fill(scratch.delta[last].begin(), scratch.delta[last].end(), 0.0);
    scratch.delta[last][action] = 2.0 * (scratch.act[layers][action] - target);

    for (int l = last; l >= 0; --l) {
        const int rows = net.sizes[l + 1];
        const int cols = net.sizes[l];
        const double* x = scratch.act[l].data();
        double* gw = grads.weights[l].data();
        for (int r = 0; r < rows; ++r) {
            const double d = scratch.delta[l][r];
            if (d == 0.0) continue;
            grads.biases[l][r] += d;
            double* gwr = gw + static_cast<std::size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) gwr[c] += d * x[c];
        }
        if (l > 0) {
            const double* w = net.weights[l].data();
            for (int c = 0; c < cols; ++c) scratch.delta[l - 1][c] = 0.0;
            for (int r = 0; r < rows; ++r) {
                const double d = scratch.delta[l][r];
                if (d == 0.0) continue;
                const double* wr = w + static_cast<std::size_t>(r) * cols;
                for (int c = 0; c < cols; ++c) scratch.delta[l - 1][c] += d * wr[c];
            }
            for (int c = 0; c < cols; ++c) {
                if (scratch.pre[l - 1][c] <= 0.0) scratch.delta[l - 1][c] = 0.0;
            }
        }
    }
}

Gradients backward(const Mlp& net, const std::vector<double>& input, int action, double target) {
    Gradients g = Gradients::zeros_like(net);
    MlpScratch scratch;
    backward_accumulate(net, input, action, target, scratch, g);
    return g;
}

AdamState AdamState::like(const Mlp& net, double lr) {
    AdamState s;
    s.lr = lr;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        s.m_w.emplace_back(net.weights[l].size(), 0.0);
        s.v_w.emplace_back(net.weights[l].size(), 0.0);
        s.m_b.emplace_back(net.biases[l].size(), 0.0);
        s.v_b.emplace_back(net.biases[l].size(), 0.0);
    }
    return s;
}

namespace {

void adam_update(std::vector<double>& param, std::vector<double>& m, std::vector<double>& v,
                 const std::vector<double>& g, double lr, double b1, double b2, double eps,
                 double b1_corr, double b2_corr) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
        const double m_hat = m[i] / b1_corr;
        const double v_hat = v[i] / b2_corr;
        param[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
}

}  // namespace

void adam_step(Mlp& net, AdamState& state, const Gradients& grads) {
    state.step++;
    const double b1_corr = 1.0 - std::pow(state.beta1, state.step);
    const double b2_corr = 1.0 - std::pow(state.beta2, state.step);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        adam_update(net.weights[l], state.m_w[l], state.v_w[l], grads.weights[l], state.lr,
                    state.beta1, state.beta2, state.eps, b1_corr, b2_corr);
        adam_update(net.biases[l], state.m_b[l], state.v_b[l], grads.biases[l], state.lr,
                    state.beta1, state.beta2, state.eps, b1_corr, b2_corr);
    }
}

Mlp copy_weights(const Mlp& src) { return src; }

namespace {

constexpr const char* kMagic = "uavsim-weights 1";

void write_values(std::ostream& out, const std::vector<double>& values) {
    char buf[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), values[i]);
        if (i) out << ' ';
        out.write(buf, end - buf);
    }
    out << '\n';
}

}  // namespace

void save_weights(const std::string& path, const Mlp& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_weights: cannot open " + path);
    out << kMagic << '\n';
    out << net.sizes.size() << '\n';
    for (std::size_t i = 0; i < net.sizes.size(); ++i) {
        if (i) out << ' ';
        out << net.sizes[i];
    }
    out << '\n';
    for (int l = 0; l < net.layer_count(); ++l) {
        write_values(out, net.weights[l]);
        write_values(out, net.biases[l]);
    }
    if (!out) throw std::runtime_error("save_weights: write failed for " + path);
}

Mlp load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_weights: cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != kMagic) throw std::runtime_error("load_weights: unrecognized format in " + path);

    std::size_t layer_entries = 0;
    in >> layer_entries;
    if (!in || layer_entries < 2) throw std::runtime_error("load_weights: bad layer count");
    Mlp net;
    net.sizes.resize(layer_entries);
    for (auto& s : net.sizes) in >> s;
    if (!in) throw std::runtime_error("load_weights: bad layer sizes");

    for (std::size_t l = 0; l + 1 < layer_entries; ++l) {
        std::vector<double> w(static_cast<std::size_t>(net.sizes[l]) * net.sizes[l + 1]);
        for (double& v : w) in >> v;
        std::vector<double> b(net.sizes[l + 1]);
        for (double& v : b) in >> v;
        if (!in) throw std::runtime_error("load_weights: truncated parameter block");
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }
    return net;
}

}  // namespace uavsim
