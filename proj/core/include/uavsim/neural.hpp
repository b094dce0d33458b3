#pragma once

#include <string>
#include <vector>

#include "uavsim/rng.hpp"

namespace uavsim {

// Fully connected network, rectified-linear hidden layers, identity output.
// weights[l] is row-major with shape (sizes[l+1] x sizes[l]).
struct Mlp {
    std::vector<int> sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static Mlp init(const std::vector<int>& layer_sizes, Rng& rng);

    int input_size() const { return sizes.front(); }
    int output_size() const { return sizes.back(); }
    int layer_count() const { return static_cast<int>(sizes.size()) - 1; }

    std::vector<double> forward(const std::vector<double>& input) const;
};

// Reusable buffers for the hot training path; one per thread of use.
struct MlpScratch {
    std::vector<std::vector<double>> pre;   // pre-activation per layer
    std::vector<std::vector<double>> act;   // post-activation per layer (act[0] = input)
    std::vector<std::vector<double>> delta;

    void resize_for(const Mlp& net);
};

void forward_into(const Mlp& net, const std::vector<double>& input, MlpScratch& scratch);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static Gradients zeros_like(const Mlp& net);
    void clear();
    void scale(double factor);
};

// Gradient of (target - q[action])^2 with respect to every parameter; the
// untouched outputs contribute nothing. Accumulates into `grads` so a batch
// can be averaged by the caller.
void backward_accumulate(const Mlp& net, const std::vector<double>& input, int action,
                         double target, MlpScratch& scratch, Gradients& grads);

Gradients backward(const Mlp& net, const std::vector<double>& input, int action, double target);

struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<std::vector<double>> m_w, v_w, m_b, v_b;

    static AdamState like(const Mlp& net, double lr = 1e-3);
};

// Bias-corrected Adam update in place.
void adam_step(Mlp& net, AdamState& state, const Gradients& grads);

// Deep value copy; training the source afterwards leaves the copy untouched.
Mlp copy_weights(const Mlp& src);

// Plain-text checkpoint: magic line, layer count, layer sizes, then row-major
// weights and biases per layer. Doubles are written with enough digits to
// round-trip exactly.
void save_weights(const std::string& path, const Mlp& net);
Mlp load_weights(const std::string& path);

}  // namespace uavsim
