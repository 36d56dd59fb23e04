// Copyright 2026 The trpkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "trpkit/net/network.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace net {
namespace {

void CheckBatch(const NetworkModel &model, const Batch &batch,
                std::size_t classes) {
  if (!(batch.shape == model.input)) {
    throw ConfigError("batch image shape " + batch.shape.ToString() +
                      " does not match model input " +
                      model.input.ToString());
  }
  if (batch.images.size() != batch.size() * batch.shape.count()) {
    throw ConfigError("batch image buffer length does not match labels");
  }
  if (batch.size() == 0) throw ConfigError("empty batch");
  for (std::int32_t label : batch.labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw ConfigError("label " + std::to_string(label) +
                        " outside [0, " + std::to_string(classes) + ")");
    }
  }
}

void ConvForward(const Conv2DLayer &conv, const ImageShape &in,
                 std::span<const double> x, std::span<double> y) {
  const auto &s = conv.weights.shape();
  const std::ptrdiff_t ph = static_cast<std::ptrdiff_t>((s.kh - 1) / 2);
  const std::ptrdiff_t pw = static_cast<std::ptrdiff_t>((s.kw - 1) / 2);
  const std::ptrdiff_t H = static_cast<std::ptrdiff_t>(in.h);
  const std::ptrdiff_t W = static_cast<std::ptrdiff_t>(in.w);
  for (std::size_t n = 0; n < s.n; ++n) {
    double *out = y.data() + n * in.h * in.w;
    std::fill(out, out + in.h * in.w, conv.bias[n]);
    for (std::size_t c = 0; c < s.c; ++c) {
      const double *src = x.data() + c * in.h * in.w;
      for (std::size_t kh = 0; kh < s.kh; ++kh) {
        for (std::size_t kw = 0; kw < s.kw; ++kw) {
          const double wv = conv.weights.at(n, c, kh, kw);
          const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(kh) - ph;
          const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kw) - pw;
          for (std::ptrdiff_t oy = 0; oy < H; ++oy) {
            const std::ptrdiff_t iy = oy + dy;
            if (iy < 0 || iy >= H) continue;
            for (std::ptrdiff_t ox = 0; ox < W; ++ox) {
              const std::ptrdiff_t ix = ox + dx;
              if (ix < 0 || ix >= W) continue;
              out[oy * W + ox] += wv * src[iy * W + ix];
            }
          }
        }
      }
    }
  }
}

// Accumulates weight/bias gradients and writes the input gradient.
void ConvBackward(const Conv2DLayer &conv, const ImageShape &in,
                  std::span<const double> x, std::span<const double> gy,
                  std::span<double> gx, ParamGrad &grad) {
  const auto &s = conv.weights.shape();
  const std::ptrdiff_t ph = static_cast<std::ptrdiff_t>((s.kh - 1) / 2);
  const std::ptrdiff_t pw = static_cast<std::ptrdiff_t>((s.kw - 1) / 2);
  const std::ptrdiff_t H = static_cast<std::ptrdiff_t>(in.h);
  const std::ptrdiff_t W = static_cast<std::ptrdiff_t>(in.w);
  std::fill(gx.begin(), gx.end(), 0.0);
  for (std::size_t n = 0; n < s.n; ++n) {
    const double *g = gy.data() + n * in.h * in.w;
    double bsum = 0.0;
    for (std::size_t i = 0; i < in.h * in.w; ++i) bsum += g[i];
    grad.bias[n] += bsum;
    for (std::size_t c = 0; c < s.c; ++c) {
      const double *src = x.data() + c * in.h * in.w;
      double *dst = gx.data() + c * in.h * in.w;
      for (std::size_t kh = 0; kh < s.kh; ++kh) {
        for (std::size_t kw = 0; kw < s.kw; ++kw) {
          const std::size_t widx = conv.weights.Index(n, c, kh, kw);
          const double wv = conv.weights.data()[widx];
          const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(kh) - ph;
          const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kw) - pw;
          double acc = 0.0;
          for (std::ptrdiff_t oy = 0; oy < H; ++oy) {
            const std::ptrdiff_t iy = oy + dy;
            if (iy < 0 || iy >= H) continue;
            for (std::ptrdiff_t ox = 0; ox < W; ++ox) {
              const std::ptrdiff_t ix = ox + dx;
              if (ix < 0 || ix >= W) continue;
              const double go = g[oy * W + ox];
              acc += go * src[iy * W + ix];
              dst[iy * W + ix] += wv * go;
            }
          }
          grad.weights[widx] += acc;
        }
      }
    }
  }
}

void PoolForward(const ImageShape &in, std::span<const double> x,
                 std::span<double> y) {
  const std::size_t oh = in.h / 2;
  const std::size_t ow = in.w / 2;
  for (std::size_t c = 0; c < in.c; ++c) {
    const double *src = x.data() + c * in.h * in.w;
    double *dst = y.data() + c * oh * ow;
    for (std::size_t i = 0; i < oh; ++i) {
      for (std::size_t j = 0; j < ow; ++j) {
        const double *p = src + 2 * i * in.w + 2 * j;
        dst[i * ow + j] = 0.25 * (p[0] + p[1] + p[in.w] + p[in.w + 1]);
      }
    }
  }
}

void PoolBackward(const ImageShape &in, std::span<const double> gy,
                  std::span<double> gx) {
  const std::size_t oh = in.h / 2;
  const std::size_t ow = in.w / 2;
  std::fill(gx.begin(), gx.end(), 0.0);
  for (std::size_t c = 0; c < in.c; ++c) {
    const double *src = gy.data() + c * oh * ow;
    double *dst = gx.data() + c * in.h * in.w;
    for (std::size_t i = 0; i < oh; ++i) {
      for (std::size_t j = 0; j < ow; ++j) {
        const double g = 0.25 * src[i * ow + j];
        double *p = dst + 2 * i * in.w + 2 * j;
        p[0] += g;
        p[1] += g;
        p[in.w] += g;
        p[in.w + 1] += g;
      }
    }
  }
}

void DenseForward(const DenseLayer &dense, std::span<const double> x,
                  std::span<double> y) {
  for (std::size_t o = 0; o < dense.weights.rows(); ++o) {
    double acc = dense.bias[o];
    const auto row = dense.weights.row(o);
    for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * x[i];
    y[o] = acc;
  }
}

void DenseBackward(const DenseLayer &dense, std::span<const double> x,
                   std::span<const double> gy, std::span<double> gx,
                   ParamGrad &grad) {
  const std::size_t in = dense.weights.cols();
  std::fill(gx.begin(), gx.end(), 0.0);
  for (std::size_t o = 0; o < dense.weights.rows(); ++o) {
    const double g = gy[o];
    grad.bias[o] += g;
    const auto row = dense.weights.row(o);
    double *gw = grad.weights.data() + o * in;
    for (std::size_t i = 0; i < in; ++i) {
      gw[i] += g * x[i];
      gx[i] += g * row[i];
    }
  }
}

// Stable softmax; returns -log p[label].
double SoftmaxCrossEntropy(std::span<const double> logits, std::size_t label,
                           std::span<double> probs) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - top);
    sum += probs[i];
  }
  for (double &p : probs) p /= sum;
  return -(logits[label] - top - std::log(sum));
}

// Per-sample pass. Activations[i] is the input of layer i; the final entry
// holds the logits.
struct SampleTrace {
  std::vector<std::vector<double>> activations;
  std::vector<double> probs;
  double loss = 0.0;
};

SampleTrace RunForward(const NetworkModel &model,
                       const std::vector<ImageShape> &shapes,
                       const double *image, std::size_t label) {
  SampleTrace t;
  const std::size_t n_layers = model.layers.size();
  t.activations.resize(n_layers);
  t.activations[0].assign(image, image + model.input.count());
  for (std::size_t i = 0; i + 1 < n_layers; ++i) {
    const Layer &layer = model.layers[i];
    const ImageShape out_shape = OutputShape(layer, shapes[i]);
    std::vector<double> &out = t.activations[i + 1];
    out.assign(out_shape.count(), 0.0);
    const std::vector<double> &x = t.activations[i];
    if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
      ConvForward(*conv, shapes[i], x, out);
    } else if (std::holds_alternative<ReluLayer>(layer)) {
      for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] > 0.0 ? x[j] : 0.0;
    } else if (std::holds_alternative<AvgPoolLayer>(layer)) {
      PoolForward(shapes[i], x, out);
    } else if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
      DenseForward(*dense, x, out);
    }
  }
  const std::vector<double> &logits = t.activations.back();
  t.probs.assign(logits.size(), 0.0);
  t.loss = SoftmaxCrossEntropy(logits, label, t.probs);
  return t;
}

}  // namespace

std::size_t ArgMax(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::span<double> WeightStorage(Layer &layer) {
  if (auto *conv = std::get_if<Conv2DLayer>(&layer)) return conv->weights.data();
  if (auto *dense = std::get_if<DenseLayer>(&layer)) return dense->weights.data();
  return {};
}

std::span<const double> WeightStorage(const Layer &layer) {
  if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
    return conv->weights.data();
  }
  if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
    return dense->weights.data();
  }
  return {};
}

std::span<double> BiasStorage(Layer &layer) {
  if (auto *conv = std::get_if<Conv2DLayer>(&layer)) return conv->bias;
  if (auto *dense = std::get_if<DenseLayer>(&layer)) return dense->bias;
  return {};
}

std::span<const double> BiasStorage(const Layer &layer) {
  if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) return conv->bias;
  if (const auto *dense = std::get_if<DenseLayer>(&layer)) return dense->bias;
  return {};
}

ForwardResult Forward(const NetworkModel &model, const Batch &batch) {
  model.Validate();
  const auto shapes = model.ActivationShapes();
  const std::size_t classes = shapes.back().count();
  CheckBatch(model, batch, classes);

  ForwardResult r;
  r.logits = linalg::Matrix(batch.size(), classes);
  r.probabilities = linalg::Matrix(batch.size(), classes);
  r.predicted.resize(batch.size());
  double loss = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const SampleTrace t = RunForward(model, shapes, batch.image(b),
                                     static_cast<std::size_t>(batch.labels[b]));
    loss += t.loss;
    const std::vector<double> &logits = t.activations.back();
    std::copy(logits.begin(), logits.end(), r.logits.row(b).begin());
    std::copy(t.probs.begin(), t.probs.end(), r.probabilities.row(b).begin());
    r.predicted[b] = static_cast<std::int32_t>(ArgMax(logits));
  }
  r.loss = loss / static_cast<double>(batch.size());
  return r;
}

GradientSet Backward(const NetworkModel &model, const Batch &batch) {
  model.Validate();
  const auto shapes = model.ActivationShapes();
  const std::size_t classes = shapes.back().count();
  CheckBatch(model, batch, classes);
  const std::size_t n_layers = model.layers.size();

  GradientSet grads;
  grads.layers.resize(n_layers);
  for (std::size_t i = 0; i < n_layers; ++i) {
    grads.layers[i].weights.assign(WeightStorage(model.layers[i]).size(), 0.0);
    grads.layers[i].bias.assign(BiasStorage(model.layers[i]).size(), 0.0);
  }

  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  std::vector<double> g;
  std::vector<double> g_prev;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const std::size_t label = static_cast<std::size_t>(batch.labels[b]);
    const SampleTrace t = RunForward(model, shapes, batch.image(b), label);
    loss += t.loss;
    // d(mean loss)/d(logits) for this sample.
    g = t.probs;
    g[label] -= 1.0;
    for (double &x : g) x *= scale;
    for (std::size_t i = n_layers - 1; i-- > 0;) {
      const Layer &layer = model.layers[i];
      const std::vector<double> &x = t.activations[i];
      g_prev.assign(x.size(), 0.0);
      if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
        ConvBackward(*conv, shapes[i], x, g, g_prev, grads.layers[i]);
      } else if (std::holds_alternative<ReluLayer>(layer)) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          g_prev[j] = x[j] > 0.0 ? g[j] : 0.0;
        }
      } else if (std::holds_alternative<AvgPoolLayer>(layer)) {
        PoolBackward(shapes[i], g, g_prev);
      } else if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
        DenseBackward(*dense, x, g, g_prev, grads.layers[i]);
      }
      g.swap(g_prev);
    }
  }
  grads.loss = loss * scale;
  return grads;
}

EvalResult Evaluate(const NetworkModel &model, const Batch &dataset) {
  if (dataset.size() == 0) throw ConfigError("cannot evaluate an empty dataset");
  const ForwardResult f = Forward(model, dataset);
  EvalResult r;
  r.total = dataset.size();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (f.predicted[i] == dataset.labels[i]) ++r.correct;
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  r.mean_loss = f.loss;
  return r;
}

}  // namespace net
}  // namespace trpkit
