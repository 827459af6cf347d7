#pragma once

#include <functional>
#include <random>
#include <vector>

#include "promptlab/tensor.hpp"

namespace promptlab::ops {

// Forward ops. Passing a non-null tape records a backward rule; gradients
// accumulate additively into every requires_grad input reachable from the
// loss. Matrix arguments are 2-d row-major; biases/masks are 1-d.

Tensor matmul(Tape* tape, const Tensor& a, const Tensor& b);
// a * b^T  (b stored row-major as [m x k])
Tensor matmul_nt(Tape* tape, const Tensor& a, const Tensor& b);

Tensor add(Tape* tape, const Tensor& a, const Tensor& b);
Tensor sub(Tape* tape, const Tensor& a, const Tensor& b);
Tensor mul(Tape* tape, const Tensor& a, const Tensor& b);
Tensor scale(Tape* tape, const Tensor& x, double s);
// x[r x c] + bias[c] broadcast over rows
Tensor add_row(Tape* tape, const Tensor& x, const Tensor& bias);
Tensor relu(Tape* tape, const Tensor& x);
Tensor transpose(Tape* tape, const Tensor& x);
Tensor reshape(Tape* tape, const Tensor& x, std::vector<std::size_t> shape);
Tensor concat_rows(Tape* tape, const Tensor& a, const Tensor& b);
Tensor slice_rows(Tape* tape, const Tensor& x, std::size_t start, std::size_t len);
Tensor slice_cols(Tape* tape, const Tensor& x, std::size_t start, std::size_t len);
Tensor concat_cols(Tape* tape, const std::vector<Tensor>& xs);

// Row-wise softmax with per-row max subtraction. mask, when given, has the
// same shape with {0,1} entries; masked-out positions are exactly 0 in the
// output and each row must keep at least one live entry.
Tensor softmax_rows(Tape* tape, const Tensor& x, const Tensor* mask = nullptr);

// Mean over the rows of x selected by mask[rows], yielding [1 x c].
// Accumulation runs in extended precision so a stack of identical rows
// pools to exactly that row (softmax rows of a uniform score matrix are
// all fl(1/s); their mean must return fl(1/s) bitwise).
Tensor pool_rows(Tape* tape, const Tensor& x, const Tensor& mask);

Tensor sum(Tape* tape, const Tensor& x);
Tensor layer_norm(Tape* tape, const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps = 1e-5);
// Inverted dropout; identity when rate == 0. Consumes numel(x) draws.
Tensor dropout(Tape* tape, const Tensor& x, double rate, std::mt19937_64& rng);
// -log softmax(logits)[label] in log-sum-exp form; logits are [C] or [1 x C].
Tensor cross_entropy(Tape* tape, const Tensor& logits, int label);

}  // namespace promptlab::ops

namespace promptlab {

// Max over elements of |analytic - central difference| / max(|analytic|,
// |central|, 1e-8) for d f / d x. f evaluates the full forward pass; it is
// called once on a tape for the analytic gradient and twice per element for
// the central differences.
double finite_diff_check(const std::function<Tensor(Tape*)>& f, Tensor x, double step = 1e-5);

// Same check across several tensors (one analytic backward pass, then
// per-element differences); returns the max over all elements of all xs.
double finite_diff_check_all(const std::function<Tensor(Tape*)>& f, const std::vector<Tensor>& xs,
                             double step = 1e-5);

}  // namespace promptlab
