#pragma once

#include <cstddef>
#include <string_view>

namespace promptlab::kernels {

// Row-major double-precision kernels. Every kernel has a scalar reference
// implementation and (on x86-64) an AVX2 variant selected at runtime.
//
// Contract: scalar and SIMD variants of the same kernel produce bitwise
// identical results. Per-element operation order is fixed in each kernel
// and no fused multiply-add is used (the build disables FP contraction),
// so switching backends never changes any downstream value.
struct Backend {
    const char* name;

    // c[r x m] = a[r x k] * b[k x m]; accumulates into c when accumulate is set
    void (*matmul_nn)(const double* a, const double* b, double* c,
                      std::size_t r, std::size_t k, std::size_t m, bool accumulate);
    // c[r x m] = a[r x k] * b[m x k]^T
    void (*matmul_nt)(const double* a, const double* b, double* c,
                      std::size_t r, std::size_t k, std::size_t m, bool accumulate);
    // c[r x m] = a[k x r]^T * b[k x m]
    void (*matmul_tn)(const double* a, const double* b, double* c,
                      std::size_t r, std::size_t k, std::size_t m, bool accumulate);

    void (*add)(const double* x, const double* y, double* out, std::size_t n);
    void (*sub)(const double* x, const double* y, double* out, std::size_t n);
    void (*mul)(const double* x, const double* y, double* out, std::size_t n);
    void (*scale)(const double* x, double s, double* out, std::size_t n);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    void (*relu)(const double* x, double* out, std::size_t n);
    // gx += (x > 0) ? g : 0
    void (*relu_backward)(const double* x, const double* g, double* gx, std::size_t n);
    // Decoupled-weight-decay Adam step on one parameter buffer.
    // bias_c1 = 1 - beta1^t, bias_c2 = 1 - beta2^t.
    void (*adamw_update)(double* p, const double* g, double* m, double* v, std::size_t n,
                         double lr, double beta1, double beta2, double eps,
                         double weight_decay, double bias_c1, double bias_c2);
};

const Backend& scalar_backend();
// nullptr when this build or CPU cannot run AVX2
const Backend* avx2_backend();

// Active backend used by the tensor ops. Defaults to the best available.
const Backend& active();
// name: "auto" | "scalar" | "avx2"; throws std::invalid_argument on unknown
// or unavailable backends.
void select(std::string_view name);

bool cpu_has_avx2();

}  // namespace promptlab::kernels
