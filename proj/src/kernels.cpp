#include "promptlab/kernels.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace promptlab::kernels {

namespace {

void s_matmul_nn(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    if (!accumulate) std::memset(c, 0, r * m * sizeof(double));
    for (std::size_t i = 0; i < r; ++i) {
        double* crow = c + i * m;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a[i * k + kk];
            const double* brow = b + kk * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void s_matmul_nt(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    for (std::size_t i = 0; i < r; ++i) {
        const double* arow = a + i * k;
        for (std::size_t j = 0; j < m; ++j) {
            const double* brow = b + j * k;
            double acc = accumulate ? c[i * m + j] : 0.0;
            for (std::size_t kk = 0; kk < k; ++kk) acc += arow[kk] * brow[kk];
            c[i * m + j] = acc;
        }
    }
}

void s_matmul_tn(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    if (!accumulate) std::memset(c, 0, r * m * sizeof(double));
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* brow = b + kk * m;
        for (std::size_t i = 0; i < r; ++i) {
            const double av = a[kk * r + i];
            double* crow = c + i * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void s_add(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void s_sub(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void s_mul(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void s_scale(const double* x, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * s;
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_relu(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void s_relu_backward(const double* x, const double* g, double* gx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) gx[i] += x[i] > 0.0 ? g[i] : 0.0;
}

void s_adamw_update(double* p, const double* g, double* m, double* v, std::size_t n,
                    double lr, double beta1, double beta2, double eps,
                    double weight_decay, double bias_c1, double bias_c2) {
    const double om1 = 1.0 - beta1;
    const double om2 = 1.0 - beta2;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + om1 * g[i];
        v[i] = beta2 * v[i] + om2 * (g[i] * g[i]);
        const double mhat = m[i] / bias_c1;
        const double vhat = v[i] / bias_c2;
        const double upd = mhat / (std::sqrt(vhat) + eps) + weight_decay * p[i];
        p[i] = p[i] - lr * upd;
    }
}

constexpr Backend kScalar = {
    "scalar",
    s_matmul_nn, s_matmul_nt, s_matmul_tn,
    s_add, s_sub, s_mul, s_scale, s_axpy,
    s_relu, s_relu_backward, s_adamw_update,
};

const Backend* g_active = nullptr;

}  // namespace

const Backend& scalar_backend() { return kScalar; }

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Backend& active() {
    if (g_active == nullptr) {
        const Backend* avx2 = avx2_backend();
        g_active = avx2 != nullptr ? avx2 : &kScalar;
    }
    return *g_active;
}

void select(std::string_view name) {
    if (name == "auto") {
        const Backend* avx2 = avx2_backend();
        g_active = avx2 != nullptr ? avx2 : &kScalar;
        return;
    }
    if (name == "scalar") {
        g_active = &kScalar;
        return;
    }
    if (name == "avx2") {
        const Backend* avx2 = avx2_backend();
        if (avx2 == nullptr)
            throw std::invalid_argument("kernels: avx2 backend unavailable on this CPU/build");
        g_active = avx2;
        return;
    }
    throw std::invalid_argument("kernels: unknown backend '" + std::string(name) + "'");
}

}  // namespace promptlab::kernels
