// AVX2 variants of the dispatch kernels. Each loop mirrors the scalar
// reference exactly: same per-element operation order, separate multiply and
// add (no FMA), so results are bitwise identical to the scalar backend.

#include "promptlab/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace promptlab::kernels {

namespace {

void v_matmul_nn(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    if (!accumulate) std::memset(c, 0, r * m * sizeof(double));
    const std::size_t m4 = m & ~std::size_t{3};
    for (std::size_t i = 0; i < r; ++i) {
        double* crow = c + i * m;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a[i * k + kk];
            const __m256d avv = _mm256_set1_pd(av);
            const double* brow = b + kk * m;
            std::size_t j = 0;
            for (; j < m4; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                __m256d bv = _mm256_loadu_pd(brow + j);
                cv = _mm256_add_pd(cv, _mm256_mul_pd(avv, bv));
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void v_matmul_nt(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    const std::size_t m4 = m & ~std::size_t{3};
    for (std::size_t i = 0; i < r; ++i) {
        const double* arow = a + i * k;
        std::size_t j = 0;
        for (; j < m4; j += 4) {
            const double* b0 = b + j * k;
            const double* b1 = b + (j + 1) * k;
            const double* b2 = b + (j + 2) * k;
            const double* b3 = b + (j + 3) * k;
            __m256d acc = accumulate ? _mm256_loadu_pd(c + i * m + j) : _mm256_setzero_pd();
            for (std::size_t kk = 0; kk < k; ++kk) {
                const __m256d avv = _mm256_set1_pd(arow[kk]);
                const __m256d bv = _mm256_set_pd(b3[kk], b2[kk], b1[kk], b0[kk]);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(avv, bv));
            }
            _mm256_storeu_pd(c + i * m + j, acc);
        }
        for (; j < m; ++j) {
            const double* brow = b + j * k;
            double acc = accumulate ? c[i * m + j] : 0.0;
            for (std::size_t kk = 0; kk < k; ++kk) acc += arow[kk] * brow[kk];
            c[i * m + j] = acc;
        }
    }
}

void v_matmul_tn(const double* a, const double* b, double* c,
                 std::size_t r, std::size_t k, std::size_t m, bool accumulate) {
    if (!accumulate) std::memset(c, 0, r * m * sizeof(double));
    const std::size_t m4 = m & ~std::size_t{3};
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* brow = b + kk * m;
        for (std::size_t i = 0; i < r; ++i) {
            const double av = a[kk * r + i];
            const __m256d avv = _mm256_set1_pd(av);
            double* crow = c + i * m;
            std::size_t j = 0;
            for (; j < m4; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                __m256d bv = _mm256_loadu_pd(brow + j);
                cv = _mm256_add_pd(cv, _mm256_mul_pd(avv, bv));
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void v_add(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = x[i] + y[i];
}

void v_sub(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = x[i] - y[i];
}

void v_mul(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = x[i] * y[i];
}

void v_scale(const double* x, double s, double* out, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), sv));
    for (; i < n; ++i) out[i] = x[i] * s;
}

void v_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_add_pd(yv, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void v_relu(const double* x, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d keep = _mm256_cmp_pd(xv, zero, _CMP_GT_OQ);
        _mm256_storeu_pd(out + i, _mm256_and_pd(keep, xv));
    }
    for (; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void v_relu_backward(const double* x, const double* g, double* gx, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4) {
        const __m256d keep = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
        const __m256d gv = _mm256_and_pd(keep, _mm256_loadu_pd(g + i));
        _mm256_storeu_pd(gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), gv));
    }
    for (; i < n; ++i) gx[i] += x[i] > 0.0 ? g[i] : 0.0;
}

void v_adamw_update(double* p, const double* g, double* m, double* v, std::size_t n,
                    double lr, double beta1, double beta2, double eps,
                    double weight_decay, double bias_c1, double bias_c2) {
    const double om1s = 1.0 - beta1;
    const double om2s = 1.0 - beta2;
    const __m256d b1 = _mm256_set1_pd(beta1);
    const __m256d b2 = _mm256_set1_pd(beta2);
    const __m256d om1 = _mm256_set1_pd(om1s);
    const __m256d om2 = _mm256_set1_pd(om2s);
    const __m256d bc1 = _mm256_set1_pd(bias_c1);
    const __m256d bc2 = _mm256_set1_pd(bias_c2);
    const __m256d epsv = _mm256_set1_pd(eps);
    const __m256d wdv = _mm256_set1_pd(weight_decay);
    const __m256d lrv = _mm256_set1_pd(lr);
    std::size_t i = 0;
    for (const std::size_t n4 = n & ~std::size_t{3}; i < n4; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        mv = _mm256_add_pd(_mm256_mul_pd(b1, mv), _mm256_mul_pd(om1, gv));
        vv = _mm256_add_pd(_mm256_mul_pd(b2, vv), _mm256_mul_pd(om2, _mm256_mul_pd(gv, gv)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_div_pd(mv, bc1);
        const __m256d vhat = _mm256_div_pd(vv, bc2);
        __m256d pv = _mm256_loadu_pd(p + i);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), epsv);
        const __m256d upd = _mm256_add_pd(_mm256_div_pd(mhat, denom), _mm256_mul_pd(wdv, pv));
        pv = _mm256_sub_pd(pv, _mm256_mul_pd(lrv, upd));
        _mm256_storeu_pd(p + i, pv);
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + om1s * g[i];
        v[i] = beta2 * v[i] + om2s * (g[i] * g[i]);
        const double mhat = m[i] / bias_c1;
        const double vhat = v[i] / bias_c2;
        const double upd = mhat / (std::sqrt(vhat) + eps) + weight_decay * p[i];
        p[i] = p[i] - lr * upd;
    }
}

constexpr Backend kAvx2 = {
    "avx2",
    v_matmul_nn, v_matmul_nt, v_matmul_tn,
    v_add, v_sub, v_mul, v_scale, v_axpy,
    v_relu, v_relu_backward, v_adamw_update,
};

}  // namespace

const Backend* avx2_backend() { return cpu_has_avx2() ? &kAvx2 : nullptr; }

}  // namespace promptlab::kernels

#else  // !__x86_64__

namespace promptlab::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace promptlab::kernels

#endif
