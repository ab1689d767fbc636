#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace phfock {

using cplx = std::complex<double>;

// Deterministic pairwise-tree summation: result depends only on element order,
// never on chunking or thread count, and carries better rounding behaviour
// than a running sum.
template <typename T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = v[lo];
        for (std::size_t i = lo + 1; i < hi; ++i) acc += v[i];
        return acc;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v, 0, v.size());
}

inline double log_factorial(int m) {
    static const double small[21] = {
        0.0, 0.0, 0.6931471805599453, 1.791759469228055, 3.1780538303479458,
        4.787491742782046, 6.579251212010101, 8.525161361065415, 10.60460290274525,
        12.801827480081469, 15.104412573075516, 17.502307845873887, 19.987214495661885,
        22.552163853123425, 25.19122118273868, 27.89927138384089, 30.671860106080672,
        33.50507345013689, 36.39544520803305, 39.339884187199495, 42.335616460753485};
    if (m < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (m <= 20) return small[m];
    return std::lgamma(static_cast<double>(m) + 1.0);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

// P(a, x) = gamma(a, x) / Gamma(a) for integer a >= 1, via the Poisson-tail
// identity P(a, x) = 1 - e^{-x} sum_{j<a} x^j/j!.
inline double regularized_gamma_p(int a, double x) {
    if (a < 1) throw std::invalid_argument("regularized_gamma_p: integer a >= 1 required");
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < a; ++j) {
        term *= x / j;
        sum += term;
    }
    return 1.0 - std::exp(-x) * sum;
}

// Run fn(i) for i in [0, count) on up to `threads` workers.  Each index owns its
// output slot, so the result is identical for every thread count.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nw = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::exception_ptr first_error;
    std::mutex err_mx;
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += nw) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct Rng {
    std::mt19937_64 engine;
    std::uint64_t seed;

    explicit Rng(std::uint64_t s) : engine(s), seed(s) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(engine);
    }
    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(engine);
    }
    cplx complex_normal() { return cplx(normal(), normal()); }
    // uniform in the closed disk of given radius
    cplx disk(double radius) {
        while (true) {
            const double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return cplx(radius * x, radius * y);
        }
    }
    static constexpr const char* name() { return "mt19937_64"; }
};

inline constexpr std::uint64_t kDefaultSeed = 20250817ull;

}  // namespace phfock
