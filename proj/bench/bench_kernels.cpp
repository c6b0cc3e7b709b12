#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qcam/hermitian.hpp"
#include "qcam/random_states.hpp"
#include "qcam/rng.hpp"

// Timing table for the two kernel families that have both a parallel
// production path and a serial reference: dense matmul (OpenMP vs serial)
// and the Hermitian eigensolver (Householder+QL vs cyclic Jacobi).

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double time_call(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return seconds_since(t0) / reps;
}

}  // namespace

int main() {
    qcam::Rng rng(12345);
    std::printf("%-28s %10s %10s %8s\n", "kernel", "parallel", "serial", "ratio");

    for (std::size_t n : {64, 128, 256}) {
        const qcam::CMatrix a = qcam::random_hermitian(n, rng);
        const qcam::CMatrix b = qcam::random_hermitian(n, rng);
        const int reps = n <= 128 ? 10 : 3;
        const double tp = time_call([&] { qcam::matmul(a, b); }, reps);
        const double ts = time_call([&] { qcam::matmul_serial(a, b); }, reps);
        std::printf("%-28s %9.2fms %9.2fms %7.2fx\n",
                    ("matmul n=" + std::to_string(n)).c_str(), 1e3 * tp, 1e3 * ts, ts / tp);
    }

    for (std::size_t n : {32, 64, 128}) {
        const qcam::CMatrix a = qcam::random_hermitian(n, rng);
        const int reps = n <= 64 ? 5 : 2;
        const double tp = time_call([&] { qcam::eigh(a); }, reps);
        const double ts = time_call([&] { qcam::eigh_jacobi(a); }, reps);
        std::printf("%-28s %9.2fms %9.2fms %7.2fx\n",
                    ("eigh n=" + std::to_string(n)).c_str(), 1e3 * tp, 1e3 * ts, ts / tp);
    }
    return 0;
}
