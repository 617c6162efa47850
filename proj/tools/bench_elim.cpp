// Benchmark of the exact elimination kernels: serial reference vs OpenMP,
// on random dense systems over Q(h). The two must agree entry for entry.

#include "dmr/linsolve.hpp"
#include "dmr/oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dmr;

namespace {

linsolve::Mat random_matrix(int rows, int cols, int max_deg, uint64_t seed) {
    oracle::SampleGen gen(seed);
    std::mt19937_64 aux(seed ^ 0x5bf03635ull);
    std::uniform_int_distribution<int> deg(0, max_deg);
    linsolve::Mat m(rows, linsolve::Vec(cols, RatFunc()));
    for (auto& row : m)
        for (auto& x : row) {
            std::vector<Rational> cn(deg(aux) + 1);
            for (auto& c : cn) c = gen.small_rational();
            std::vector<Rational> cd{gen.small_rational(true)};
            x = RatFunc(HPoly(cn), HPoly(cd));
        }
    return m;
}

double run_ms(linsolve::Mat m, bool parallel) {
    auto t0 = std::chrono::steady_clock::now();
    linsolve::rref(m, parallel);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    int size = argc > 1 ? std::atoi(argv[1]) : 48;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif
    std::cout << "size  degree  serial_ms  omp_ms  speedup\n";
    for (int deg : {1, 3, 5}) {
        linsolve::Mat m = random_matrix(size, size, deg, 42 + deg);

        linsolve::Mat a = m, b = m;
        linsolve::rref(a, false);
        linsolve::rref(b, true);
        if (!(a == b)) {
            std::cerr << "kernel mismatch: serial and OpenMP elimination disagree\n";
            return 1;
        }

        double serial = 0, par = 0;
        for (int r = 0; r < reps; ++r) {
            serial += run_ms(m, false);
            par += run_ms(m, true);
        }
        serial /= reps;
        par /= reps;
        std::cout << size << "  " << deg << "  " << serial << "  " << par << "  "
                  << (par > 0 ? serial / par : 0.0) << "\n";
    }
    return 0;
}
