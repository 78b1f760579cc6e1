// Wall-time comparison of the OpenMP kernels against their serial
// reference implementations. The outputs are asserted bit-identical, so
// the only thing at stake here is speed.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entdyn/dynamics.hpp"
#include "entdyn/events.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn) {
    const auto start = clock_type::now();
    fn();
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif

    const entdyn::CollectiveCoupling coupling = entdyn::coupling_from_separation(0.05);

    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

    {
        const double t_end = 10.0;
        const double dt = 1e-5;  // 1e6 samples
        entdyn::Trajectory serial, parallel;
        const double ts = time_ms([&] {
            serial = entdyn::closed_form_trajectory_serial(0.9, coupling, t_end, dt);
        });
        const double tp = time_ms([&] {
            parallel = entdyn::closed_form_trajectory(0.9, coupling, t_end, dt);
        });
        bool same = serial.times == parallel.times;
        for (std::size_t i = 0; same && i < serial.samples.size(); ++i) {
            same = serial.samples[i].c == parallel.samples[i].c;
        }
        std::printf("%-34s %12.1f %12.1f %8.2fx  (results %s)\n",
                    "closed_form_trajectory (1e6 pts)", ts, tp, ts / tp,
                    same ? "identical" : "DIFFER");
    }

    {
        std::vector<double> grid;
        for (int k = 1; k <= 396; ++k) {
            grid.push_back(static_cast<double>(k) / 400.0);
        }
        std::vector<entdyn::DeathScanPoint> serial, parallel;
        const double ts = time_ms([&] {
            serial = entdyn::death_time_scan_serial(0.05, grid, 20.0, 1.0, 2e-4);
        });
        const double tp = time_ms([&] {
            parallel = entdyn::death_time_scan(0.05, grid, 20.0, 1.0, 2e-4);
        });
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) {
            same = serial[i].death_time == parallel[i].death_time;
        }
        std::printf("%-34s %12.1f %12.1f %8.2fx  (results %s)\n",
                    "death_time_scan (396 p-points)", ts, tp, ts / tp,
                    same ? "identical" : "DIFFER");
    }
    return 0;
}
