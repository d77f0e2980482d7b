// Compares the OpenMP ensemble kernel against the serial reference on the
// same spec and checks that the reports agree exactly.
//
//   ffdyn_bench [p] [j] [d] [kind] [workers]     defaults: 3 2 2 rational 4

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "ffdyn/reference.hpp"

using namespace ffdyn;

namespace {

constexpr std::uint64_t kNoBudget = ~0ull >> 1;

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint32_t p = argc > 1 ? std::uint32_t(std::atoi(argv[1])) : 3;
    std::uint32_t j = argc > 2 ? std::uint32_t(std::atoi(argv[2])) : 2;
    int d = argc > 3 ? std::atoi(argv[3]) : 2;
    MapKind kind = (argc > 4 && std::string(argv[4]) == "polynomial") ? MapKind::polynomial
                                                                      : MapKind::rational;
    int workers = argc > 5 ? std::atoi(argv[5]) : 4;

    const FieldCtx k = FieldCtx::make(p, j);
    const EnsembleSpec spec{p, j, d, kind, std::nullopt};
    std::cout << "ensemble: p=" << p << " j=" << j << " d=" << d << " kind=" << to_string(kind)
              << " (" << count_maps(Int(k.q()), d, kind).get_str() << " maps)\n";

    EnsembleReport serial, parallel;
    const double t_serial = timed([&] { serial = reference::average_periodic(k, spec); });
    const double t_par1 = timed([&] { parallel = average_periodic(k, spec, 1, kNoBudget); });
    if (!(serial.mean == parallel.mean && serial.histogram == parallel.histogram)) {
        std::cerr << "FAIL: kernel(1 worker) disagrees with serial reference\n";
        return 1;
    }
    const double t_parN = timed([&] { parallel = average_periodic(k, spec, workers, kNoBudget); });
    if (!(serial.mean == parallel.mean && serial.histogram == parallel.histogram)) {
        std::cerr << "FAIL: kernel(" << workers << " workers) disagrees with serial reference\n";
        return 1;
    }

    std::cout << "mean = " << parallel.mean << "\n";
    std::cout << "serial reference : " << t_serial << " s\n";
    std::cout << "kernel, 1 worker : " << t_par1 << " s  (x" << t_serial / t_par1 << ")\n";
    std::cout << "kernel, " << workers << " workers: " << t_parN << " s  (x" << t_serial / t_parN
              << ")\n";
    std::cout << "reports agree exactly\n";
    return 0;
}
