#include "tfw/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace tfw {
namespace {

// Plans are cached per grid dimensions. Plan creation is not thread-safe in
// FFTW, execution on distinct buffers is; the cache hands out new-array
// execute calls only.
class PlanCache {
  public:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    Plans get(int n1, int n2, int n3) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(n1, n2, n3);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<fftw_complex> buf(static_cast<size_t>(n1) * n2 * n3);
        Plans p;
        p.fwd = fftw_plan_dft_3d(n1, n2, n3, buf.data(), buf.data(), FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_3d(n1, n2, n3, buf.data(), buf.data(), FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!p.fwd || !p.bwd) throw error("fftw plan creation failed");
        plans_[key] = p;
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, Plans> plans_;
};

// Grid points start at -side/2, so slot s carries an extra phase (-1)^s per
// axis relative to the plain DFT of the sample sequence.
inline double centered_phase(int s1, int s2, int s3) {
    return ((s1 + s2 + s3) & 1) ? -1.0 : 1.0;
}

}  // namespace

SpectralField forward_transform(const RealField& field) {
    const Grid3& g = field.grid;
    const auto n = static_cast<size_t>(g.size());
    auto plans = PlanCache::instance().get(g.n1(), g.n2(), g.n3());

    std::vector<std::complex<double>> buf(n);
    for (size_t i = 0; i < n; ++i) buf[i] = field.values[i];
    fftw_execute_dft(plans.fwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));

    SpectralField out(g);
    const double scale = 1.0 / static_cast<double>(n);
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                const auto idx = static_cast<size_t>(g.index(s1, s2, s3));
                out.coeffs[idx] = buf[idx] * (scale * centered_phase(s1, s2, s3));
            }

    // Self-conjugate slots (every coordinate 0 or n/2) must be exactly real.
    for (int s1 = 0; s1 < g.n1(); s1 += std::max(1, g.n1() / 2))
        for (int s2 = 0; s2 < g.n2(); s2 += std::max(1, g.n2() / 2))
            for (int s3 = 0; s3 < g.n3(); s3 += std::max(1, g.n3() / 2)) {
                auto& c = out.coeffs[static_cast<size_t>(g.index(s1, s2, s3))];
                c = {c.real(), 0.0};
            }
    return out;
}

RealField inverse_transform(const SpectralField& coeffs) {
    const Grid3& g = coeffs.grid;
    const auto n = static_cast<size_t>(g.size());

    double max_mag = 0.0;
    for (const auto& c : coeffs.coeffs) max_mag = std::max(max_mag, std::abs(c));
    double worst = 0.0;
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                const int t1 = (g.n1() - s1) % g.n1();
                const int t2 = (g.n2() - s2) % g.n2();
                const int t3 = (g.n3() - s3) % g.n3();
                const auto a = coeffs.coeffs[static_cast<size_t>(g.index(s1, s2, s3))];
                const auto b = coeffs.coeffs[static_cast<size_t>(g.index(t1, t2, t3))];
                worst = std::max(worst, std::abs(a - std::conj(b)));
            }
    if (max_mag > 0.0 && worst > 1e-10 * max_mag) throw non_hermitian_input(worst / max_mag);

    auto plans = PlanCache::instance().get(g.n1(), g.n2(), g.n3());
    std::vector<std::complex<double>> buf(n);
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                const auto idx = static_cast<size_t>(g.index(s1, s2, s3));
                buf[idx] = coeffs.coeffs[idx] * centered_phase(s1, s2, s3);
            }
    fftw_execute_dft(plans.bwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));

    RealField out(g);
    for (size_t i = 0; i < n; ++i) out.values[i] = buf[i].real();
    return out;
}

}  // namespace tfw
