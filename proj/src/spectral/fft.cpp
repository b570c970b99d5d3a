#include "cns/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace cns::spectral {

namespace {

// Plans are created once per shape under a lock; fftw_execute_dft on an
// existing plan is thread safe.
fftw_plan plan_for(int dim, int n, int sign) {
    using Key = std::tuple<int, int, int>;
    static std::mutex mutex;
    static std::map<Key, fftw_plan> plans;

    Key key{dim, n, sign};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    std::size_t size = 1;
    int dims[3] = {n, n, n};
    for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(n);
    fftw_complex* scratch = fftw_alloc_complex(size);
    fftw_plan plan = fftw_plan_dft(dim, dims, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fft: FFTW planning failed");
    plans.emplace(key, plan);
    return plan;
}

}  // namespace

void fft_inplace(std::vector<Complex>& data, int dim, int n, int sign) {
    fftw_plan plan = plan_for(dim, n, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace cns::spectral
