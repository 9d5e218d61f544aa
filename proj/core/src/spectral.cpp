#include "nslab/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "nslab/errors.hpp"

namespace nslab::spectral {

namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
class PlanCache {
public:
    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dimension, int points, int sign)
    {
        const std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(dimension, points, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        int dims[3] = {points, points, points};
        std::size_t total = 1;
        for (int axis = 0; axis < dimension; ++axis) {
            total *= static_cast<std::size_t>(points);
        }
        auto* scratch = fftw_alloc_complex(total);
        fftw_plan plan = fftw_plan_dft(dimension, dims, scratch, scratch, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const Grid& grid, ComplexArray& data, int sign)
{
    if (data.size() != grid.size()) {
        throw InvalidField("spectral array size does not match grid");
    }
    auto plan = PlanCache::instance().get(grid.dimension(), grid.points(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

} // namespace

int signed_wavenumber(int m, int n) noexcept
{
    return m < n / 2 ? m : m - n;
}

std::array<int, 3> integer_wavevector(const Grid& grid, std::size_t flat) noexcept
{
    auto index = grid.multi_index(flat);
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        index[axis] = signed_wavenumber(index[axis], grid.points());
    }
    return index;
}

bool has_nyquist(const Grid& grid, std::size_t flat) noexcept
{
    const auto index = grid.multi_index(flat);
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        if (index[axis] == grid.points() / 2) {
            return true;
        }
    }
    return false;
}

void forward_inplace(const Grid& grid, ComplexArray& data)
{
    execute(grid, data, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& value : data) {
        value *= scale;
    }
}

void backward_inplace(const Grid& grid, ComplexArray& data)
{
    execute(grid, data, FFTW_BACKWARD);
}

ComplexArray forward(const Grid& grid, std::span<const double> values)
{
    if (values.size() != grid.size()) {
        throw InvalidField("sample count does not match grid");
    }
    ComplexArray data(values.begin(), values.end());
    forward_inplace(grid, data);
    return data;
}

std::vector<double> backward(const Grid& grid, ComplexArray coefficients)
{
    backward_inplace(grid, coefficients);
    std::vector<double> values(coefficients.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = coefficients[i].real();
    }
    return values;
}

ComplexArray derivative(const Grid& grid, const ComplexArray& coefficients, int axis)
{
    if (axis < 0 || axis >= grid.dimension()) {
        throw InvalidField("derivative axis out of range");
    }
    if (coefficients.size() != grid.size()) {
        throw InvalidField("spectral array size does not match grid");
    }
    ComplexArray out(coefficients.size());
    const double scale = grid.wavenumber_scale();
    const int n = grid.points();
    for (std::size_t flat = 0; flat < coefficients.size(); ++flat) {
        const auto index = grid.multi_index(flat);
        if (index[axis] == n / 2) {
            out[flat] = 0.0;
            continue;
        }
        const double kappa = scale * signed_wavenumber(index[axis], n);
        out[flat] = Complex(0.0, kappa) * coefficients[flat];
    }
    return out;
}

std::vector<double> resample(const Grid& from, std::span<const double> values, const Grid& to)
{
    if (from.dimension() != to.dimension() || from.period() != to.period()) {
        throw GridMismatch("resample requires equal dimension and period");
    }
    if (from == to) {
        return {values.begin(), values.end()};
    }
    const auto source = forward(from, values);
    ComplexArray target(to.size(), Complex(0.0, 0.0));
    const int n = from.points();
    const int m = to.points();
    const int dim = from.dimension();

    for (std::size_t flat = 0; flat < source.size(); ++flat) {
        if (source[flat] == Complex(0.0, 0.0)) {
            continue;
        }
        const auto index = from.multi_index(flat);
        // Per-axis destination wavenumbers with weights.
        std::array<std::array<int, 2>, 3> dest{};
        std::array<int, 3> count{1, 1, 1};
        double weight = 1.0;
        bool fits = true;
        for (int axis = 0; axis < dim; ++axis) {
            const int k = signed_wavenumber(index[axis], n);
            if (m > n) {
                if (index[axis] == n / 2) {
                    dest[axis] = {-n / 2, n / 2};
                    count[axis] = 2;
                    weight *= 0.5;
                } else {
                    dest[axis] = {k, k};
                }
            } else if (k > -(m / 2) && k < m / 2) {
                dest[axis] = {k, k};
            } else {
                fits = false;
            }
        }
        if (!fits) {
            continue;
        }
        for (int a = 0; a < count[0]; ++a) {
            for (int b = 0; b < count[1]; ++b) {
                for (int c = 0; c < count[2]; ++c) {
                    std::array<int, 3> k{dest[0][a], dest[1][b], dim == 3 ? dest[2][c] : 0};
                    target[to.flat_index(k)] += weight * source[flat];
                }
            }
        }
    }
    return backward(to, std::move(target));
}

} // namespace nslab::spectral
