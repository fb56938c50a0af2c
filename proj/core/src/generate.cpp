#include "normidx/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace normidx {

namespace {

// All random values are derived from the raw mt19937_64 stream with exact
// arithmetic (the standard distributions are implementation-defined, which
// would break seed reproducibility across standard libraries).

double uniform_unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;  // [0, 1), 53-bit
}

double uniform_range(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(g);
}

// Box-Muller standard normals, two per uniform pair.
class GaussianStream {
public:
    explicit GaussianStream(std::mt19937_64& g) : g_(g) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform_unit(g_);  // (0, 1], log-safe
        const double u2 = uniform_unit(g_);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586;
        spare_ = mag * std::sin(two_pi * u2);
        has_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64& g_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

template <typename Gen>
void shuffle_indices(std::vector<std::size_t>& indices, Gen& g) {
    for (std::size_t i = indices.size(); i > 1; --i)
        std::swap(indices[i - 1], indices[g() % i]);
}

Dataset make_blobs(const std::vector<std::vector<double>>& centers,
                   std::size_t n, double spread, std::mt19937_64& g) {
    if (centers.empty())
        throw std::invalid_argument("blobs need at least one center");
    const std::size_t d = centers.front().size();
    if (d == 0) throw std::invalid_argument("blob centers need >= 1 coordinate");
    for (const auto& c : centers)
        if (c.size() != d)
            throw std::invalid_argument("blob centers have mixed dimensions");
    if (n == 0) throw std::invalid_argument("blobs need n >= 1");
    if (!(spread >= 0.0))
        throw std::invalid_argument("blob spread must be >= 0");

    GaussianStream gauss(g);
    std::vector<double> values;
    values.reserve(n * d);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % centers.size();
        for (std::size_t j = 0; j < d; ++j)
            values.push_back(centers[c][j] + spread * gauss());
        labels.push_back(std::to_string(c));
    }
    return Dataset(std::move(values), n, d, std::move(labels));
}

}  // namespace

Dataset generate_uniform(std::size_t n, std::size_t d, std::uint64_t seed,
                         double lo, double hi) {
    if (n == 0 || d == 0)
        throw std::invalid_argument("generate_uniform needs n >= 1 and d >= 1");
    if (!(lo < hi))
        throw std::invalid_argument("generate_uniform needs lo < hi");
    std::mt19937_64 g(seed);
    std::vector<double> values;
    values.reserve(n * d);
    for (std::size_t i = 0; i < n * d; ++i)
        values.push_back(uniform_range(g, lo, hi));
    return Dataset(std::move(values), n, d);
}

Dataset generate_blobs(const std::vector<std::vector<double>>& centers,
                       std::size_t n, double spread, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    return make_blobs(centers, n, spread, g);
}

Dataset generate_blobs(std::size_t n, std::size_t d, std::size_t n_centers,
                       double spread, std::uint64_t seed) {
    if (n_centers == 0) throw std::invalid_argument("blobs need >= 1 center");
    if (d == 0) throw std::invalid_argument("blobs need d >= 1");
    std::mt19937_64 g(seed);
    std::vector<std::vector<double>> centers(n_centers, std::vector<double>(d));
    for (auto& center : centers)
        for (auto& coordinate : center)
            coordinate = uniform_range(g, -50.0, 50.0);
    return make_blobs(centers, n, spread, g);
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed) {
    if (!data.has_labels())
        throw std::invalid_argument("stratified_split needs a labeled dataset");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must be in (0, 1)");

    // Classes in order of first appearance, so the draw order is fixed.
    std::vector<std::string> class_order;
    std::vector<std::vector<std::size_t>> class_rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& label = data.label(i);
        std::size_t c = 0;
        while (c < class_order.size() && class_order[c] != label) ++c;
        if (c == class_order.size()) {
            class_order.push_back(label);
            class_rows.emplace_back();
        }
        class_rows[c].push_back(i);
    }

    std::mt19937_64 g(seed);
    std::vector<bool> in_test(data.size(), false);
    for (auto& rows : class_rows) {
        const auto want = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(rows.size())));
        shuffle_indices(rows, g);
        for (std::size_t i = 0; i < want && i < rows.size(); ++i)
            in_test[rows[i]] = true;
    }

    std::vector<double> train_values, test_values;
    std::vector<std::string> train_labels, test_labels;
    std::size_t train_n = 0, test_n = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        auto& values = in_test[i] ? test_values : train_values;
        values.insert(values.end(), row.begin(), row.end());
        (in_test[i] ? test_labels : train_labels).push_back(data.label(i));
        ++(in_test[i] ? test_n : train_n);
    }
    if (train_n == 0 || test_n == 0)
        throw std::invalid_argument("stratified_split left an empty part; "
                                    "adjust test_fraction");
    return {Dataset(std::move(train_values), train_n, data.dim(),
                    std::move(train_labels)),
            Dataset(std::move(test_values), test_n, data.dim(),
                    std::move(test_labels))};
}

}  // namespace normidx
