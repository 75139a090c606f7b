#pragma once

#include <future>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "shiftlab/inner_function.hpp"
#include "shiftlab/shift_operator.hpp"

namespace shiftlab::cli {

using Json = nlohmann::ordered_json;

/// Parses "re", "re+imi", "re-imi", "imi" (e.g. "0.3+0.4i", "-0.25", "0.5i").
Complex parse_complex(const std::string& text);

/// Parses "z^n", "blaschke:a=<complex>[,a=...]" or the product form
/// "z^m*blaschke:a=...".
InnerFunction parse_theta(const std::string& text);

std::string format_complex(Complex z, int precision = 12);

Json complex_to_json(Complex z);
Json series_to_json(const CoeffSeries& s, int max_coeffs = -1);
Json coords_to_json(const AbCoords& v, int max_tail = -1);

/// Order-stable parallel evaluation of f(0..count-1); results land at their
/// index regardless of completion order.
template <typename F>
auto parallel_map(int count, F f) -> std::vector<decltype(f(0))> {
    std::vector<decltype(f(0))> out(static_cast<std::size_t>(std::max(count, 0)));
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    if (count <= 1 || workers == 1) {
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(i);
        return out;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers))
                out[static_cast<std::size_t>(i)] = f(i);
        }));
    }
    for (auto& fut : futures) fut.get();
    return out;
}

}  // namespace shiftlab::cli
