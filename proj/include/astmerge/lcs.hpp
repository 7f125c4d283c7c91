#ifndef ASTMERGE_LCS_HPP
#define ASTMERGE_LCS_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace astmerge {

// Myers O(ND) shortest edit script. diff_size returns the script length
// (insertions + deletions); lcs_pairs returns the aligned index pairs of
// the longest common subsequence.

template <typename Seq>
std::size_t diff_size(const Seq& a, const Seq& b) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(b.size());
    const std::ptrdiff_t max = n + m;
    if (max == 0) return 0;
    std::vector<std::ptrdiff_t> v(2 * max + 1, 0);
    auto at = [&](std::ptrdiff_t k) -> std::ptrdiff_t& { return v[k + max]; };
    for (std::ptrdiff_t d = 0; d <= max; ++d) {
        for (std::ptrdiff_t k = -d; k <= d; k += 2) {
            std::ptrdiff_t x;
            if (k == -d || (k != d && at(k - 1) < at(k + 1))) {
                x = at(k + 1);
            } else {
                x = at(k - 1) + 1;
            }
            std::ptrdiff_t y = x - k;
            while (x < n && y < m && a[x] == b[y]) {
                ++x;
                ++y;
            }
            at(k) = x;
            if (x >= n && y >= m) return static_cast<std::size_t>(d);
        }
    }
    return static_cast<std::size_t>(max);
}

template <typename Seq>
std::vector<std::pair<std::size_t, std::size_t>> lcs_pairs(const Seq& a, const Seq& b) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(b.size());
    const std::ptrdiff_t max = n + m;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (n == 0 || m == 0) return pairs;

    std::vector<std::vector<std::ptrdiff_t>> trace;
    std::vector<std::ptrdiff_t> v(2 * max + 1, 0);
    auto at = [&](std::vector<std::ptrdiff_t>& vec, std::ptrdiff_t k) -> std::ptrdiff_t& {
        return vec[k + max];
    };

    std::ptrdiff_t found_d = -1;
    for (std::ptrdiff_t d = 0; d <= max && found_d < 0; ++d) {
        for (std::ptrdiff_t k = -d; k <= d; k += 2) {
            std::ptrdiff_t x;
            if (k == -d || (k != d && at(v, k - 1) < at(v, k + 1))) {
                x = at(v, k + 1);
            } else {
                x = at(v, k - 1) + 1;
            }
            std::ptrdiff_t y = x - k;
            while (x < n && y < m && a[x] == b[y]) {
                ++x;
                ++y;
            }
            at(v, k) = x;
            if (x >= n && y >= m) {
                found_d = d;
                break;
            }
        }
        trace.push_back(v);
    }

    // Walk the trace backwards, recording the diagonal (match) runs.
    std::ptrdiff_t x = n;
    std::ptrdiff_t y = m;
    for (std::ptrdiff_t d = found_d; d >= 0; --d) {
        std::vector<std::ptrdiff_t>& vd = trace[static_cast<std::size_t>(d)];
        const std::ptrdiff_t k = x - y;
        std::ptrdiff_t prev_k;
        if (d == 0) {
            prev_k = 0;
        } else if (k == -d || (k != d && at(vd, k - 1) < at(vd, k + 1))) {
            prev_k = k + 1;
        } else {
            prev_k = k - 1;
        }
        std::ptrdiff_t prev_x = d == 0 ? 0 : at(vd, prev_k);
        std::ptrdiff_t prev_y = prev_x - prev_k;
        std::ptrdiff_t snake_x = d == 0 ? 0 : (prev_k == k + 1 ? prev_x : prev_x + 1);
        std::ptrdiff_t snake_y = snake_x - k;
        while (x > snake_x && y > snake_y) {
            pairs.emplace_back(static_cast<std::size_t>(x - 1), static_cast<std::size_t>(y - 1));
            --x;
            --y;
        }
        if (d > 0) {
            x = prev_x;
            y = prev_y;
        }
    }
    std::reverse(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace astmerge

#endif
