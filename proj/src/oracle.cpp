#include "finchar/oracle.hpp"

#include <stdexcept>

namespace finchar {

namespace {

template <typename Visit>
void sweep_points(std::uint32_t nvars, const FieldSpecPtr& spec, OracleLimits limits,
                  Visit&& visit) {
    const std::uint32_t q = spec->q();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < nvars; ++i) {
        if (total > limits.max_points / q + 1) throw std::invalid_argument("oracle point cap exceeded");
        total *= q;
    }
    if (total > limits.max_points) throw std::invalid_argument("oracle point cap exceeded");

    Point point(nvars, FieldElement{0});
    for (std::uint64_t idx = 0;; ++idx) {
        visit(point);
        // lexicographic order: x1 most significant, so the last coordinate
        // cycles fastest
        std::size_t i = nvars;
        while (i > 0) {
            --i;
            if (point[i].code + 1u < q) {
                point[i].code++;
                break;
            }
            point[i].code = 0;
            if (i == 0) return;
        }
        if (nvars == 0) return;
    }
}

}  // namespace

std::vector<Point> brute_zero_set(const std::vector<Poly>& ps, std::uint32_t nvars,
                                  const FieldSpecPtr& spec, OracleLimits limits) {
    std::vector<Point> zeros;
    sweep_points(nvars, spec, limits, [&](const Point& pt) {
        for (const auto& p : ps)
            if (p.eval(pt).code != 0) return;
        zeros.push_back(pt);
    });
    return zeros;
}

std::uint64_t brute_count(const std::vector<Poly>& ps, std::uint32_t nvars,
                          const FieldSpecPtr& spec, OracleLimits limits) {
    std::uint64_t count = 0;
    sweep_points(nvars, spec, limits, [&](const Point& pt) {
        for (const auto& p : ps)
            if (p.eval(pt).code != 0) return;
        ++count;
    });
    return count;
}

}  // namespace finchar
