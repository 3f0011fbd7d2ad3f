#ifndef FINCHAR_ORACLE_HPP
#define FINCHAR_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "finchar/poly.hpp"

namespace finchar {

using Point = std::vector<FieldElement>;

struct OracleLimits {
    std::uint64_t max_points = std::uint64_t(1) << 24;
};

// Exhaustive enumeration of the common zeros of a system over F_q^n, in
// lexicographic point order (x1 most significant).  Throws
// std::invalid_argument when q^n exceeds the configured cap.
std::vector<Point> brute_zero_set(const std::vector<Poly>& ps, std::uint32_t nvars,
                                  const FieldSpecPtr& spec, OracleLimits limits = {});

std::uint64_t brute_count(const std::vector<Poly>& ps, std::uint32_t nvars,
                          const FieldSpecPtr& spec, OracleLimits limits = {});

}  // namespace finchar

#endif
