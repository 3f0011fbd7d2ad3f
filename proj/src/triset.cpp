#include "finchar/triset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace finchar {

TriangularSet TriangularSet::make(FieldSpecPtr spec, std::uint32_t nvars,
                                  std::vector<Poly> polys) {
    TriangularSet ts;
    ts.spec_ = std::move(spec);
    ts.nvars_ = nvars;
    std::sort(polys.begin(), polys.end(),
              [](const Poly& a, const Poly& b) { return a.cls() < b.cls(); });
    std::uint32_t prev = 0;
    for (const auto& p : polys) {
        if (p.is_zero()) throw std::invalid_argument("triangular set member is zero");
        std::uint32_t c = p.cls();
        if (c == 0) throw std::invalid_argument("triangular set member is constant");
        if (c <= prev && prev != 0)
            throw std::invalid_argument("triangular set classes must strictly increase");
        if (p.nvars() != nvars) throw std::invalid_argument("ambient variable count mismatch");
        prev = c;
    }
    ts.polys_ = std::move(polys);
    return ts;
}

std::vector<std::uint32_t> TriangularSet::classes() const {
    std::vector<std::uint32_t> out;
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(p.cls());
    return out;
}

std::vector<std::uint32_t> TriangularSet::degrees() const {
    std::vector<std::uint32_t> out;
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(p.deg());
    return out;
}

std::vector<std::uint32_t> TriangularSet::parameters() const {
    std::vector<bool> leading(nvars_ + 1, false);
    for (const auto& p : polys_) leading[p.cls()] = true;
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 1; v <= nvars_; ++v)
        if (!leading[v]) out.push_back(v);
    return out;
}

Poly TriangularSet::initials_product(MulCounter* counter) const {
    Poly prod = Poly::constant(spec_, nvars_, spec_->one());
    for (const auto& p : polys_) prod = mul(prod, p.initial(), counter);
    return prod;
}

Poly prem_set(const Poly& q, const TriangularSet& a, MulCounter* counter) {
    Poly r = q;
    const auto& polys = a.polys();
    for (std::size_t i = polys.size(); i-- > 0;) r = prem(r, polys[i], counter);
    return r;
}

PremSetRecord prem_set_with_record(const Poly& q, const TriangularSet& a) {
    const auto& polys = a.polys();
    PremSetRecord rec;
    rec.powers.assign(polys.size(), 0);
    rec.quotients.assign(polys.size(), Poly::zero(q.spec(), q.nvars()));
    Poly r = q;
    for (std::size_t i = polys.size(); i-- > 0;) {
        PremRecord one;
        r = prem(r, polys[i], nullptr, &one);
        // scale the identity accumulated so far by initial_i^power
        Poly scale = pow_repeated(polys[i].initial(), one.scale_power, nullptr);
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            rec.quotients[j] = mul(rec.quotients[j], scale, nullptr);
        rec.powers[i] = one.scale_power;
        rec.quotients[i] = one.quotient;
    }
    rec.remainder = r;
    return rec;
}

Poly resultant(const Poly& p, const Poly& r, std::uint32_t var) {
    if (p.nvars() != r.nvars()) throw std::invalid_argument("ambient variable count mismatch");
    const std::uint32_t dp = p.degree_in(var);
    const std::uint32_t dr = r.degree_in(var);
    const auto& spec = p.spec();
    if (dp == 0 && dr == 0) return Poly::constant(spec, p.nvars(), spec->one());
    if (dp == 0) return pow_repeated(p, dr, nullptr);
    if (dr == 0) return pow_repeated(r, dp, nullptr);

    // Sylvester matrix of the canonical representatives
    const std::uint32_t n = dp + dr;
    std::vector<Poly> mat(std::size_t(n) * n, Poly::zero(spec, p.nvars()));
    for (std::uint32_t row = 0; row < dr; ++row)
        for (std::uint32_t j = 0; j <= dp; ++j)
            mat[std::size_t(row) * n + row + j] = p.coeff_of(var, dp - j);
    for (std::uint32_t row = 0; row < dp; ++row)
        for (std::uint32_t j = 0; j <= dr; ++j)
            mat[std::size_t(dr + row) * n + row + j] = r.coeff_of(var, dr - j);

    // determinant by expansion over the first columns, memoized on the row
    // subset; valid over a commutative ring (no divisions)
    std::map<std::vector<std::uint32_t>, Poly> memo;
    auto det = [&](auto&& self, std::vector<std::uint32_t> rows) -> Poly {
        if (rows.empty()) return Poly::constant(spec, p.nvars(), spec->one());
        auto it = memo.find(rows);
        if (it != memo.end()) return it->second;
        const std::uint32_t col = n - static_cast<std::uint32_t>(rows.size());
        Poly acc = Poly::zero(spec, p.nvars());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Poly& entry = mat[std::size_t(rows[i]) * n + col];
            if (entry.is_zero()) continue;
            std::vector<std::uint32_t> rest;
            rest.reserve(rows.size() - 1);
            for (std::size_t j = 0; j < rows.size(); ++j)
                if (j != i) rest.push_back(rows[j]);
            Poly minor = self(self, std::move(rest));
            Poly contrib = mul(entry, minor, nullptr);
            acc = (i % 2 == 0) ? acc + contrib : acc - contrib;
        }
        memo.emplace(std::move(rows), acc);
        return acc;
    };
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    return det(det, std::move(all));
}

Poly res_set(const Poly& p, const TriangularSet& a) {
    Poly r = p;
    const auto& polys = a.polys();
    for (std::size_t i = polys.size(); i-- > 0;) r = resultant(r, polys[i], polys[i].cls());
    return r;
}

bool ts_is_monic(const TriangularSet& a) {
    for (const auto& p : a.polys())
        if (!p.initial().is_one()) return false;
    return true;
}

bool ts_is_proper(const TriangularSet& a, MulCounter* counter) {
    if (a.empty()) return true;
    const std::uint32_t q = a.spec()->q();
    if (q == 2 && ts_is_monic(a)) return true;  // monic implies proper in R_2
    for (const auto& p : a.polys()) {
        Poly lifted = p.shifted(p.cls(), q - p.deg());
        if (!prem_set(lifted, a, counter).is_zero()) return false;
    }
    return true;
}

bool ts_is_regular(const TriangularSet& a) {
    const auto& polys = a.polys();
    Poly prod = Poly::constant(a.spec(), a.nvars(), a.spec()->one());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        TriangularSet prefix = TriangularSet::make(
            a.spec(), a.nvars(), std::vector<Poly>(polys.begin(), polys.begin() + i));
        prod = mul(prod, res_set(polys[i].initial(), prefix), nullptr);
        if (prod.is_zero()) return false;
    }
    return !prod.is_zero();
}

BigInt ts_degree(const TriangularSet& a) {
    BigInt d = 1;
    for (const auto& p : a.polys()) d *= p.deg();
    return d;
}

std::uint32_t ts_dim(const TriangularSet& a) {
    return a.nvars() - static_cast<std::uint32_t>(a.size());
}

BigInt ts_count(const TriangularSet& a) {
    if (!ts_is_monic(a) || !ts_is_proper(a))
        throw std::invalid_argument("solution count requires a monic proper triangular set");
    BigInt q = a.spec()->q();
    return ts_degree(a) * boost::multiprecision::pow(q, ts_dim(a));
}

std::vector<Point> ts_enumerate(const TriangularSet& a, std::uint64_t limit) {
    BigInt total = ts_count(a);
    if (total > limit) throw std::invalid_argument("enumeration limit exceeded");

    const auto& spec = a.spec();
    const std::uint32_t q = spec->q();
    const std::uint32_t n = a.nvars();
    const auto params = a.parameters();
    std::vector<Point> out;

    std::vector<std::optional<FieldElement>> assignment(n);
    // cascade over the members, trying every root of each univariate
    // specialization
    auto cascade = [&](auto&& self, std::size_t idx) -> void {
        if (idx == a.size()) {
            Point pt(n);
            for (std::uint32_t v = 0; v < n; ++v) pt[v] = *assignment[v];
            out.push_back(std::move(pt));
            return;
        }
        const Poly& poly = a.polys()[idx];
        const std::uint32_t c = poly.cls();
        const std::uint32_t d = poly.deg();
        Poly uni = poly.eval_partial(assignment);
        std::uint32_t roots = 0;
        for (std::uint32_t code = 0; code < q; ++code) {
            assignment[c - 1] = FieldElement{static_cast<std::uint16_t>(code)};
            if (uni.eval_partial(assignment).is_zero()) {
                ++roots;
                self(self, idx + 1);
            }
        }
        assignment[c - 1].reset();
        if (roots != d)
            throw std::logic_error("specialization of a proper set must have deg(A_i) distinct roots");
    };

    // lexicographic parameter sweep, last parameter fastest
    std::vector<std::uint32_t> codes(params.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < params.size(); ++i)
            assignment[params[i] - 1] = FieldElement{static_cast<std::uint16_t>(codes[i])};
        cascade(cascade, 0);
        std::size_t i = params.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (codes[i] + 1 < q) {
                ++codes[i];
                std::fill(codes.begin() + i + 1, codes.end(), 0);
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return out;
}

std::optional<Point> ts_regular_witness(const TriangularSet& a, WitnessLimits limits) {
    if (!ts_is_regular(a) || !ts_is_proper(a))
        throw std::invalid_argument("witness search requires a regular proper triangular set");
    const auto& polys = a.polys();
    const auto& spec = a.spec();
    Poly prod = Poly::constant(spec, a.nvars(), spec->one());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        TriangularSet prefix = TriangularSet::make(
            spec, a.nvars(), std::vector<Poly>(polys.begin(), polys.begin() + i));
        prod = mul(prod, res_set(polys[i].initial(), prefix), nullptr);
    }

    const auto params = a.parameters();
    const std::uint32_t q = spec->q();
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (space > limits.max_points / q + 1)
            throw std::invalid_argument("witness search space cap exceeded");
        space *= q;
    }
    if (space > limits.max_points) throw std::invalid_argument("witness search space cap exceeded");

    std::vector<std::optional<FieldElement>> assignment(a.nvars());
    std::vector<std::uint32_t> codes(params.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < params.size(); ++i)
            assignment[params[i] - 1] = FieldElement{static_cast<std::uint16_t>(codes[i])};
        if (!prod.eval_partial(assignment).is_zero()) {
            Point pt;
            pt.reserve(params.size());
            for (std::size_t i = 0; i < params.size(); ++i)
                pt.push_back(FieldElement{static_cast<std::uint16_t>(codes[i])});
            return pt;
        }
        std::size_t i = params.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (codes[i] + 1 < q) {
                ++codes[i];
                std::fill(codes.begin() + i + 1, codes.end(), 0);
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return std::nullopt;
}

std::vector<Poly> ts_saturation_generators(const TriangularSet& a) {
    std::vector<Poly> out = a.polys();
    Poly ip = a.initials_product();
    Poly extra = pow_repeated(ip, a.spec()->q() - 1, nullptr) -
                 Poly::constant(a.spec(), a.nvars(), a.spec()->one());
    if (!extra.is_zero()) out.push_back(std::move(extra));
    return out;
}

TriSetOrder ts_compare(const TriangularSet& a, const TriangularSet& b) {
    const std::size_t r = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < r; ++i) {
        RankOrder ro = compare_rank(a.polys()[i], b.polys()[i]);
        if (ro == RankOrder::lower) return TriSetOrder::lower;
        if (ro == RankOrder::higher) return TriSetOrder::higher;
    }
    if (a.size() == b.size()) return TriSetOrder::same;
    // the longer set with an equal-ranked prefix is lower
    return a.size() > b.size() ? TriSetOrder::lower : TriSetOrder::higher;
}

}  // namespace finchar
