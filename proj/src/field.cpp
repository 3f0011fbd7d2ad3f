#include "finchar/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace finchar {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense univariate polynomials over F_p, lowest degree first.
using FpPoly = std::vector<std::uint16_t>;

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::size_t da = a.size() - 1;
        const std::uint32_t lead = a.back();  // m is monic
        for (std::size_t i = 0; i <= dm; ++i) {
            std::uint32_t sub = (lead * m[i]) % p;
            a[da - dm + i] = static_cast<std::uint16_t>((a[da - dm + i] + p - sub) % p);
        }
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint16_t>((prod[i + j] + a[i] * b[j]) % p);
    }
    return fp_mod(std::move(prod), m, p);
}

// Divisibility of f by g over F_p (both nonzero, g monic).
bool fp_divides(const FpPoly& g, FpPoly f, std::uint32_t p) {
    FpPoly r = fp_mod(std::move(f), g, p);
    return r.empty();
}

bool fp_irreducible(const FpPoly& m, std::uint32_t p) {
    const std::size_t k = m.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    // exhaustive search over monic divisors of degree 1..k/2
    for (std::size_t d = 1; 2 * d <= k; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            FpPoly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint16_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (fp_divides(g, m, p)) return false;
        }
    }
    return true;
}

FpPoly lowest_lex_irreducible(std::uint32_t p, std::uint32_t k) {
    // candidates ordered by the coefficient tuple (c_{k-1},...,c_0) read as a
    // base-p number
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        FpPoly m(k + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < k; ++i) {
            m[i] = static_cast<std::uint16_t>(c % p);
            c /= p;
        }
        m[k] = 1;
        if (fp_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
}

std::uint16_t encode(const FpPoly& f, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
    return static_cast<std::uint16_t>(code);
}

FpPoly decode(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
    FpPoly f(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        f[i] = static_cast<std::uint16_t>(code % p);
        code /= p;
    }
    fp_trim(f);
    return f;
}

}  // namespace

std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint32_t p, std::uint32_t k,
                                                 std::vector<std::uint16_t> modulus,
                                                 std::uint32_t max_q) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > max_q) throw std::invalid_argument("field size exceeds configured cap");
    }
    if (q < 2) throw std::invalid_argument("field must have at least two elements");

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->k_ = k;
    spec->q_ = static_cast<std::uint32_t>(q);

    if (k > 1) {
        FpPoly m;
        if (modulus.empty()) {
            m = lowest_lex_irreducible(p, k);
        } else {
            if (modulus.size() != k + 1)
                throw std::invalid_argument("modulus must have k+1 coefficients");
            m.assign(modulus.rbegin(), modulus.rend());
            for (auto& c : m) c = static_cast<std::uint16_t>(c % p);
            fp_trim(m);
            if (m.size() != k + 1) throw std::invalid_argument("modulus must have degree k");
            if (m.back() != 1) {
                // normalize to a monic representative
                std::uint32_t lead = m.back(), inv = 1;
                for (std::uint32_t x = 1; x < p; ++x)
                    if ((lead * x) % p == 1) { inv = x; break; }
                for (auto& c : m) c = static_cast<std::uint16_t>((c * inv) % p);
            }
            if (!fp_irreducible(m, p))
                throw std::invalid_argument("modulus is reducible over F_p");
        }
        spec->modulus_low_ = m;
        spec->modulus_high_first_.assign(m.rbegin(), m.rend());
    }

    spec->build_tables();
    return spec;
}

std::uint16_t FieldSpec::raw_mul(std::uint16_t a, std::uint16_t b) const {
    if (k_ == 1) return static_cast<std::uint16_t>((std::uint32_t(a) * b) % p_);
    FpPoly fa = decode(a, p_, k_), fb = decode(b, p_, k_);
    return encode(fp_mulmod(fa, fb, modulus_low_, p_), p_);
}

void FieldSpec::build_tables() {
    if (k_ > 1 && std::uint64_t(q_) * q_ <= (1u << 18)) {
        mul_table_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b <= a; ++b) {
                std::uint16_t v = raw_mul(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b));
                mul_table_[a * q_ + b] = v;
                mul_table_[b * q_ + a] = v;
            }
        use_mul_table_ = true;
    } else if (k_ > 1) {
        // multiplicative group is cyclic of order q-1; find a generator
        for (std::uint32_t g = 2; g < q_; ++g) {
            std::vector<std::uint16_t> exps;
            exps.reserve(q_ - 1);
            std::uint16_t cur = 1;
            bool ok = true;
            for (std::uint32_t i = 0; i + 1 < q_; ++i) {
                exps.push_back(cur);
                cur = raw_mul(cur, static_cast<std::uint16_t>(g));
                if (cur == 1 && i + 2 < q_) { ok = false; break; }
            }
            if (ok && cur == 1) {
                exp_table_ = std::move(exps);
                break;
            }
        }
        if (exp_table_.empty()) throw std::logic_error("no generator found");
        log_table_.assign(q_, -1);
        for (std::uint32_t i = 0; i + 1 < q_; ++i) log_table_[exp_table_[i]] = static_cast<std::int32_t>(i);
    }
    if (q_ <= 4096) {
        inv_table_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a)
            inv_table_[a] = pow({static_cast<std::uint16_t>(a)}, q_ - 2).code;
    }
}

FieldElement FieldSpec::element(std::uint32_t code) const {
    if (code >= q_) throw std::invalid_argument("element code out of range");
    return {static_cast<std::uint16_t>(code)};
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
    if (k_ == 1) return {static_cast<std::uint16_t>((std::uint32_t(a.code) + b.code) % p_)};
    if (p_ == 2) return {static_cast<std::uint16_t>(a.code ^ b.code)};
    std::uint32_t out = 0, mult = 1, x = a.code, y = b.code;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += ((x % p_ + y % p_) % p_) * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return {static_cast<std::uint16_t>(out)};
}

FieldElement FieldSpec::neg(FieldElement a) const {
    if (k_ == 1) return {static_cast<std::uint16_t>((p_ - a.code) % p_)};
    if (p_ == 2) return a;
    std::uint32_t out = 0, mult = 1, x = a.code;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += ((p_ - x % p_) % p_) * mult;
        x /= p_;
        mult *= p_;
    }
    return {static_cast<std::uint16_t>(out)};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
    if (a.code == 0 || b.code == 0) return {0};
    if (k_ == 1) return {static_cast<std::uint16_t>((std::uint32_t(a.code) * b.code) % p_)};
    if (use_mul_table_) return {mul_table_[std::size_t(a.code) * q_ + b.code]};
    std::uint64_t e = std::uint64_t(log_table_[a.code]) + log_table_[b.code];
    return {exp_table_[e % (q_ - 1)]};
}

FieldElement FieldSpec::inv(FieldElement a) const {
    if (a.code == 0) throw std::domain_error("inversion of zero");
    if (!inv_table_.empty()) return {inv_table_[a.code]};
    return pow(a, q_ - 2);
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t e) const {
    if (e == 0) return one();  // includes 0^0 = 1
    if (a.code == 0) return zero();
    if (a.code == 1) return one();
    FieldElement result = one(), base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::string FieldSpec::label() const {
    if (k_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(k_);
}

}  // namespace finchar
